#pragma once

#include <string>
#include <vector>

#include "hexswarm/shapes.hpp"

namespace hexswarm {

struct RenderRobot {
    int id = -1;
    double x = 0.0;
    double y = 0.0;
    int state = 0;  // 0 stop, 1 edge, 2 ribbon
    int gradient = -1;
};

/// One SVG document: robots as radius-r circles, target shape cells outlined,
/// hole cells hatched, the lines l1/l2 dashed. y points up.
std::string render_svg(const std::vector<RenderRobot>& robots, const DiscreteShape& ds,
                       const Frame& f);

}  // namespace hexswarm
