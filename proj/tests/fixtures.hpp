#pragma once

#include <vector>

#include "hexswarm/planner.hpp"

namespace fixtures {

hexswarm::Frame frame();

hexswarm::DiscreteShape from_points(const std::vector<hexswarm::LatticePoint>& S,
                                    const std::vector<hexswarm::LatticePoint>& D = {});

/// The minimal proper shape: the three root-ribbon points.
hexswarm::DiscreteShape root3();

/// 19-point hexagon (center plus two rings) sitting on the root row.
hexswarm::DiscreteShape hex19();

/// Same hexagon with the center as a hole.
hexswarm::DiscreteShape hex19_hole();

/// Regular hexagon polygon of the given circumradius (d-units), centered at 0.
hexswarm::ShapeSpec hexagon_spec(double circumradius);

/// Circle approximated by a polygon (d-units).
hexswarm::ShapeSpec disc_spec(double radius, int segments = 64);

std::vector<hexswarm::Vec2> circle_poly(double radius, int segments, double cx = 0.0,
                                        double cy = 0.0);

}  // namespace fixtures
