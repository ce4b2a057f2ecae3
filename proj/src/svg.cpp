#include "hexswarm/svg.hpp"

#include <algorithm>
#include <sstream>

namespace hexswarm {

std::string render_svg(const std::vector<RenderRobot>& robots, const DiscreteShape& ds,
                       const Frame& f) {
    const double d = f.d();
    double xmin = -3 * d, xmax = 3 * d, ymin = -3 * d, ymax = 3 * d;
    auto grow = [&](double x, double y) {
        xmin = std::min(xmin, x - 2 * d);
        xmax = std::max(xmax, x + 2 * d);
        ymin = std::min(ymin, y - 2 * d);
        ymax = std::max(ymax, y + 2 * d);
    };
    for (const auto& r : robots) grow(r.x, r.y);
    for (const auto& p : ds.S) {
        Vec2 c = f.to_cartesian(p);
        grow(c.x, c.y);
    }
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << xmin << " " << -ymax << " "
        << (xmax - xmin) << " " << (ymax - ymin) << "\">\n";
    out << "<rect x=\"" << xmin << "\" y=\"" << -ymax << "\" width=\"" << (xmax - xmin)
        << "\" height=\"" << (ymax - ymin) << "\" fill=\"white\"/>\n";
    // Half-plane boundary lines l1 and l2.
    double line = d * std::sqrt(3.0) / 2.0;
    for (double y : {line, -line})
        out << "<line x1=\"" << xmin << "\" y1=\"" << -y << "\" x2=\"" << xmax << "\" y2=\"" << -y
            << "\" stroke=\"#bbbbbb\" stroke-dasharray=\"4,4\" stroke-width=\"1\"/>\n";
    // Target cells: S\D outlined, holes crossed.
    for (const auto& p : ds.S) {
        Vec2 c = f.to_cartesian(p);
        bool hole = ds.D.count(p) > 0;
        out << "<circle cx=\"" << c.x << "\" cy=\"" << -c.y << "\" r=\"" << 0.45 * d
            << "\" fill=\"none\" stroke=\"" << (hole ? "#dd8888" : "#88aadd")
            << "\" stroke-width=\"1\"/>\n";
        if (hole)
            out << "<line x1=\"" << (c.x - 0.3 * d) << "\" y1=\"" << -(c.y - 0.3 * d) << "\" x2=\""
                << (c.x + 0.3 * d) << "\" y2=\"" << -(c.y + 0.3 * d)
                << "\" stroke=\"#dd8888\" stroke-width=\"1\"/>\n";
    }
    for (const auto& r : robots) {
        const char* fill = "#999999";
        if (r.gradient == 0) fill = "#222222";
        if (r.state == 1) fill = "#cc3333";  // edge-following mover
        if (r.state == 2) fill = "#cc8833";  // ribbon-following mover
        out << "<circle cx=\"" << r.x << "\" cy=\"" << -r.y << "\" r=\"" << f.r_robot
            << "\" fill=\"" << fill << "\" stroke=\"#333333\" stroke-width=\"0.5\"/>\n";
    }
    out << "</svg>\n";
    return out.str();
}

}  // namespace hexswarm
