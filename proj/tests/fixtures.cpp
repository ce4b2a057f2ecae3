#include "fixtures.hpp"

#include <cmath>
#include <numbers>

namespace fixtures {

using namespace hexswarm;

Frame frame() { return Frame{}; }

DiscreteShape from_points(const std::vector<LatticePoint>& S, const std::vector<LatticePoint>& D) {
    DiscreteShape ds;
    ds.S.insert(S.begin(), S.end());
    ds.D.insert(D.begin(), D.end());
    ds.boundary = compute_boundary(ds.S, frame());
    return ds;
}

DiscreteShape root3() { return from_points({{-2, 2}, {-1, 2}, {0, 2}}); }

DiscreteShape hex19() {
    std::vector<LatticePoint> pts;
    const LatticePoint c{-2, 4};
    for (int q = -2; q <= 2; ++q)
        for (int r = -2; r <= 2; ++r)
            if (norm2({q, r}) <= 4 && std::abs(q + r) <= 2) pts.push_back(c + LatticePoint{q, r});
    return from_points(pts);
}

DiscreteShape hex19_hole() {
    DiscreteShape ds = hex19();
    ds.D.insert({-2, 4});
    return ds;
}

std::vector<Vec2> circle_poly(double radius, int segments, double cx, double cy) {
    std::vector<Vec2> poly;
    for (int i = 0; i < segments; ++i) {
        double a = 2.0 * std::numbers::pi * i / segments;
        poly.push_back({cx + radius * std::cos(a), cy + radius * std::sin(a)});
    }
    return poly;
}

ShapeSpec hexagon_spec(double circumradius) {
    ShapeSpec spec;
    spec.outer = circle_poly(circumradius, 6);
    return spec;
}

ShapeSpec disc_spec(double radius, int segments) {
    ShapeSpec spec;
    spec.outer = circle_poly(radius, segments);
    return spec;
}

}  // namespace fixtures
