#include "hexswarm/hexgrid.hpp"

namespace hexswarm {

namespace {

// Rotate an axial offset by -60 degrees (decreasing Cartesian angle).
LatticePoint rot_cw(const LatticePoint& v) { return {v.q + v.r, -v.q}; }

// Rotate an axial offset by +60 degrees.
LatticePoint rot_ccw(const LatticePoint& v) { return {-v.r, v.q + v.r}; }

}  // namespace

std::array<LatticePoint, 6> neighbor_offsets(const Frame& f) {
    if (f.chirality >= 0)
        return {{{-1, 1}, {0, 1}, {1, 0}, {1, -1}, {0, -1}, {-1, 0}}};
    return {{{-1, 1}, {-1, 0}, {0, -1}, {1, -1}, {1, 0}, {0, 1}}};
}

std::array<LatticePoint, 6> neighbors(const LatticePoint& p, const Frame& f) {
    std::array<LatticePoint, 6> out;
    auto offs = neighbor_offsets(f);
    for (size_t i = 0; i < 6; ++i) out[i] = p + offs[i];
    return out;
}

LatticePoint rotate_step(const LatticePoint& a, const LatticePoint& c, const Frame& f) {
    LatticePoint v = a - c;
    return c + (f.chirality >= 0 ? rot_cw(v) : rot_ccw(v));
}

LatticePoint rotate_step_back(const LatticePoint& a, const LatticePoint& c, const Frame& f) {
    LatticePoint v = a - c;
    return c + (f.chirality >= 0 ? rot_ccw(v) : rot_cw(v));
}

HalfPlaneId classify_halfplane(const LatticePoint& p, const Frame&) {
    // Lattice y-coordinate is (sqrt(3)/2)*d*r; l1 at r=1, l2 at r=-1.
    if (p.r >= 2) return HalfPlaneId::Formation;
    if (p.r <= -2) return HalfPlaneId::Idle;
    return HalfPlaneId::Buffer;
}

HalfPlaneId classify_halfplane_xy(double, double y, const Frame& f) {
    const double line = f.d() * std::sqrt(3.0) / 2.0;
    if (y > line) return HalfPlaneId::Formation;
    if (y < -line) return HalfPlaneId::Idle;
    return HalfPlaneId::Buffer;
}

std::array<LatticePoint, 5> seed_positions(const Frame& f) {
    return {Frame::origin, f.p[0], f.p[1], f.p[3], f.p[4]};
}

const std::array<LatticePoint, 6>& sqrt3_offsets() {
    static const std::array<LatticePoint, 6> offs{{
        {1, 1}, {-1, 2}, {-2, 1}, {-1, -1}, {1, -2}, {2, -1},
    }};
    return offs;
}

std::array<LatticePoint, 2> sqrt3_midpoints(const LatticePoint& w) {
    static const std::array<LatticePoint, 6> units{{
        {1, 0}, {0, 1}, {-1, 1}, {-1, 0}, {0, -1}, {1, -1},
    }};
    std::array<LatticePoint, 2> out{};
    size_t n = 0;
    for (const auto& u : units)
        if (norm2(w - u) == 1 && n < 2) out[n++] = u;
    return out;
}

}  // namespace hexswarm
