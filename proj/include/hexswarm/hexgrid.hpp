#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

namespace hexswarm {

/// Axial integer coordinate on the hexagonal lattice.
/// Cartesian embedding (in units of the lattice constant d):
///   x = q + r/2,  y = (sqrt(3)/2) * r
struct LatticePoint {
    int q = 0;
    int r = 0;

    friend bool operator==(const LatticePoint&, const LatticePoint&) = default;
    friend auto operator<=>(const LatticePoint&, const LatticePoint&) = default;

    LatticePoint operator+(const LatticePoint& o) const { return {q + o.q, r + o.r}; }
    LatticePoint operator-(const LatticePoint& o) const { return {q - o.q, r - o.r}; }
};

struct LatticePointHash {
    size_t operator()(const LatticePoint& p) const {
        uint64_t v = (static_cast<uint64_t>(static_cast<uint32_t>(p.q)) << 32) |
                     static_cast<uint32_t>(p.r);
        v *= 0x9e3779b97f4a7c15ull;
        return static_cast<size_t>(v ^ (v >> 32));
    }
};

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    double norm() const { return std::hypot(x, y); }
};

inline double dist(const Vec2& a, const Vec2& b) { return (a - b).norm(); }

/// Squared Euclidean distance between lattice points in units of d^2.
/// Exact integer: |(q,r)|^2 = q^2 + q*r + r^2.
inline long long norm2(const LatticePoint& v) {
    long long q = v.q, r = v.r;
    return q * q + q * r + r * r;
}

inline bool adjacent(const LatticePoint& a, const LatticePoint& b) {
    return norm2(a - b) == 1;
}

enum class HalfPlaneId { Formation, Idle, Buffer };

/// Workspace frame: lattice constant, robot radius, the labeled origin
/// neighborhood p1..p6 and the half-plane split.
///
/// p1..p6 sit at Cartesian angles 120, 60, 0, -60, -120, 180 degrees, so the
/// line l1 through p1,p2 is y = +sqrt(3)/2*d and l2 through p4,p5 is its
/// mirror. The formation half-plane is above l1, the idle half-plane below l2.
struct Frame {
    double r_robot = 17.0;       // physical robot radius (length units)
    double safety = 1.1;         // multiplier on the nominal lattice constant
    int chirality = +1;          // +1: ribbon/orbit direction is decreasing angle

    double d() const { return safety * 2.0 * r_robot / (std::sqrt(3.0) - 1.0); }

    static constexpr LatticePoint origin{0, 0};
    // p1..p6 (index 0..5)
    static constexpr std::array<LatticePoint, 6> p{{
        {-1, 1}, {0, 1}, {1, 0}, {1, -1}, {0, -1}, {-1, 0},
    }};

    Vec2 to_cartesian(const LatticePoint& pt) const {
        const double dd = d();
        return {dd * (pt.q + pt.r * 0.5), dd * (std::sqrt(3.0) / 2.0) * pt.r};
    }
};

/// The six unit offsets in the frame's rotation order (for chirality +1 this
/// is the offset of p1, p2, ..., p6, i.e. decreasing Cartesian angle).
std::array<LatticePoint, 6> neighbor_offsets(const Frame& f);

/// The six neighbors of p in the frame's rotation order.
std::array<LatticePoint, 6> neighbors(const LatticePoint& p, const Frame& f);

/// Rotate `a` about `c` by 60 degrees in the frame's orbit direction
/// (the direction ribbons and moving robots advance).
LatticePoint rotate_step(const LatticePoint& a, const LatticePoint& c, const Frame& f);

/// Inverse of rotate_step.
LatticePoint rotate_step_back(const LatticePoint& a, const LatticePoint& c, const Frame& f);

/// Half-plane classification of a lattice point (exact integer test).
HalfPlaneId classify_halfplane(const LatticePoint& p, const Frame& f);

/// Half-plane classification of an arbitrary Cartesian point (open half-planes).
HalfPlaneId classify_halfplane_xy(double x, double y, const Frame& f);

/// The five seed positions (O, p1, p2, p4, p5), in that order.
std::array<LatticePoint, 5> seed_positions(const Frame& f);

/// Offsets at squared distance 3 (sqrt(3)*d ring), any order but deterministic.
const std::array<LatticePoint, 6>& sqrt3_offsets();

/// For an offset w with norm2(w) == 3, the two unit offsets u,v with u+v == w.
std::array<LatticePoint, 2> sqrt3_midpoints(const LatticePoint& w);

}  // namespace hexswarm
