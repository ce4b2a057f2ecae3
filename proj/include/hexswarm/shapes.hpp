#pragma once

#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "hexswarm/hexgrid.hpp"

namespace hexswarm {

/// Continuous user shape: a simple outer polygon with optional hole polygons,
/// vertex coordinates in units of the lattice constant d.
struct ShapeSpec {
    std::vector<Vec2> outer;
    std::vector<std::vector<Vec2>> holes;
};

struct Pose {
    double theta = 0.0;  // radians
    double tx = 0.0;     // d-units
    double ty = 0.0;     // d-units
};

struct DiscreteShape {
    std::set<LatticePoint> S;
    std::set<LatticePoint> D;         // hole points, D subset of S
    std::set<LatticePoint> boundary;  // points of S with a neighbor outside S
};

enum class ViolationKind {
    Connectivity,
    BoundaryInHole,
    SmoothBoundary2d,
    SmoothBoundarySqrt3,
    Placement,
    HopCount,
    MinLength,
    RootShape,
};

struct Violation {
    ViolationKind kind;
    std::vector<LatticePoint> witness;
    std::string message;
};

const char* violation_kind_name(ViolationKind k);

struct SearchParams {
    int rotation_samples = 24;  // over [0, pi/3)
    int trans_steps = 4;        // per fundamental-domain axis (d/4 spacing)
    int max_layers = 6;         // vertical layers beyond l1 to try
};

struct EmptyShape : std::runtime_error {
    EmptyShape() : std::runtime_error("discretized shape is empty") {}
};

struct NoProperPlacement : std::runtime_error {
    Pose best_pose;
    std::vector<Violation> best_violations;
    size_t best_cardinality = 0;
    explicit NoProperPlacement(Pose p, std::vector<Violation> v, size_t card)
        : std::runtime_error("no proper placement found"),
          best_pose(p),
          best_violations(std::move(v)),
          best_cardinality(card) {}
};

/// Even-odd point-in-polygon; points within eps of an edge count as outside.
bool point_in_polygon(const Vec2& p, const std::vector<Vec2>& poly, double eps);

/// Lattice points covered by the posed shape. S = inside outer, D = inside a
/// hole (so D is a subset of S). Throws EmptyShape if S is empty.
DiscreteShape discretize(const ShapeSpec& spec, const Pose& pose, const Frame& f);

std::set<LatticePoint> compute_boundary(const std::set<LatticePoint>& S, const Frame& f);

/// Representation conditions: connectivity, holes off the boundary, both
/// smooth-boundary formulas. Empty result means the shape is representable.
std::vector<Violation> check_representation(const DiscreteShape& ds, const Frame& f);

struct PlacementResult {
    Pose pose;
    DiscreteShape shape;
};

/// Deterministic grid search for a pose whose discretization is representable
/// and properly ribbonizable. Candidates are scanned by descending |S\D|,
/// then ascending (theta, tx, ty). Throws NoProperPlacement when the grid is
/// exhausted, carrying the best-scoring failure.
PlacementResult find_placement(const ShapeSpec& spec, const Frame& f, const SearchParams& search);

}  // namespace hexswarm
