#pragma once

#include <optional>
#include <stdexcept>
#include <unordered_map>

#include "hexswarm/shapes.hpp"

namespace hexswarm {

struct HopField {
    std::unordered_map<LatticePoint, int, LatticePointHash> h;

    int at(const LatticePoint& p) const {
        auto it = h.find(p);
        return it == h.end() ? -1 : it->second;
    }
};

struct NeighborhoodClass {
    bool type_a = false;
    LatticePoint y;  // hop-(k-1) neighbor used for the incoming arc pivot
    LatticePoint z;  // outgoing arc pivot (equals y for Type A)
};

struct MalformedField : std::runtime_error {
    LatticePoint at;
    explicit MalformedField(LatticePoint p, const std::string& what)
        : std::runtime_error(what), at(p) {}
};

struct CycleRibbon : std::runtime_error {
    LatticePoint at;
    explicit CycleRibbon(LatticePoint p)
        : std::runtime_error("equal-hop component forms a cycle"), at(p) {}
};

struct Ribbon {
    int id = -1;
    std::vector<LatticePoint> vertices;  // leader (front) first, tail last
    int gradient = 0;
    int cavity_count = 0;
    std::optional<int> parent_id;  // empty for children of the virtual root
    std::optional<LatticePoint> merging_point;
};

enum class RibbonTreeKind { Formation, Idle };

struct RibbonTree {
    std::vector<Ribbon> ribbons;  // id == index
    int root_id = -1;             // the gradient-2 ribbon (Formation) or IR_0 (Idle)
    std::vector<std::vector<int>> children;
    RibbonTreeKind kind = RibbonTreeKind::Formation;

    const Ribbon& ribbon(int id) const { return ribbons.at(static_cast<size_t>(id)); }
};

/// BFS hop counts from the origin over S plus the seed neighborhood
/// {O, p1..p6}. Points of S not reachable get -1. The returned field also
/// contains O (0) and p1..p6 (1).
HopField hop_counts(const std::set<LatticePoint>& S, const Frame& f);

/// Type A/B classification of x from the hop counts of its neighbors.
NeighborhoodClass classify(const LatticePoint& x, const HopField& hf, const Frame& f);

/// Successor of x along its ribbon direction: the next neighbor of the
/// outgoing pivot after x in the chirality rotation. May land outside S.
LatticePoint ribbon_successor(const LatticePoint& x, const HopField& hf, const Frame& f);

/// Extract directed ribbons (equal-hop components), parent links, cavity
/// counts and merging points for the formation shape.
RibbonTree ribbonize(const std::set<LatticePoint>& S, const std::set<LatticePoint>& D,
                     const Frame& f);

/// The six proper-ribbonization conditions. Empty result means proper.
std::vector<Violation> check_proper(const RibbonTree& rt, const DiscreteShape& ds, const Frame& f);

/// Idle-side ribbons IR_0..IR_{layers-1} in H2, built by the mirrored
/// construction (virtual root (p5,p4)). Single-branch tree.
RibbonTree ribbonize_idle(int layers, const Frame& f);

/// Total vertex count of ribbonize_idle(layers).
size_t idle_capacity(int layers, const Frame& f);

/// Smallest layer count whose capacity is >= n.
int idle_layers_for(size_t n, const Frame& f);

}  // namespace hexswarm
