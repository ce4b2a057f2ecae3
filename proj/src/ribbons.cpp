#include "hexswarm/ribbons.hpp"

#include <algorithm>
#include <deque>
#include <map>

namespace hexswarm {

HopField hop_counts(const std::set<LatticePoint>& S, const Frame& f) {
    HopField hf;
    hf.h[Frame::origin] = 0;
    std::deque<LatticePoint> queue{Frame::origin};
    for (const auto& pi : Frame::p) {
        hf.h[pi] = 1;
        queue.push_back(pi);
    }
    while (!queue.empty()) {
        LatticePoint x = queue.front();
        queue.pop_front();
        int hx = hf.h[x];
        for (const auto& y : neighbors(x, f)) {
            if (!S.count(y) || hf.h.count(y)) continue;
            hf.h[y] = hx + 1;
            queue.push_back(y);
        }
    }
    for (const auto& x : S)
        if (!hf.h.count(x)) hf.h[x] = -1;
    return hf;
}

NeighborhoodClass classify(const LatticePoint& x, const HopField& hf, const Frame& f) {
    int hx = hf.at(x);
    if (hx < 1) throw MalformedField(x, "classify requires hop count >= 1");
    std::vector<LatticePoint> lower;
    for (const auto& n : neighbors(x, f))
        if (hf.at(n) == hx - 1) lower.push_back(n);
    if (lower.empty()) throw MalformedField(x, "no neighbor with hop count h(x)-1");
    if (lower.size() > 2) throw MalformedField(x, "more than two neighbors with hop count h(x)-1");
    NeighborhoodClass nc;
    if (lower.size() == 1) {
        nc.type_a = true;
        nc.y = nc.z = lower[0];
        return nc;
    }
    if (!adjacent(lower[0], lower[1]))
        throw MalformedField(x, "two non-adjacent neighbors with hop count h(x)-1");
    nc.type_a = false;
    // The incoming pivot is the one reached from the outgoing pivot by a
    // chirality rotation about x.
    if (rotate_step(lower[1], x, f) == lower[0]) {
        nc.y = lower[0];
        nc.z = lower[1];
    } else {
        nc.y = lower[1];
        nc.z = lower[0];
    }
    return nc;
}

LatticePoint ribbon_successor(const LatticePoint& x, const HopField& hf, const Frame& f) {
    NeighborhoodClass nc = classify(x, hf, f);
    return rotate_step(x, nc.z, f);
}

namespace {

struct ComponentBuild {
    std::vector<Ribbon> ribbons;
    std::unordered_map<LatticePoint, int, LatticePointHash> ribbon_of;
};

// Build directed ribbons from the equal-hop subgraph induced by `field_set`
// (the points carrying hop counts >= 2). Ribbons sorted by (gradient, leader).
ComponentBuild build_ribbons(const std::set<LatticePoint>& field_set, const HopField& hf,
                             const Frame& f) {
    std::unordered_map<LatticePoint, LatticePoint, LatticePointHash> succ;
    std::unordered_map<LatticePoint, LatticePoint, LatticePointHash> pred;
    for (const auto& x : field_set) {
        LatticePoint s = ribbon_successor(x, hf, f);
        if (field_set.count(s) && hf.at(s) == hf.at(x)) {
            succ.emplace(x, s);
            if (!pred.emplace(s, x).second) throw MalformedField(s, "two ribbon predecessors");
        }
    }
    std::vector<Ribbon> ribbons;
    std::set<LatticePoint> placed;
    std::vector<LatticePoint> leaders;
    for (const auto& x : field_set)
        if (!succ.count(x)) leaders.push_back(x);
    std::sort(leaders.begin(), leaders.end(), [&](const LatticePoint& a, const LatticePoint& b) {
        return std::make_tuple(hf.at(a), a.q, a.r) < std::make_tuple(hf.at(b), b.q, b.r);
    });
    ComponentBuild out;
    for (const auto& leader : leaders) {
        Ribbon rib;
        rib.gradient = hf.at(leader);
        LatticePoint cur = leader;
        while (true) {
            rib.vertices.push_back(cur);
            placed.insert(cur);
            auto it = pred.find(cur);
            if (it == pred.end()) break;
            cur = it->second;
        }
        rib.id = static_cast<int>(out.ribbons.size());
        for (const auto& v : rib.vertices) out.ribbon_of[v] = rib.id;
        out.ribbons.push_back(std::move(rib));
    }
    for (const auto& x : field_set)
        if (!placed.count(x)) throw CycleRibbon(x);
    return out;
}

void link_tree(RibbonTree& rt, const HopField& hf, const Frame& f,
               const std::unordered_map<LatticePoint, int, LatticePointHash>& ribbon_of) {
    rt.children.assign(rt.ribbons.size(), {});
    for (auto& rib : rt.ribbons) {
        const LatticePoint& leader = rib.vertices.front();
        NeighborhoodClass nc = classify(leader, hf, f);
        rib.merging_point = rotate_step(leader, nc.z, f);
        auto it = ribbon_of.find(nc.y);
        if (it != ribbon_of.end()) {
            rib.parent_id = it->second;
            rt.children[static_cast<size_t>(it->second)].push_back(rib.id);
        }
        // else the parent is the virtual root (p2,p1) or (p5,p4)
    }
}

}  // namespace

RibbonTree ribbonize(const std::set<LatticePoint>& S, const std::set<LatticePoint>& D,
                     const Frame& f) {
    HopField hf = hop_counts(S, f);
    for (const auto& x : S)
        if (hf.at(x) < 0) throw MalformedField(x, "point unreachable from the origin");
    ComponentBuild cb = build_ribbons(S, hf, f);
    RibbonTree rt;
    rt.kind = RibbonTreeKind::Formation;
    rt.ribbons = std::move(cb.ribbons);
    link_tree(rt, hf, f, cb.ribbon_of);
    for (auto& rib : rt.ribbons) {
        rib.cavity_count = 0;
        for (const auto& v : rib.vertices) rib.cavity_count += D.count(v) ? 1 : 0;
        if (rib.gradient == 2 && rt.root_id < 0) rt.root_id = rib.id;
    }
    return rt;
}

std::vector<Violation> check_proper(const RibbonTree& rt, const DiscreteShape& ds, const Frame& f) {
    std::vector<Violation> out;
    // Proper placement: S in H1, disjoint from the origin neighborhood.
    for (const auto& x : ds.S) {
        if (classify_halfplane(x, f) != HalfPlaneId::Formation) {
            out.push_back({ViolationKind::Placement, {x}, "shape point outside H1"});
        }
    }
    // Positive hop counts.
    HopField hf = hop_counts(ds.S, f);
    for (const auto& x : ds.S)
        if (hf.at(x) <= 0)
            out.push_back({ViolationKind::HopCount, {x}, "non-positive hop count"});
    // Ribbon length and root shape.
    int grad2 = 0;
    for (const auto& rib : rt.ribbons) {
        if (rib.vertices.size() < 2)
            out.push_back({ViolationKind::MinLength, rib.vertices, "ribbon shorter than 2"});
        if (rib.gradient == 2) {
            ++grad2;
            if (rib.vertices.size() != 3)
                out.push_back({ViolationKind::RootShape, rib.vertices,
                               "gradient-2 ribbon does not have length 3"});
        }
    }
    if (grad2 != 1)
        out.push_back({ViolationKind::RootShape, {}, "gradient-2 ribbon count is not 1"});
    // Representation conditions (connectivity is subsumed by hop counts but
    // reported uniformly).
    auto rep = check_representation(ds, f);
    out.insert(out.end(), rep.begin(), rep.end());
    return out;
}

namespace {

// Lattice points of H2 reachable from the seed neighborhood, by BFS level.
// Level k (k >= 2) holds the points at hop count k.
std::vector<std::set<LatticePoint>> idle_levels(int layers, const Frame& f) {
    std::vector<std::set<LatticePoint>> levels;
    std::set<LatticePoint> seen;
    std::set<LatticePoint> frontier;
    for (const auto& pi : Frame::p) frontier.insert(pi);
    for (int k = 2; k < layers + 2; ++k) {
        std::set<LatticePoint> next;
        for (const auto& x : frontier)
            for (const auto& n : neighbors(x, f))
                if (classify_halfplane(n, f) == HalfPlaneId::Idle && !seen.count(n)) {
                    next.insert(n);
                    seen.insert(n);
                }
        levels.push_back(next);
        frontier = levels.back();
    }
    return levels;
}

}  // namespace

RibbonTree ribbonize_idle(int layers, const Frame& f) {
    auto levels = idle_levels(layers, f);
    std::set<LatticePoint> all;
    for (const auto& lvl : levels) all.insert(lvl.begin(), lvl.end());
    HopField hf = hop_counts(all, f);
    ComponentBuild cb = build_ribbons(all, hf, f);
    RibbonTree rt;
    rt.kind = RibbonTreeKind::Idle;
    rt.ribbons = std::move(cb.ribbons);
    link_tree(rt, hf, f, cb.ribbon_of);
    rt.root_id = 0;
    // The idle construction yields one ribbon per level (single-branch chain).
    if (rt.ribbons.size() != static_cast<size_t>(layers))
        throw std::runtime_error("idle ribbonization is not a single chain");
    return rt;
}

size_t idle_capacity(int layers, const Frame& f) {
    size_t n = 0;
    for (const auto& lvl : idle_levels(layers, f)) n += lvl.size();
    return n;
}

int idle_layers_for(size_t n, const Frame& f) {
    int layers = 1;
    while (idle_capacity(layers, f) < n) ++layers;
    return layers;
}

}  // namespace hexswarm
