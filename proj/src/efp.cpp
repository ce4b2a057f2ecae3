#include "hexswarm/efp.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

namespace hexswarm {

std::set<LatticePoint> edge_following_set(const std::set<LatticePoint>& occ, const Frame& f) {
    std::set<LatticePoint> efs;
    for (const auto& o : occ)
        for (const auto& n : neighbors(o, f))
            if (!occ.count(n)) efs.insert(n);
    return efs;
}

namespace {

// True if the 60-degree arc from a to b around pivot o keeps distance >= d
// (within tolerance) from every occupied point.
bool arc_clear(const LatticePoint& a, const LatticePoint& b, const LatticePoint& o,
               const std::set<LatticePoint>& occ, const Frame& f) {
    const double d = f.d();
    Vec2 oc = f.to_cartesian(o);
    Vec2 ac = f.to_cartesian(a);
    Vec2 bc = f.to_cartesian(b);
    double a0 = std::atan2(ac.y - oc.y, ac.x - oc.x);
    double a1 = std::atan2(bc.y - oc.y, bc.x - oc.x);
    // Shorter way round (the span is 60 degrees).
    double diff = std::remainder(a1 - a0, 2.0 * std::numbers::pi);
    // Nearby robots are the only ones that can encroach on the arc.
    std::vector<Vec2> near;
    for (const auto& p : occ)
        if (norm2(p - o) <= 9) near.push_back(f.to_cartesian(p));
    const int samples = 12;
    for (int i = 1; i < samples; ++i) {
        double ang = a0 + diff * i / samples;
        Vec2 pt{oc.x + d * std::cos(ang), oc.y + d * std::sin(ang)};
        for (const auto& rc : near)
            if (dist(pt, rc) < d * (1.0 - 1e-9)) return false;
    }
    return true;
}

}  // namespace

EfpCycle efp_cycle(const std::set<LatticePoint>& occ, const Frame& f) {
    EfpCycle out;
    std::set<LatticePoint> efs = edge_following_set(occ, f);
    if (efs.empty()) {
        out.error = "empty edge-following set";
        return out;
    }
    // Adjacency: 60 degrees apart around a shared pivot, arc unobstructed.
    std::map<LatticePoint, std::vector<LatticePoint>> adj;
    for (const auto& x : efs) {
        for (const auto& y : neighbors(x, f)) {
            if (!efs.count(y) || y < x) continue;
            bool linked = false;
            for (const auto& o : neighbors(x, f)) {
                if (!occ.count(o) || !adjacent(o, y)) continue;
                if (arc_clear(x, y, o, occ, f)) {
                    linked = true;
                    break;
                }
            }
            if (linked) {
                adj[x].push_back(y);
                adj[y].push_back(x);
            }
        }
    }
    for (const auto& x : efs) {
        auto it = adj.find(x);
        size_t deg = it == adj.end() ? 0 : it->second.size();
        if (deg != 2) {
            out.error = "edge-following point with degree " + std::to_string(deg) + " at (" +
                        std::to_string(x.q) + "," + std::to_string(x.r) + ")";
            return out;
        }
    }
    LatticePoint start = *efs.begin();
    std::vector<LatticePoint> cyc{start};
    LatticePoint prev = start;
    LatticePoint cur = adj[start][0];
    while (!(cur == start)) {
        cyc.push_back(cur);
        const auto& nx = adj[cur];
        LatticePoint next = (nx[0] == prev) ? nx[1] : nx[0];
        prev = cur;
        cur = next;
        if (cyc.size() > efs.size()) {
            out.error = "contact curve does not close";
            return out;
        }
    }
    if (cyc.size() != efs.size()) {
        out.error = "contact curve misses " + std::to_string(efs.size() - cyc.size()) +
                    " edge-following points";
        return out;
    }
    // Orient the cycle in the orbit direction: for chirality +1 a robot
    // travels clockwise around the swarm (negative signed area, y up).
    double area2 = 0.0;
    for (size_t i = 0; i < cyc.size(); ++i) {
        Vec2 a = f.to_cartesian(cyc[i]);
        Vec2 b = f.to_cartesian(cyc[(i + 1) % cyc.size()]);
        area2 += a.x * b.y - b.x * a.y;
    }
    bool want_negative = f.chirality >= 0;
    if ((area2 > 0.0) == want_negative) std::reverse(cyc.begin(), cyc.end());
    out.ok = true;
    out.points = std::move(cyc);
    return out;
}

std::vector<LatticePoint> efp_walk(const EfpCycle& cycle, const LatticePoint& from,
                                   const LatticePoint& to) {
    if (!cycle.ok) return {};
    auto it = std::find(cycle.points.begin(), cycle.points.end(), from);
    if (it == cycle.points.end()) return {};
    size_t n = cycle.points.size();
    size_t i = static_cast<size_t>(it - cycle.points.begin());
    std::vector<LatticePoint> path{from};
    for (size_t step = 0; step < n; ++step) {
        if (path.back() == to) return path;
        i = (i + 1) % n;
        path.push_back(cycle.points[i]);
    }
    if (path.back() == to) return path;
    return {};
}

}  // namespace hexswarm
