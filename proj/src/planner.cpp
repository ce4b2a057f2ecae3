#include "hexswarm/planner.hpp"

#include <algorithm>
#include <cassert>
#include <deque>

#include "hexswarm/efp.hpp"

namespace hexswarm {

namespace {

// Index along the parent ribbon of the frontmost parent vertex adjacent to
// the child's leader.
size_t attach_index(const Ribbon& parent, const Ribbon& child) {
    const LatticePoint& leader = child.vertices.front();
    for (size_t i = 0; i < parent.vertices.size(); ++i)
        if (adjacent(parent.vertices[i], leader)) return i;
    return parent.vertices.size();
}

}  // namespace

OrderIndex complete_tree_order(const RibbonTree& rt, const Frame&) {
    OrderIndex oi;
    if (rt.root_id < 0) throw std::runtime_error("ribbon tree has no root");
    int rank = 0;
    std::vector<int> stack{rt.root_id};
    while (!stack.empty()) {
        int id = stack.back();
        stack.pop_back();
        oi.ribbon_rank[id] = rank++;
        std::vector<int> kids = rt.children[static_cast<size_t>(id)];
        std::sort(kids.begin(), kids.end(), [&](int a, int b) {
            size_t ia = attach_index(rt.ribbon(id), rt.ribbon(a));
            size_t ib = attach_index(rt.ribbon(id), rt.ribbon(b));
            if (ia != ib) return ia < ib;
            return rt.ribbon(a).vertices.front() < rt.ribbon(b).vertices.front();
        });
        // Depth-first: push in reverse so the front-attached child pops first.
        for (auto it = kids.rbegin(); it != kids.rend(); ++it) stack.push_back(*it);
    }
    if (oi.ribbon_rank.size() != rt.ribbons.size())
        throw std::runtime_error("ribbon tree is not connected to the root");
    return oi;
}

std::vector<LatticePoint> initial_idle_occupancy(const RibbonTree& idle, size_t n) {
    size_t capacity = 0;
    for (const auto& rib : idle.ribbons) capacity += rib.vertices.size();
    if (capacity < n) throw InsufficientIdle();
    std::vector<LatticePoint> occ;
    size_t remaining = n;
    for (const auto& rib : idle.ribbons) {
        size_t len = rib.vertices.size();
        size_t take = std::min(remaining, len);
        // A partial ribbon is occupied tail-to-front: the last `take` vertices.
        for (size_t i = len - take; i < len; ++i) occ.push_back(rib.vertices[i]);
        remaining -= take;
        if (remaining == 0) break;
    }
    return occ;
}

void gen_additive(const RibbonTree& rt, const RibbonTree& idle,
                  const std::vector<LatticePoint>& occupied_idle, const Frame& f,
                  std::vector<LatticePoint>& s, std::vector<LatticePoint>& t) {
    // Assembly: ribbons in complete tree order, each leader to tail.
    OrderIndex oi = complete_tree_order(rt, f);
    std::vector<int> ids(rt.ribbons.size());
    for (const auto& [id, rank] : oi.ribbon_rank) ids[static_cast<size_t>(rank)] = id;
    t.clear();
    for (int id : ids)
        for (const auto& v : rt.ribbon(id).vertices) t.push_back(v);
    // Activation: occupied idle points, largest ribbon first, tail first.
    std::map<LatticePoint, std::pair<int, size_t>> idle_key;
    for (const auto& rib : idle.ribbons)
        for (size_t i = 0; i < rib.vertices.size(); ++i)
            idle_key[rib.vertices[i]] = {rib.id, i};
    s = occupied_idle;
    std::sort(s.begin(), s.end(), [&](const LatticePoint& a, const LatticePoint& b) {
        return idle_key.at(a) > idle_key.at(b);
    });
    if (s.size() != t.size()) throw InsufficientIdle();
}

void gen_subtractive(const RibbonTree& rt, const DiscreteShape& ds, const RibbonTree& idle,
                     const std::vector<LatticePoint>& s, const Frame& f,
                     std::vector<LatticePoint>& s_r, std::vector<LatticePoint>& t_r) {
    OrderIndex oi = complete_tree_order(rt, f);
    std::vector<int> ids(rt.ribbons.size());
    for (const auto& [id, rank] : oi.ribbon_rank) ids[static_cast<size_t>(rank)] = id;
    // Reactivation: largest ribbon first, each leader to tail.
    s_r.clear();
    for (auto it = ids.rbegin(); it != ids.rend(); ++it)
        for (const auto& v : rt.ribbon(*it).vertices) s_r.push_back(v);
    // Recycle targets: the vacated idle points, smallest ribbon first, front
    // first.
    std::map<LatticePoint, std::pair<int, size_t>> idle_key;
    for (const auto& rib : idle.ribbons)
        for (size_t i = 0; i < rib.vertices.size(); ++i)
            idle_key[rib.vertices[i]] = {rib.id, i};
    std::vector<LatticePoint> recycle = s;
    std::sort(recycle.begin(), recycle.end(), [&](const LatticePoint& a, const LatticePoint& b) {
        return idle_key.at(a) < idle_key.at(b);
    });
    // Rearrangement targets: S\D, largest ribbon first, front first.
    std::vector<LatticePoint> rearrange;
    for (auto it = ids.rbegin(); it != ids.rend(); ++it)
        for (const auto& v : rt.ribbon(*it).vertices)
            if (!ds.D.count(v)) rearrange.push_back(v);
    t_r.clear();
    size_t next_recycle = 0, next_rearrange = 0;
    for (auto it = ids.rbegin(); it != ids.rend(); ++it) {
        const Ribbon& rib = rt.ribbon(*it);
        for (size_t pos = 0; pos < rib.vertices.size(); ++pos) {
            // 1-based position from the leader; the first c(R) robots are
            // recycled, the rest shift forward within the ribbon.
            if (static_cast<int>(pos) + 1 <= rib.cavity_count)
                t_r.push_back(recycle.at(next_recycle++));
            else
                t_r.push_back(rearrange.at(next_rearrange++));
        }
    }
    assert(next_rearrange == rearrange.size());
}

MovementPlan emit_plan(const RibbonTree& rt, const DiscreteShape& ds, const RibbonTree& idle,
                       const Frame& f) {
    MovementPlan plan;
    plan.N = ds.S.size();
    std::vector<LatticePoint> I = initial_idle_occupancy(idle, plan.N);
    gen_additive(rt, idle, I, f, plan.s, plan.t);
    gen_subtractive(rt, ds, idle, plan.s, f, plan.s_r, plan.t_r);
    plan.tuples.reserve(2 * plan.N);
    for (size_t k = 0; k < plan.N; ++k)
        plan.tuples.push_back({plan.s[k], plan.t[k], static_cast<int>(k + 1)});
    for (size_t k = 0; k < plan.N; ++k)
        plan.tuples.push_back({plan.s_r[k], plan.t_r[k], static_cast<int>(plan.N + k + 1)});
    return plan;
}

MovementPlan make_plan(const RibbonTree& rt, const DiscreteShape& ds, const Frame& f) {
    int layers = idle_layers_for(ds.S.size(), f);
    RibbonTree idle = ribbonize_idle(layers, f);
    return emit_plan(rt, ds, idle, f);
}

namespace {

// Offsets within Euclidean distance 2d (squared lattice distance <= 4).
const std::vector<LatticePoint>& within_2d_offsets() {
    static const std::vector<LatticePoint> offs = [] {
        std::vector<LatticePoint> v;
        for (int q = -2; q <= 2; ++q)
            for (int r = -2; r <= 2; ++r) {
                LatticePoint p{q, r};
                long long n2 = norm2(p);
                if (n2 >= 1 && n2 <= 4) v.push_back(p);
            }
        return v;
    }();
    return offs;
}

bool bfs_path(const std::set<LatticePoint>& allowed, const LatticePoint& from,
              const LatticePoint& to, const Frame& f) {
    if (!allowed.count(from) || !allowed.count(to)) return false;
    std::set<LatticePoint> seen{from};
    std::deque<LatticePoint> queue{from};
    while (!queue.empty()) {
        LatticePoint x = queue.front();
        queue.pop_front();
        if (x == to) return true;
        for (const auto& n : neighbors(x, f))
            if (allowed.count(n) && seen.insert(n).second) queue.push_back(n);
    }
    return false;
}

}  // namespace

bool localizable_at(const LatticePoint& x, const std::set<LatticePoint>& anchors, const Frame& f) {
    std::vector<Vec2> pts;
    for (const auto& off : within_2d_offsets()) {
        LatticePoint a = x + off;
        if (anchors.count(a)) pts.push_back(f.to_cartesian(a));
    }
    if (pts.size() < 3) return false;
    const double tol = 1e-9 * f.d() * f.d();
    for (size_t i = 0; i < pts.size(); ++i)
        for (size_t j = i + 1; j < pts.size(); ++j)
            for (size_t k = j + 1; k < pts.size(); ++k) {
                double area2 = (pts[j].x - pts[i].x) * (pts[k].y - pts[i].y) -
                               (pts[k].x - pts[i].x) * (pts[j].y - pts[i].y);
                if (std::abs(area2) > 2.0 * tol) return true;
            }
    return false;
}

namespace {

struct ReplayState {
    std::set<LatticePoint> occupied;
    std::set<LatticePoint> localized;

    void settle(const Frame& f) {
        // Newly reachable robots localize off already-localized neighbors.
        bool changed = true;
        while (changed) {
            changed = false;
            for (const auto& x : occupied)
                if (!localized.count(x) && localizable_at(x, localized, f)) {
                    localized.insert(x);
                    changed = true;
                }
        }
    }
};

}  // namespace

VerifyReport verify_plan(const MovementPlan& plan, const DiscreteShape& ds,
                         const std::vector<LatticePoint>& initial_idle, const Frame& f) {
    VerifyReport report;
    ReplayState st;
    for (const auto& p : seed_positions(f)) {
        st.occupied.insert(p);
        st.localized.insert(p);
    }
    for (const auto& p : initial_idle) st.occupied.insert(p);
    st.settle(f);

    RibbonTree rt = ribbonize(ds.S, ds.D, f);
    std::map<LatticePoint, std::pair<int, size_t>> ribbon_pos;
    for (const auto& rib : rt.ribbons)
        for (size_t i = 0; i < rib.vertices.size(); ++i)
            ribbon_pos[rib.vertices[i]] = {rib.id, i};

    const size_t N = plan.N;
    for (const auto& tup : plan.tuples) {
        StepDiag diag;
        diag.k = tup.k;
        const LatticePoint a = tup.a;
        const LatticePoint b = tup.b;
        diag.start_occupied = st.occupied.count(a) > 0;
        if (a == b) {
            // Stationary subtractive step: the robot never leaves its vertex.
            diag.target_free = true;
            diag.lattice_path_found = true;
            diag.localizable = st.localized.count(a) > 0;
            report.per_step.push_back(diag);
            continue;
        }
        bool loc_ok = localizable_at(a, st.localized, f) || st.localized.count(a);
        st.occupied.erase(a);
        st.localized.erase(a);
        diag.target_free = !st.occupied.count(b);
        if (static_cast<size_t>(tup.k) <= N) {
            // Additive: a path inside the edge-following set.
            std::set<LatticePoint> efs = edge_following_set(st.occupied, f);
            diag.lattice_path_found = bfs_path(efs, a, b, f);
            loc_ok = loc_ok && localizable_at(b, st.localized, f);
        } else {
            auto it = ribbon_pos.find(a);
            if (it == ribbon_pos.end()) {
                diag.note = "reactivated point is not a ribbon vertex";
                report.per_step.push_back(diag);
                continue;
            }
            const Ribbon& rib = rt.ribbon(it->second.first);
            size_t pos = it->second.second;
            // Interior path: every vertex in front of a must be vacated.
            bool interior = true;
            LatticePoint interior_end = a;
            if (ds.S.count(b)) {
                // Rearranged: b lies in front on the same ribbon.
                auto itb = ribbon_pos.find(b);
                if (itb == ribbon_pos.end() || itb->second.first != rib.id ||
                    itb->second.second >= pos) {
                    diag.note = "rearranged target not in front on the same ribbon";
                    report.per_step.push_back(diag);
                    continue;
                }
                for (size_t i = itb->second.second; i < pos; ++i)
                    if (st.occupied.count(rib.vertices[i])) interior = false;
                diag.lattice_path_found = interior;
                loc_ok = loc_ok && localizable_at(b, st.localized, f);
            } else {
                // Recycled: along the ribbon to the leader, out through the
                // merging point, then around the extended swarm boundary.
                for (size_t i = 0; i < pos; ++i)
                    if (st.occupied.count(rib.vertices[i])) interior = false;
                LatticePoint m = rib.merging_point.value();
                std::set<LatticePoint> extended = st.occupied;
                extended.insert(ds.S.begin(), ds.S.end());
                bool exterior = false;
                if (interior && !extended.count(m)) {
                    EfpCycle cycle = efp_cycle(extended, f);
                    exterior = !efp_walk(cycle, m, b).empty();
                    if (!cycle.ok) diag.note = cycle.error;
                }
                diag.lattice_path_found = interior && exterior;
                loc_ok = loc_ok && localizable_at(rib.vertices.front(), st.localized, f) &&
                         localizable_at(m, st.localized, f) &&
                         localizable_at(b, st.localized, f);
            }
        }
        diag.localizable = loc_ok;
        st.occupied.insert(b);
        if (localizable_at(b, st.localized, f)) st.localized.insert(b);
        st.settle(f);
        report.per_step.push_back(diag);
    }

    // Final multiset identity: initial occupancy plus all arrivals minus all
    // departures, restricted to H1, must equal S \ D with unit multiplicity.
    std::map<LatticePoint, int> count;
    for (const auto& p : seed_positions(f)) count[p] += 1;
    for (const auto& p : initial_idle) count[p] += 1;
    for (const auto& tup : plan.tuples) {
        if (tup.a == tup.b) continue;
        count[tup.a] -= 1;
        count[tup.b] += 1;
    }
    bool multiset_ok = true;
    std::set<LatticePoint> final_h1;
    for (const auto& [p, c] : count) {
        if (c < 0 || c > 1) multiset_ok = false;
        if (c == 1 && classify_halfplane(p, f) == HalfPlaneId::Formation) final_h1.insert(p);
    }
    std::set<LatticePoint> want;
    for (const auto& p : ds.S)
        if (!ds.D.count(p)) want.insert(p);
    std::set<LatticePoint> replay_h1;
    for (const auto& p : st.occupied)
        if (classify_halfplane(p, f) == HalfPlaneId::Formation) replay_h1.insert(p);
    report.final_occupancy_matches = multiset_ok && final_h1 == want && replay_h1 == want;
    report.ok = report.final_occupancy_matches;
    for (const auto& diag : report.per_step)
        if (!diag.ok()) report.ok = false;
    return report;
}

std::vector<std::set<LatticePoint>> replay_occupancy(const MovementPlan& plan,
                                                     const std::vector<LatticePoint>& initial_idle,
                                                     const Frame& f) {
    std::vector<std::set<LatticePoint>> out;
    std::set<LatticePoint> occ;
    for (const auto& p : seed_positions(f)) occ.insert(p);
    for (const auto& p : initial_idle) occ.insert(p);
    out.push_back(occ);
    for (const auto& tup : plan.tuples) {
        occ.erase(tup.a);
        occ.insert(tup.b);
        out.push_back(occ);
    }
    return out;
}

}  // namespace hexswarm
