#include <algorithm>
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "fixtures.hpp"
#include "hexswarm/efp.hpp"
#include "hexswarm/swarmsim.hpp"

using namespace hexswarm;

namespace {

MovementPlan plan_for(const DiscreteShape& ds, const Frame& f) {
    RibbonTree rt = ribbonize(ds.S, ds.D, f);
    REQUIRE(check_proper(rt, ds, f).empty());
    return make_plan(rt, ds, f);
}

std::set<LatticePoint> seed_occupancy(const Frame& f) {
    auto seeds = seed_positions(f);
    return {seeds.begin(), seeds.end()};
}

}  // namespace

TEST_CASE("edge-following set of the seed cluster") {
    Frame f = fixtures::frame();
    auto efs = edge_following_set(seed_occupancy(f), f);
    CHECK(efs.count({1, 0}) == 1);   // p3
    CHECK(efs.count({-1, 0}) == 1);  // p6
    CHECK(efs.count({0, 0}) == 0);   // occupied
    CHECK(efs.count({2, 2}) == 0);   // not adjacent
    for (const auto& p : efs) {
        bool adj = false;
        for (const auto& s : seed_occupancy(f)) adj |= adjacent(p, s);
        CHECK(adj);
    }
}

TEST_CASE("the contact curve around the seeds is a single cycle") {
    Frame f = fixtures::frame();
    auto occ = seed_occupancy(f);
    EfpCycle cyc = efp_cycle(occ, f);
    REQUIRE(cyc.ok);
    auto efs = edge_following_set(occ, f);
    CHECK(cyc.points.size() == efs.size());
    // Consecutive points are 60 degrees apart around a shared pivot, hence
    // exactly one lattice step apart.
    for (size_t i = 0; i < cyc.points.size(); ++i)
        CHECK(adjacent(cyc.points[i], cyc.points[(i + 1) % cyc.points.size()]));
    // Orientation follows the frame chirality (clockwise: negative area).
    double area2 = 0.0;
    for (size_t i = 0; i < cyc.points.size(); ++i) {
        Vec2 a = f.to_cartesian(cyc.points[i]);
        Vec2 b = f.to_cartesian(cyc.points[(i + 1) % cyc.points.size()]);
        area2 += a.x * b.y - b.x * a.y;
    }
    CHECK(area2 < 0.0);
}

TEST_CASE("walking the cycle respects the orientation") {
    Frame f = fixtures::frame();
    EfpCycle cyc = efp_cycle(seed_occupancy(f), f);
    REQUIRE(cyc.ok);
    LatticePoint a = cyc.points[0];
    LatticePoint b = cyc.points[3];
    auto path = efp_walk(cyc, a, b);
    REQUIRE(path.size() == 4);
    CHECK(path.front() == a);
    CHECK(path.back() == b);
    // Walking the other way goes the long way round, not backwards.
    auto back = efp_walk(cyc, b, a);
    CHECK(back.size() == cyc.points.size() - 3 + 1);
    CHECK(efp_walk(cyc, a, LatticePoint{9, 9}).empty());
}

TEST_CASE("trilateration recovers exact positions") {
    std::vector<std::pair<Vec2, double>> anchors{
        {{0, 0}, std::sqrt(2.0)}, {{1, 0}, 1.0}, {{0, 1}, 1.0}};
    auto fix = trilaterate(anchors, 1.0);
    REQUIRE(fix.has_value());
    CHECK(fix->x == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(fix->y == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("trilateration needs three non-collinear anchors") {
    CHECK_FALSE(trilaterate({{{0, 0}, 1.0}, {{1, 0}, 1.0}}, 1.0).has_value());
    CHECK_FALSE(
        trilaterate({{{0, 0}, 1.0}, {{1, 0}, 1.0}, {{2, 0}, 1.0}}, 1.0).has_value());
}

TEST_CASE("trilateration degrades gracefully with range noise") {
    Frame f = fixtures::frame();
    double d = f.d();
    Vec2 truth{0.3 * d, -1.7 * d};
    std::vector<Vec2> pts{{0, 0}, {d, 0}, {0.5 * d, -0.866 * d}, {-0.5 * d, -0.866 * d}};
    std::mt19937_64 rng(7);
    std::normal_distribution<double> noise(0.0, 0.01 * d);
    std::vector<double> errs;
    for (int trial = 0; trial < 500; ++trial) {
        std::vector<std::pair<Vec2, double>> anchors;
        for (const auto& p : pts) anchors.push_back({p, dist(p, truth) + noise(rng)});
        auto fix = trilaterate(anchors, d);
        REQUIRE(fix.has_value());
        errs.push_back(dist(*fix, truth));
    }
    std::sort(errs.begin(), errs.end());
    CHECK(errs[errs.size() / 2] < 0.02 * d);       // median
    CHECK(errs[errs.size() * 99 / 100] < 0.1 * d);  // p99
}

TEST_CASE("pivot rotation is an isometry") {
    Vec2 c{3.0, -2.0};
    Vec2 p{4.0, -2.0};
    Vec2 q = rotate_about(p, c, -std::numbers::pi / 2.0);
    CHECK(q.x == doctest::Approx(3.0));
    CHECK(q.y == doctest::Approx(-3.0));
    CHECK(dist(q, c) == doctest::Approx(dist(p, c)));
}

TEST_CASE("boundary properness over occupancy sets") {
    Frame f = fixtures::frame();
    CHECK(boundary_proper_violation(seed_occupancy(f), f).empty());
    // (0,0) and (2,0) sit 2d apart with the midpoint (1,0) missing.
    std::set<LatticePoint> gap{{0, 0}, {0, 1}, {1, 1}, {2, 0}};
    CHECK_FALSE(boundary_proper_violation(gap, f).empty());
}

TEST_CASE("three robots assemble the root row") {
    Frame f = fixtures::frame();
    DiscreteShape ds = fixtures::root3();
    MovementPlan plan = plan_for(ds, f);
    SimParams sp;
    SimResult res = simulate(plan, ds, f, sp);
    INFO(res.error);
    CHECK(res.completed);
    CHECK(res.monitor_failures == 0);
    CHECK(res.final_h1 == ds.S);
    CHECK(res.min_clearance >= 2.0 * f.r_robot - 1e-6 * f.d());
    auto snaps = replay_occupancy(plan, plan.s, f);
    REQUIRE(res.epoch_occupancy.size() == snaps.size());
    for (size_t i = 0; i < snaps.size(); ++i) CHECK(res.epoch_occupancy[i] == snaps[i]);
}

TEST_CASE("nineteen robots assemble and carve the holed hexagon") {
    Frame f = fixtures::frame();
    DiscreteShape ds = fixtures::hex19_hole();
    MovementPlan plan = plan_for(ds, f);
    SimParams sp;
    SimResult res = simulate(plan, ds, f, sp);
    INFO(res.error);
    CHECK(res.completed);
    CHECK(res.monitor_failures == 0);
    std::set<LatticePoint> want;
    std::set_difference(ds.S.begin(), ds.S.end(), ds.D.begin(), ds.D.end(),
                        std::inserter(want, want.begin()));
    CHECK(res.final_h1 == want);
    auto snaps = replay_occupancy(plan, plan.s, f);
    REQUIRE(res.epoch_occupancy.size() == snaps.size());
    for (size_t i = 0; i < snaps.size(); ++i) CHECK(res.epoch_occupancy[i] == snaps[i]);
}

TEST_CASE("simulation is deterministic for a fixed seed") {
    Frame f = fixtures::frame();
    DiscreteShape ds = fixtures::root3();
    MovementPlan plan = plan_for(ds, f);
    SimParams sp;
    sp.sigma = 0.005;
    sp.seed = 42;
    SimResult a = simulate(plan, ds, f, sp);
    SimResult b = simulate(plan, ds, f, sp);
    CHECK(a.completed);
    CHECK(a.completed == b.completed);
    CHECK(a.ticks == b.ticks);
    REQUIRE(a.trace.size() == b.trace.size());
    for (size_t i = 0; i < a.trace.size(); ++i) {
        CHECK(a.trace[i].tick == b.trace[i].tick);
        CHECK(a.trace[i].kind == b.trace[i].kind);
        CHECK(a.trace[i].payload == b.trace[i].payload);
    }
    SimParams sp2 = sp;
    sp2.seed = 43;
    SimResult c = simulate(plan, ds, f, sp2);
    CHECK(c.completed);
    CHECK(c.final_h1 == a.final_h1);
}

TEST_CASE("range noise does not break assembly") {
    Frame f = fixtures::frame();
    DiscreteShape ds = fixtures::root3();
    MovementPlan plan = plan_for(ds, f);
    SimParams sp;
    sp.sigma = 0.01;
    sp.seed = 1;
    SimResult res = simulate(plan, ds, f, sp);
    INFO(res.error);
    CHECK(res.completed);
    CHECK(res.final_h1 == ds.S);
}

TEST_CASE("the trace carries the expected event stream") {
    Frame f = fixtures::frame();
    DiscreteShape ds = fixtures::root3();
    MovementPlan plan = plan_for(ds, f);
    SimResult res = simulate(plan, ds, f, SimParams{});
    size_t epoch_starts = 0, stops = 0, monitor_passes = 0;
    for (const auto& e : res.trace) {
        if (e.kind == TraceKind::EpochStart) ++epoch_starts;
        if (e.kind == TraceKind::Stopped) ++stops;
        if (e.kind == TraceKind::MonitorPass) ++monitor_passes;
        if (e.kind == TraceKind::EpochStart) {
            CHECK(e.payload.contains("k"));
            CHECK(e.payload.contains("robot"));
        }
    }
    CHECK(epoch_starts == 2 * plan.N);
    CHECK(stops >= plan.N);  // every additive mover stops at least once
    CHECK(monitor_passes > 0);
    // Ticks are monotone.
    for (size_t i = 0; i + 1 < res.trace.size(); ++i)
        CHECK(res.trace[i].tick <= res.trace[i + 1].tick);
}
