#pragma once

#include <map>

#include "hexswarm/ribbons.hpp"

namespace hexswarm {

struct OrderIndex {
    std::map<int, int> ribbon_rank;  // ribbon id -> dense rank, root rank 0
};

struct MovementPlan {
    size_t N = 0;                   // |S|
    std::vector<LatticePoint> s;    // activation (idle positions, tail first)
    std::vector<LatticePoint> t;    // assembly (S, ribbon by ribbon)
    std::vector<LatticePoint> s_r;  // reactivation (S, outermost first)
    std::vector<LatticePoint> t_r;  // reassembly (S\D and recycled idle spots)

    struct Tuple {
        LatticePoint a;
        LatticePoint b;
        int k = 0;  // 1-based; 1..N additive, N+1..2N subtractive
    };
    std::vector<Tuple> tuples;
};

struct StepDiag {
    int k = 0;
    bool start_occupied = false;
    bool target_free = false;
    bool lattice_path_found = false;
    bool localizable = false;
    std::string note;
    bool ok() const { return start_occupied && target_free && lattice_path_found && localizable; }
};

struct VerifyReport {
    bool ok = false;
    bool final_occupancy_matches = false;
    std::vector<StepDiag> per_step;
};

struct InsufficientIdle : std::runtime_error {
    InsufficientIdle() : std::runtime_error("idle capacity below robot count") {}
};

/// Depth-first linear extension of the ribbon tree: children visited in order
/// of their attachment position along the parent (front first).
OrderIndex complete_tree_order(const RibbonTree& rt, const Frame& f);

/// Initial idle occupancy: N robots filling idle ribbons inner to outer, the
/// partial outermost ribbon occupied tail-to-front.
std::vector<LatticePoint> initial_idle_occupancy(const RibbonTree& idle, size_t n);

/// Activation and assembly sequences.
void gen_additive(const RibbonTree& rt, const RibbonTree& idle,
                  const std::vector<LatticePoint>& occupied_idle, const Frame& f,
                  std::vector<LatticePoint>& s, std::vector<LatticePoint>& t);

/// Reactivation and reassembly sequences.
void gen_subtractive(const RibbonTree& rt, const DiscreteShape& ds, const RibbonTree& idle,
                     const std::vector<LatticePoint>& s, const Frame& f,
                     std::vector<LatticePoint>& s_r, std::vector<LatticePoint>& t_r);

/// Full plan for a properly ribbonized shape. Throws InsufficientIdle if the
/// idle tree cannot host |S| robots.
MovementPlan emit_plan(const RibbonTree& rt, const DiscreteShape& ds, const RibbonTree& idle,
                       const Frame& f);

/// Convenience: plan with the idle tree sized automatically.
MovementPlan make_plan(const RibbonTree& rt, const DiscreteShape& ds, const Frame& f);

/// Symbolic lattice-level replay of a plan: occupancy bookkeeping, path
/// existence inside the edge-following set, localizability at waypoints, and
/// the final multiset identity. This is the oracle the simulator is checked
/// against.
VerifyReport verify_plan(const MovementPlan& plan, const DiscreteShape& ds,
                         const std::vector<LatticePoint>& initial_idle, const Frame& f);

/// Occupancy snapshots after each step k=0..2N of the symbolic replay,
/// for cross-checking the simulator epoch by epoch.
std::vector<std::set<LatticePoint>> replay_occupancy(const MovementPlan& plan,
                                                     const std::vector<LatticePoint>& initial_idle,
                                                     const Frame& f);

/// True if at least three of the anchors within 2d of x are non-collinear.
bool localizable_at(const LatticePoint& x, const std::set<LatticePoint>& anchors, const Frame& f);

}  // namespace hexswarm
