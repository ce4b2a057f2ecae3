#pragma once

#include <cstdint>
#include <numbers>
#include <optional>
#include <random>

#include "hexswarm/planner.hpp"

#include "json.hpp"

namespace hexswarm {

enum class RobotState { Stop, Edge, Ribbon };

struct Robot {
    int id = -1;
    RobotState state = RobotState::Stop;
    Vec2 pos;                          // Cartesian, length units
    std::optional<Vec2> believed;      // latest localization fix
    int gradient = -1;                 // -1 until gradient formation reaches it
    int epoch = 1;                     // local epoch counter T(v)
    int pivot = -1;                    // robot id of the current orbit center
    bool is_seed = false;
};

enum class Phase { Warmup, Additive, Subtractive, Done };

struct SimParams {
    double dtheta = std::numbers::pi / 90.0;
    double sigma = 0.0;               // range-noise stddev, in units of d
    uint64_t seed = 0;
    bool strict = true;               // abort on monitor failure
    double comm_range_factor = 2.2;   // communication range l = factor * d
    double stop_tol = 0.05;           // stop radius around a target, in d
    bool raw_controller = false;      // turn-left/right steering instead of
                                      // exact pivot rotation
    bool skip_verification = false;   // recorded in the trace when the plan
                                      // was not pre-verified
};

enum class TraceKind {
    EpochStart,
    SubEpochBoundary,
    PivotSwitch,
    Stopped,
    LocalizationFix,
    MonitorPass,
    MonitorFail,
    Collision,
};

const char* trace_kind_name(TraceKind k);

struct TraceEvent {
    long tick = 0;
    TraceKind kind = TraceKind::EpochStart;
    nlohmann::ordered_json payload;
};

struct SimResult {
    bool completed = false;
    std::string error;
    std::vector<TraceEvent> trace;
    // Stopped-robot occupancy after warmup and after each epoch (index 0 =
    // initial), for the symbolic-replay cross-check.
    std::vector<std::set<LatticePoint>> epoch_occupancy;
    std::set<LatticePoint> final_h1;
    double min_clearance = 1e300;  // over all ticks, length units
    size_t monitor_failures = 0;
    long ticks = 0;
};

/// Sum-of-absolute-residual trilateration: closed-form two-circle seed plus
/// bounded pattern-search refinement. `anchors` pairs positions with measured
/// ranges; `scale` sets tolerances (pass the lattice constant d).
std::optional<Vec2> trilaterate(const std::vector<std::pair<Vec2, double>>& anchors, double scale);

/// One step of pivot rotation: rotate `pos` about `center` by `ang` radians.
Vec2 rotate_about(const Vec2& pos, const Vec2& center, double ang);

/// Boundary-properness check over an occupancy set (virtual robots included
/// by the caller). Returns an error description, or empty when proper.
std::string boundary_proper_violation(const std::set<LatticePoint>& occ, const Frame& f);

class Simulation {
  public:
    Simulation(const MovementPlan& plan, const DiscreteShape& ds, const Frame& f,
               const SimParams& params);

    SimResult run();

  private:
    struct Mover {
        int robot = -1;
        std::vector<LatticePoint> waypoints;  // last entry is the stop target
        size_t next_waypoint = 0;
        bool recycled = false;
        size_t merge_waypoint = 0;  // index of the merging point, if recycled
        double angle = 0.0;         // orbit angle about the pivot
        double heading = 0.0;       // raw-controller heading
        int no_advance_ticks = 0;
        std::vector<int> eligible;  // pivot candidates for the current mode
    };

    const MovementPlan& plan_;
    const DiscreteShape& ds_;
    Frame frame_;
    SimParams params_;
    double d_;

    std::vector<Robot> robots_;
    std::unordered_map<LatticePoint, int, LatticePointHash> occupancy_;  // stopped robots
    Phase phase_ = Phase::Warmup;
    long tick_ = 0;
    int epoch_ = 1;
    std::mt19937_64 rng_;
    std::normal_distribution<double> noise_{0.0, 1.0};

    SimResult result_;
    RibbonTree rt_;
    std::map<LatticePoint, std::pair<int, size_t>> ribbon_pos_;

    void emit(TraceKind kind, nlohmann::ordered_json payload);
    double measure(const Vec2& a, const Vec2& b);
    LatticePoint snap(const Vec2& p) const;

    std::optional<Vec2> localize(const Robot& v);
    void warmup();
    void gradient_sweeps();
    bool propagate_epoch_until(int robot_id, int target_epoch);

    std::vector<int> pivot_candidates(const Mover& m) const;
    bool fail_monitor(const std::string& name, const std::string& detail);
    bool run_monitors(const char* boundary);
    bool check_exterior_path(const Mover& m, const LatticePoint& mpoint, const LatticePoint& b);
    void record_clearance(const Vec2& mover_pos);
    bool run_epoch(const MovementPlan::Tuple& tup);
    bool mover_tick(Mover& m);
};

/// Convenience wrapper: build the world and run to completion.
SimResult simulate(const MovementPlan& plan, const DiscreteShape& ds, const Frame& f,
                   const SimParams& params);

}  // namespace hexswarm
