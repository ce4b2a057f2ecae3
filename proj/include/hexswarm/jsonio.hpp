#pragma once

#include <string>

#include "hexswarm/planner.hpp"
#include "hexswarm/swarmsim.hpp"

#include "json.hpp"

namespace hexswarm {

using Json = nlohmann::ordered_json;

Json frame_to_json(const Frame& f);
Frame frame_from_json(const Json& j);

ShapeSpec shape_spec_from_json(const Json& j);
Json shape_spec_to_json(const ShapeSpec& spec);

Json discrete_shape_to_json(const DiscreteShape& ds);
DiscreteShape discrete_shape_from_json(const Json& j, const Frame& f);

Json ribbon_tree_to_json(const RibbonTree& rt);

Json violations_to_json(const std::vector<Violation>& v);

Json placement_to_json(const Pose& pose, const DiscreteShape& ds, const RibbonTree& rt,
                       const Frame& f);

Json plan_to_json(const MovementPlan& plan, const DiscreteShape& ds, const Frame& f);
struct PlanFile {
    MovementPlan plan;
    DiscreteShape ds;
    Frame frame;
};
PlanFile plan_from_json(const Json& j);

Json report_to_json(const VerifyReport& r);

Json trace_event_to_json(const TraceEvent& e);

/// Initial idle occupancy implied by a plan (the activation points).
std::vector<LatticePoint> plan_initial_idle(const MovementPlan& plan);

}  // namespace hexswarm
