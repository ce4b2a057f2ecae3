#include "hexswarm/jsonio.hpp"

namespace hexswarm {

namespace {

Json point_json(const LatticePoint& p) { return Json::array({p.q, p.r}); }

LatticePoint point_from(const Json& j) {
    return {j.at(0).get<int>(), j.at(1).get<int>()};
}

Json points_json(const std::vector<LatticePoint>& pts) {
    Json arr = Json::array();
    for (const auto& p : pts) arr.push_back(point_json(p));
    return arr;
}

template <typename C>
Json point_set_json(const C& pts) {
    Json arr = Json::array();
    for (const auto& p : pts) arr.push_back(point_json(p));
    return arr;
}

}  // namespace

Json frame_to_json(const Frame& f) {
    return {{"r", f.r_robot}, {"safety", f.safety}, {"chirality", f.chirality}, {"d", f.d()}};
}

Frame frame_from_json(const Json& j) {
    Frame f;
    f.r_robot = j.at("r").get<double>();
    f.safety = j.at("safety").get<double>();
    f.chirality = j.at("chirality").get<int>();
    return f;
}

ShapeSpec shape_spec_from_json(const Json& j) {
    ShapeSpec spec;
    for (const auto& v : j.at("outer")) spec.outer.push_back({v.at(0), v.at(1)});
    if (j.contains("holes"))
        for (const auto& hole : j.at("holes")) {
            std::vector<Vec2> poly;
            for (const auto& v : hole) poly.push_back({v.at(0), v.at(1)});
            spec.holes.push_back(std::move(poly));
        }
    if (spec.outer.size() < 3) throw std::runtime_error("outer polygon needs >= 3 vertices");
    return spec;
}

Json shape_spec_to_json(const ShapeSpec& spec) {
    Json j;
    j["schema"] = 1;
    Json outer = Json::array();
    for (const auto& v : spec.outer) outer.push_back({v.x, v.y});
    j["outer"] = std::move(outer);
    Json holes = Json::array();
    for (const auto& hole : spec.holes) {
        Json poly = Json::array();
        for (const auto& v : hole) poly.push_back({v.x, v.y});
        holes.push_back(std::move(poly));
    }
    j["holes"] = std::move(holes);
    return j;
}

Json discrete_shape_to_json(const DiscreteShape& ds) {
    return {{"S", point_set_json(ds.S)},
            {"D", point_set_json(ds.D)},
            {"boundary", point_set_json(ds.boundary)}};
}

DiscreteShape discrete_shape_from_json(const Json& j, const Frame& f) {
    DiscreteShape ds;
    for (const auto& p : j.at("S")) ds.S.insert(point_from(p));
    for (const auto& p : j.at("D")) ds.D.insert(point_from(p));
    ds.boundary = compute_boundary(ds.S, f);
    return ds;
}

Json ribbon_tree_to_json(const RibbonTree& rt) {
    Json ribbons = Json::array();
    for (const auto& rib : rt.ribbons) {
        Json j;
        j["id"] = rib.id;
        j["gradient"] = rib.gradient;
        j["vertices"] = points_json(rib.vertices);
        j["cavity_count"] = rib.cavity_count;
        if (rib.parent_id)
            j["parent"] = *rib.parent_id;
        else
            j["parent"] = nullptr;
        if (rib.merging_point)
            j["merging_point"] = point_json(*rib.merging_point);
        else
            j["merging_point"] = nullptr;
        ribbons.push_back(std::move(j));
    }
    return {{"kind", rt.kind == RibbonTreeKind::Formation ? "formation" : "idle"},
            {"root", rt.root_id},
            {"ribbons", std::move(ribbons)}};
}

Json violations_to_json(const std::vector<Violation>& v) {
    Json arr = Json::array();
    for (const auto& viol : v) {
        arr.push_back({{"kind", violation_kind_name(viol.kind)},
                       {"witness", points_json(viol.witness)},
                       {"message", viol.message}});
    }
    return arr;
}

Json placement_to_json(const Pose& pose, const DiscreteShape& ds, const RibbonTree& rt,
                       const Frame& f) {
    Json j;
    j["schema"] = 1;
    j["frame"] = frame_to_json(f);
    j["pose"] = {{"theta", pose.theta}, {"tx", pose.tx}, {"ty", pose.ty}};
    j["shape"] = discrete_shape_to_json(ds);
    j["ribbons"] = ribbon_tree_to_json(rt);
    return j;
}

Json plan_to_json(const MovementPlan& plan, const DiscreteShape& ds, const Frame& f) {
    Json j;
    j["schema"] = 1;
    j["n"] = plan.N;
    j["frame"] = frame_to_json(f);
    j["shape"] = discrete_shape_to_json(ds);
    Json tuples = Json::array();
    for (const auto& t : plan.tuples)
        tuples.push_back(Json::array({point_json(t.a), point_json(t.b), t.k}));
    j["tuples"] = std::move(tuples);
    return j;
}

PlanFile plan_from_json(const Json& j) {
    PlanFile pf;
    pf.frame = frame_from_json(j.at("frame"));
    pf.ds = discrete_shape_from_json(j.at("shape"), pf.frame);
    pf.plan.N = j.at("n").get<size_t>();
    for (const auto& t : j.at("tuples")) {
        MovementPlan::Tuple tup;
        tup.a = point_from(t.at(0));
        tup.b = point_from(t.at(1));
        tup.k = t.at(2).get<int>();
        pf.plan.tuples.push_back(tup);
    }
    if (pf.plan.tuples.size() != 2 * pf.plan.N)
        throw std::runtime_error("plan does not hold 2N tuples");
    for (size_t k = 0; k < pf.plan.N; ++k) {
        pf.plan.s.push_back(pf.plan.tuples[k].a);
        pf.plan.t.push_back(pf.plan.tuples[k].b);
        pf.plan.s_r.push_back(pf.plan.tuples[pf.plan.N + k].a);
        pf.plan.t_r.push_back(pf.plan.tuples[pf.plan.N + k].b);
    }
    return pf;
}

Json report_to_json(const VerifyReport& r) {
    Json steps = Json::array();
    for (const auto& st : r.per_step) {
        Json j = {{"k", st.k},
                  {"start_occupied", st.start_occupied},
                  {"target_free", st.target_free},
                  {"lattice_path_found", st.lattice_path_found},
                  {"localizable", st.localizable}};
        if (!st.note.empty()) j["note"] = st.note;
        steps.push_back(std::move(j));
    }
    return {{"schema", 1},
            {"ok", r.ok},
            {"final_occupancy_matches", r.final_occupancy_matches},
            {"per_step", std::move(steps)}};
}

Json trace_event_to_json(const TraceEvent& e) {
    Json j;
    j["tick"] = e.tick;
    j["kind"] = trace_kind_name(e.kind);
    j["payload"] = e.payload;
    return j;
}

std::vector<LatticePoint> plan_initial_idle(const MovementPlan& plan) {
    std::set<LatticePoint> idle(plan.s.begin(), plan.s.end());
    return {idle.begin(), idle.end()};
}

}  // namespace hexswarm
