#include "hexswarm.h"

#include <sstream>
#include <string>

#include "hexswarm/efp.hpp"
#include "hexswarm/jsonio.hpp"
#include "hexswarm/svg.hpp"

struct hxs_result {
    std::string text;
};

namespace {

using namespace hexswarm;

hxs_status finish(hxs_result** out, hxs_status st, std::string text) {
    *out = new hxs_result{std::move(text)};
    return st;
}

hxs_status io_error(hxs_result** out, const std::string& what) {
    return finish(out, HXS_IO_ERROR, what);
}

Json parse(const char* text) { return Json::parse(text); }

SimParams sim_params_from_json(const Json& j) {
    SimParams p;
    if (j.contains("dtheta")) p.dtheta = j.at("dtheta").get<double>();
    if (j.contains("sigma")) p.sigma = j.at("sigma").get<double>();
    if (j.contains("seed")) p.seed = j.at("seed").get<uint64_t>();
    if (j.contains("strict")) p.strict = j.at("strict").get<bool>();
    if (j.contains("raw_controller")) p.raw_controller = j.at("raw_controller").get<bool>();
    return p;
}

}  // namespace

extern "C" {

const char* hxs_result_str(const hxs_result* r) { return r ? r->text.c_str() : ""; }

void hxs_result_free(hxs_result* r) { delete r; }

hxs_status hxs_place(const char* shape_json, const char* frame_json, hxs_result** out) {
    Frame f;
    ShapeSpec spec;
    try {
        spec = shape_spec_from_json(parse(shape_json));
        f = frame_from_json(parse(frame_json));
    } catch (const std::exception& e) {
        return io_error(out, e.what());
    }
    try {
        PlacementResult pr = find_placement(spec, f, SearchParams{});
        RibbonTree rt = ribbonize(pr.shape.S, pr.shape.D, f);
        return finish(out, HXS_OK, placement_to_json(pr.pose, pr.shape, rt, f).dump(2));
    } catch (const NoProperPlacement& e) {
        Json j = {{"schema", 1},
                  {"error", "NoProperPlacement"},
                  {"best_cardinality", e.best_cardinality},
                  {"violations", violations_to_json(e.best_violations)}};
        return finish(out, HXS_DOMAIN_ERROR, j.dump(2));
    } catch (const std::exception& e) {
        return finish(out, HXS_DOMAIN_ERROR, e.what());
    }
}

hxs_status hxs_plan(const char* placement_json, hxs_result** out) {
    Frame f;
    DiscreteShape ds;
    try {
        Json j = parse(placement_json);
        f = frame_from_json(j.at("frame"));
        ds = discrete_shape_from_json(j.at("shape"), f);
    } catch (const std::exception& e) {
        return io_error(out, e.what());
    }
    try {
        RibbonTree rt = ribbonize(ds.S, ds.D, f);
        MovementPlan plan = make_plan(rt, ds, f);
        return finish(out, HXS_OK, plan_to_json(plan, ds, f).dump(2));
    } catch (const std::exception& e) {
        return finish(out, HXS_DOMAIN_ERROR, e.what());
    }
}

hxs_status hxs_verify(const char* plan_json, hxs_result** out) {
    PlanFile pf;
    try {
        pf = plan_from_json(parse(plan_json));
    } catch (const std::exception& e) {
        return io_error(out, e.what());
    }
    try {
        VerifyReport report =
            verify_plan(pf.plan, pf.ds, plan_initial_idle(pf.plan), pf.frame);
        return finish(out, report.ok ? HXS_OK : HXS_DOMAIN_ERROR, report_to_json(report).dump(2));
    } catch (const std::exception& e) {
        return finish(out, HXS_DOMAIN_ERROR, e.what());
    }
}

hxs_status hxs_simulate(const char* plan_json, const char* params_json, hxs_result** out) {
    PlanFile pf;
    SimParams params;
    try {
        pf = plan_from_json(parse(plan_json));
        params = sim_params_from_json(parse(params_json));
    } catch (const std::exception& e) {
        return io_error(out, e.what());
    }
    try {
        SimResult res = simulate(pf.plan, pf.ds, pf.frame, params);
        std::ostringstream trace;
        Json meta = {{"schema", 1},
                     {"kind", "Meta"},
                     {"frame", frame_to_json(pf.frame)},
                     {"shape", discrete_shape_to_json(pf.ds)},
                     {"completed", res.completed},
                     {"error", res.error},
                     {"ticks", res.ticks},
                     {"monitor_failures", res.monitor_failures},
                     {"min_clearance", res.min_clearance}};
        trace << meta.dump() << "\n";
        for (const auto& e : res.trace) trace << trace_event_to_json(e).dump() << "\n";
        if (res.completed) return finish(out, HXS_OK, trace.str());
        bool monitor = res.monitor_failures > 0;
        return finish(out, monitor ? HXS_MONITOR_ABORT : HXS_DOMAIN_ERROR, trace.str());
    } catch (const std::exception& e) {
        return finish(out, HXS_DOMAIN_ERROR, e.what());
    }
}

hxs_status hxs_render(const char* trace_jsonl, int every, hxs_result** out) {
    if (every < 1) every = 1;
    try {
        std::istringstream in(trace_jsonl);
        std::string line;
        Frame f;
        DiscreteShape ds;
        bool have_meta = false;
        Json svgs = Json::array();
        long boundary_index = 0;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            Json j = Json::parse(line);
            if (j.value("kind", "") == "Meta") {
                f = frame_from_json(j.at("frame"));
                ds = discrete_shape_from_json(j.at("shape"), f);
                have_meta = true;
                continue;
            }
            if (!have_meta) return io_error(out, "trace lacks a Meta header line");
            if (j.value("kind", "") != "SubEpochBoundary") continue;
            if (boundary_index++ % every != 0) continue;
            std::vector<RenderRobot> robots;
            for (const auto& r : j.at("payload").at("robots"))
                robots.push_back({r.at(0).get<int>(), r.at(1).get<double>(),
                                  r.at(2).get<double>(), r.at(3).get<int>(),
                                  r.at(4).get<int>()});
            svgs.push_back(render_svg(robots, ds, f));
        }
        if (!have_meta) return io_error(out, "trace lacks a Meta header line");
        Json j = {{"schema", 1}, {"svgs", std::move(svgs)}};
        return finish(out, HXS_OK, j.dump());
    } catch (const std::exception& e) {
        return io_error(out, e.what());
    }
}

}  // extern "C"
