// Pipeline driver: place -> plan -> verify -> simulate -> render.
// Thin shell over the C API; all logic lives in the library.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "hexswarm.h"
#include "json.hpp"

namespace {

bool verbose() {
    const char* lvl = std::getenv("HEXSWARM_LOG");
    return lvl != nullptr && *lvl != '\0' && std::string(lvl) != "0";
}

void log(const std::string& msg) {
    if (verbose()) std::cerr << "hexswarm: " << msg << "\n";
}

int read_file(const std::string& path, std::string& out) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        std::cerr << "hexswarm: cannot read " << path << "\n";
        return 1;
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    out = ss.str();
    return 0;
}

int write_file(const std::string& path, const std::string& text) {
    if (path == "-") {
        std::cout << text;
        return 0;
    }
    std::filesystem::path p(path);
    if (p.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(p.parent_path(), ec);
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        std::cerr << "hexswarm: cannot write " << path << "\n";
        return 1;
    }
    out << text;
    return out ? 0 : 1;
}

// Run a C-API call, write its output, propagate the status as exit code.
int emit_result(hxs_status st, hxs_result* res, const std::string& out_path) {
    std::string text = hxs_result_str(res);
    hxs_result_free(res);
    if (st == HXS_OK || st == HXS_DOMAIN_ERROR || st == HXS_MONITOR_ABORT) {
        if (!text.empty() && write_file(out_path, text) != 0) return 1;
    }
    if (st != HXS_OK) std::cerr << "hexswarm: command failed with status " << st << "\n";
    return static_cast<int>(st);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"add-subtract hexagonal-lattice shape formation pipeline"};
    app.require_subcommand(1);

    std::string shape_path, in_path, out_path = "-", out_dir = "out";
    double r_robot = 17.0, safety = 1.1, dtheta = 3.14159265358979323846 / 90.0, sigma = 0.0;
    int chirality = 1, every = 1;
    uint64_t seed = 0;
    bool strict = true;

    auto* place = app.add_subcommand("place", "discretize a shape and find a proper placement");
    place->add_option("--shape", shape_path, "shape spec JSON")->required();
    place->add_option("--out", out_path, "placement JSON output");
    place->add_option("--r", r_robot, "robot radius (length units)");
    place->add_option("--safety", safety, "lattice-constant safety factor");
    place->add_option("--chirality", chirality, "+1 or -1");

    auto* plan = app.add_subcommand("plan", "movement plan from a placement");
    plan->add_option("placement", in_path, "placement JSON")->required();
    plan->add_option("--out", out_path, "plan JSON output");

    auto* verify = app.add_subcommand("verify", "symbolic replay check of a plan");
    verify->add_option("plan", in_path, "plan JSON")->required();
    verify->add_option("--out", out_path, "report JSON output");

    auto* simulate = app.add_subcommand("simulate", "geometric execution of a plan");
    simulate->add_option("plan", in_path, "plan JSON")->required();
    simulate->add_option("--out", out_path, "trace JSONL output");
    simulate->add_option("--dtheta", dtheta, "arc step (radians)");
    simulate->add_option("--sigma", sigma, "range noise stddev (d-units)");
    simulate->add_option("--seed", seed, "RNG seed");
    simulate->add_flag("--strict,!--no-strict", strict, "abort on monitor failure");

    auto* render = app.add_subcommand("render", "SVG snapshots from a trace");
    render->add_option("trace", in_path, "trace JSONL")->required();
    render->add_option("--out", out_dir, "output directory");
    render->add_option("--every", every, "render every k-th sub-epoch");

    CLI11_PARSE(app, argc, argv);

    hxs_result* res = nullptr;
    if (place->parsed()) {
        std::string shape;
        if (read_file(shape_path, shape) != 0) return 1;
        nlohmann::json frame = {{"r", r_robot}, {"safety", safety}, {"chirality", chirality}};
        log("searching placements for " + shape_path);
        hxs_status st = hxs_place(shape.c_str(), frame.dump().c_str(), &res);
        return emit_result(st, res, out_path);
    }
    if (plan->parsed()) {
        std::string placement;
        if (read_file(in_path, placement) != 0) return 1;
        hxs_status st = hxs_plan(placement.c_str(), &res);
        return emit_result(st, res, out_path);
    }
    if (verify->parsed()) {
        std::string plan_text;
        if (read_file(in_path, plan_text) != 0) return 1;
        hxs_status st = hxs_verify(plan_text.c_str(), &res);
        return emit_result(st, res, out_path);
    }
    if (simulate->parsed()) {
        std::string plan_text;
        if (read_file(in_path, plan_text) != 0) return 1;
        nlohmann::json params = {{"dtheta", dtheta},
                                 {"sigma", sigma},
                                 {"seed", seed},
                                 {"strict", strict}};
        log("simulating " + in_path);
        hxs_status st = hxs_simulate(plan_text.c_str(), params.dump().c_str(), &res);
        return emit_result(st, res, out_path);
    }
    if (render->parsed()) {
        std::string trace;
        if (read_file(in_path, trace) != 0) return 1;
        hxs_status st = hxs_render(trace.c_str(), every, &res);
        if (st != HXS_OK) {
            std::cerr << "hexswarm: " << hxs_result_str(res) << "\n";
            hxs_result_free(res);
            return static_cast<int>(st);
        }
        nlohmann::json j = nlohmann::json::parse(hxs_result_str(res));
        hxs_result_free(res);
        int idx = 0;
        for (const auto& svg : j.at("svgs")) {
            char name[32];
            std::snprintf(name, sizeof(name), "snapshot_%05d.svg", idx++);
            if (write_file((std::filesystem::path(out_dir) / name).string(),
                           svg.get<std::string>()) != 0)
                return 1;
        }
        log("wrote " + std::to_string(idx) + " snapshots to " + out_dir);
        return 0;
    }
    return 1;
}
