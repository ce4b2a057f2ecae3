// Exercises the C surface end to end: place -> plan -> verify -> simulate ->
// render, plus the error-status contract. argv[1] is the shape corpus dir.
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "hexswarm.h"
#include "json.hpp"

using json = nlohmann::json;

static int failures = 0;

#define CHECK(cond)                                                     \
    do {                                                                \
        if (!(cond)) {                                                  \
            std::printf("FAIL %s:%d: %s\n", __FILE__, __LINE__, #cond); \
            ++failures;                                                 \
        }                                                               \
    } while (0)

static std::string take(hxs_result* r) {
    std::string s = hxs_result_str(r);
    hxs_result_free(r);
    return s;
}

static std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int main(int argc, char** argv) {
    if (argc < 2) {
        std::printf("usage: %s <shapes-dir>\n", argv[0]);
        return 2;
    }
    const std::string shapes_dir = argv[1];
    const char* frame = R"({"r": 17.0, "safety": 1.1, "chirality": 1})";

    // Malformed input is an IO error with a message.
    {
        hxs_result* r = nullptr;
        CHECK(hxs_place("{not json", frame, &r) == HXS_IO_ERROR);
        CHECK(!take(r).empty());
        r = nullptr;
        CHECK(hxs_place(R"({"outer": []})", frame, &r) == HXS_IO_ERROR);
        take(r);
        r = nullptr;
        CHECK(hxs_verify(R"({"schema": 1})", &r) == HXS_IO_ERROR);
        take(r);
    }

    // Full pipeline on a corpus shape.
    std::string placement, plan;
    {
        std::string shape = slurp(shapes_dir + "/hexagon.json");
        CHECK(!shape.empty());
        hxs_result* r = nullptr;
        CHECK(hxs_place(shape.c_str(), frame, &r) == HXS_OK);
        placement = take(r);
        json pj = json::parse(placement);
        CHECK(pj.contains("pose"));
        CHECK(pj.at("shape").at("S").size() >= 20);

        r = nullptr;
        CHECK(hxs_plan(placement.c_str(), &r) == HXS_OK);
        plan = take(r);
        json plj = json::parse(plan);
        CHECK(plj.at("tuples").size() == 2 * plj.at("n").get<size_t>());

        r = nullptr;
        CHECK(hxs_verify(plan.c_str(), &r) == HXS_OK);
        json rep = json::parse(take(r));
        CHECK(rep.at("ok").get<bool>());
    }

    // Simulation yields a Meta header plus a monotone event stream.
    {
        hxs_result* r = nullptr;
        CHECK(hxs_simulate(plan.c_str(), R"({"seed": 5})", &r) == HXS_OK);
        std::string trace = take(r);
        std::istringstream in(trace);
        std::string line;
        CHECK(std::getline(in, line));
        json meta = json::parse(line);
        CHECK(meta.at("kind") == "Meta");
        CHECK(meta.at("completed").get<bool>());
        CHECK(meta.at("monitor_failures").get<int>() == 0);
        long prev = -1;
        size_t events = 0;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            json e = json::parse(line);
            CHECK(e.at("tick").get<long>() >= prev);
            prev = e.at("tick").get<long>();
            ++events;
        }
        CHECK(events > 0);

        // Rendering picks up the boundary snapshots.
        r = nullptr;
        CHECK(hxs_render(trace.c_str(), 4, &r) == HXS_OK);
        json svgs = json::parse(take(r));
        CHECK(svgs.at("svgs").size() > 0);
        std::string first = svgs.at("svgs").at(0).get<std::string>();
        CHECK(first.find("<svg") != std::string::npos);

        r = nullptr;
        CHECK(hxs_render("{\"kind\":\"EpochStart\"}\n", 1, &r) == HXS_IO_ERROR);
        take(r);
    }

    // Determinism across calls with the same seed.
    {
        hxs_result* a = nullptr;
        hxs_result* b = nullptr;
        CHECK(hxs_simulate(plan.c_str(), R"({"seed": 9, "sigma": 0.005})", &a) == HXS_OK);
        CHECK(hxs_simulate(plan.c_str(), R"({"seed": 9, "sigma": 0.005})", &b) == HXS_OK);
        CHECK(take(a) == take(b));
    }

    // A shape with no proper placement is a domain error with diagnostics.
    {
        std::string shape = slurp(shapes_dir + "/c_shape.json");
        CHECK(!shape.empty());
        hxs_result* r = nullptr;
        CHECK(hxs_place(shape.c_str(), frame, &r) == HXS_DOMAIN_ERROR);
        json j = json::parse(take(r));
        CHECK(j.at("error") == "NoProperPlacement");
        CHECK(j.at("violations").size() > 0);
    }

    // A corrupted plan fails verification with a domain error.
    {
        json plj = json::parse(plan);
        plj["tuples"][0][1] = json::array({0, 0});  // aim at the occupied origin
        hxs_result* r = nullptr;
        CHECK(hxs_verify(plj.dump().c_str(), &r) == HXS_DOMAIN_ERROR);
        json rep = json::parse(take(r));
        CHECK(!rep.at("ok").get<bool>());
    }

    if (failures == 0) std::printf("all C API checks passed\n");
    return failures == 0 ? 0 : 1;
}
