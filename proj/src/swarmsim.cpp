#include "hexswarm/swarmsim.hpp"

#include <algorithm>
#include <cmath>

#include "hexswarm/efp.hpp"

namespace hexswarm {

const char* trace_kind_name(TraceKind k) {
    switch (k) {
        case TraceKind::EpochStart: return "EpochStart";
        case TraceKind::SubEpochBoundary: return "SubEpochBoundary";
        case TraceKind::PivotSwitch: return "PivotSwitch";
        case TraceKind::Stopped: return "Stopped";
        case TraceKind::LocalizationFix: return "LocalizationFix";
        case TraceKind::MonitorPass: return "MonitorPass";
        case TraceKind::MonitorFail: return "MonitorFail";
        case TraceKind::Collision: return "Collision";
    }
    return "Unknown";
}

Vec2 rotate_about(const Vec2& pos, const Vec2& center, double ang) {
    double c = std::cos(ang), s = std::sin(ang);
    Vec2 v = pos - center;
    return {center.x + c * v.x - s * v.y, center.y + s * v.x + c * v.y};
}

namespace {

double residual_sum(const Vec2& c, const std::vector<std::pair<Vec2, double>>& anchors) {
    double sum = 0.0;
    for (const auto& [p, r] : anchors) sum += std::abs(dist(c, p) - r);
    return sum;
}

}  // namespace

std::optional<Vec2> trilaterate(const std::vector<std::pair<Vec2, double>>& anchors,
                                double scale) {
    if (anchors.size() < 3) return std::nullopt;
    // All anchors collinear: no unique fix.
    bool noncollinear = false;
    const Vec2& p0 = anchors[0].first;
    const Vec2& p1 = anchors[1].first;
    for (size_t i = 2; i < anchors.size() && !noncollinear; ++i) {
        const Vec2& pi = anchors[i].first;
        double area2 = (p1.x - p0.x) * (pi.y - p0.y) - (pi.x - p0.x) * (p1.y - p0.y);
        if (std::abs(area2) > 2e-9 * scale * scale) noncollinear = true;
    }
    if (!noncollinear) return std::nullopt;
    // Closed-form intersection of the first two range circles.
    double d01 = dist(p0, p1);
    if (d01 < 1e-12 * scale) return std::nullopt;
    Vec2 ex{(p1.x - p0.x) / d01, (p1.y - p0.y) / d01};
    Vec2 ey{-ex.y, ex.x};
    double r0 = anchors[0].second, r1 = anchors[1].second;
    double x = (d01 * d01 + r0 * r0 - r1 * r1) / (2.0 * d01);
    double y2 = r0 * r0 - x * x;
    std::vector<Vec2> cands;
    if (y2 > 0.0) {
        double y = std::sqrt(y2);
        cands.push_back({p0.x + ex.x * x + ey.x * y, p0.y + ex.y * x + ey.y * y});
        cands.push_back({p0.x + ex.x * x - ey.x * y, p0.y + ex.y * x - ey.y * y});
    } else {
        cands.push_back({p0.x + ex.x * x, p0.y + ex.y * x});
    }
    Vec2 best = cands[0];
    double best_res = residual_sum(best, anchors);
    for (size_t i = 1; i < cands.size(); ++i) {
        double res = residual_sum(cands[i], anchors);
        if (res < best_res) {
            best = cands[i];
            best_res = res;
        }
    }
    // Bounded pattern-search refinement on the absolute-residual objective.
    double step = 0.1 * scale;
    for (int iter = 0; iter < 50; ++iter) {
        const Vec2 moves[4] = {{step, 0.0}, {-step, 0.0}, {0.0, step}, {0.0, -step}};
        bool improved = false;
        for (const auto& mv : moves) {
            Vec2 c = best + mv;
            double res = residual_sum(c, anchors);
            if (res < best_res) {
                best = c;
                best_res = res;
                improved = true;
            }
        }
        if (!improved) step *= 0.5;
    }
    return best;
}

std::string boundary_proper_violation(const std::set<LatticePoint>& occ, const Frame& f) {
    std::set<LatticePoint> boundary;
    for (const auto& o : occ)
        for (const auto& n : neighbors(o, f))
            if (!occ.count(n)) {
                boundary.insert(o);
                break;
            }
    static const std::array<LatticePoint, 3> half_units{{{1, 0}, {0, 1}, {-1, 1}}};
    auto name = [](const LatticePoint& p) {
        return "(" + std::to_string(p.q) + "," + std::to_string(p.r) + ")";
    };
    for (const auto& x : boundary) {
        for (size_t i = 0; i < 3; ++i) {
            LatticePoint w = sqrt3_offsets()[i];
            LatticePoint y = x + w;
            if (!boundary.count(y)) continue;
            auto mids = sqrt3_midpoints(w);
            int unocc = (occ.count(x + mids[0]) ? 0 : 1) + (occ.count(x + mids[1]) ? 0 : 1);
            if (unocc > 1)
                return "sqrt3 boundary pair " + name(x) + " " + name(y) +
                       " with two unoccupied common neighbors";
        }
        for (const auto& u : half_units) {
            LatticePoint y = x + u + u;
            if (boundary.count(y) && !occ.count(x + u))
                return "2d boundary pair " + name(x) + " " + name(y) +
                       " with unoccupied midpoint";
        }
    }
    return {};
}

Simulation::Simulation(const MovementPlan& plan, const DiscreteShape& ds, const Frame& f,
                       const SimParams& params)
    : plan_(plan), ds_(ds), frame_(f), params_(params), d_(f.d()), rng_(params.seed) {
    rt_ = ribbonize(ds.S, ds.D, frame_);
    for (const auto& rib : rt_.ribbons)
        for (size_t i = 0; i < rib.vertices.size(); ++i)
            ribbon_pos_[rib.vertices[i]] = {rib.id, i};
    auto seeds = seed_positions(frame_);
    for (const auto& p : seeds) {
        Robot r;
        r.id = static_cast<int>(robots_.size());
        r.pos = frame_.to_cartesian(p);
        r.is_seed = true;
        occupancy_[p] = r.id;
        robots_.push_back(r);
    }
    std::set<LatticePoint> idle(plan.s.begin(), plan.s.end());
    for (const auto& p : idle) {
        Robot r;
        r.id = static_cast<int>(robots_.size());
        r.pos = frame_.to_cartesian(p);
        occupancy_[p] = r.id;
        robots_.push_back(r);
    }
    if (robots_.size() != plan.N + seeds.size())
        throw std::runtime_error("plan activation sequence does not hold N distinct idle points");
}

void Simulation::emit(TraceKind kind, nlohmann::ordered_json payload) {
    result_.trace.push_back({tick_, kind, std::move(payload)});
}

double Simulation::measure(const Vec2& a, const Vec2& b) {
    double d = dist(a, b);
    if (params_.sigma > 0.0) d += params_.sigma * d_ * noise_(rng_);
    return d;
}

LatticePoint Simulation::snap(const Vec2& p) const {
    int r = static_cast<int>(std::lround(p.y / (d_ * std::sqrt(3.0) / 2.0)));
    int q = static_cast<int>(std::lround(p.x / d_ - 0.5 * r));
    return {q, r};
}

std::optional<Vec2> Simulation::localize(const Robot& v) {
    if (v.is_seed) return v.pos;
    const double l = params_.comm_range_factor * d_;
    std::vector<std::pair<Vec2, double>> anchors;
    for (const auto& w : robots_) {
        if (w.id == v.id || w.state != RobotState::Stop || !w.believed) continue;
        if (dist(v.pos, w.pos) > l) continue;
        anchors.push_back({*w.believed, measure(v.pos, w.pos)});
    }
    return trilaterate(anchors, d_);
}

void Simulation::gradient_sweeps() {
    for (auto& r : robots_) r.gradient = -1;
    robots_[0].gradient = 0;  // the root seed
    size_t cap = 2 * robots_.size() + 4;
    for (size_t sweep = 0; sweep < cap; ++sweep) {
        bool changed = false;
        for (auto& [p, id] : occupancy_) {
            Robot& v = robots_[static_cast<size_t>(id)];
            if (id == 0) continue;
            int best = -1;
            for (const auto& n : neighbors(p, frame_)) {
                auto it = occupancy_.find(n);
                if (it == occupancy_.end()) continue;
                int g = robots_[static_cast<size_t>(it->second)].gradient;
                if (g >= 0 && (best < 0 || g < best)) best = g;
            }
            if (best >= 0 && v.gradient != best + 1) {
                v.gradient = best + 1;
                changed = true;
            }
        }
        if (!changed) break;
    }
}

void Simulation::warmup() {
    for (auto& r : robots_)
        if (r.is_seed) r.believed = r.pos;
    size_t cap = 10 * robots_.size() + 10;
    for (size_t sweep = 0; sweep < cap; ++sweep) {
        ++tick_;
        bool changed = false;
        for (auto& r : robots_) {
            if (r.believed) continue;
            auto fix = localize(r);
            if (fix) {
                r.believed = fix;
                changed = true;
            }
        }
        if (!changed) break;
    }
    gradient_sweeps();
    for (const auto& r : robots_) {
        if (!r.believed) throw std::runtime_error("warmup: robot failed to localize");
        if (r.gradient < 0) throw std::runtime_error("warmup: robot has no gradient");
    }
    phase_ = Phase::Additive;
}

bool Simulation::propagate_epoch_until(int robot_id, int target_epoch) {
    size_t cap = 20 * robots_.size() + 20;
    size_t steps = 0;
    while (robots_[static_cast<size_t>(robot_id)].epoch < target_epoch) {
        if (++steps > cap) {
            result_.error = "epoch propagation did not reach the next mover";
            return false;
        }
        ++tick_;
        std::vector<int> next(robots_.size());
        for (const auto& r : robots_) next[static_cast<size_t>(r.id)] = r.epoch;
        static const std::vector<LatticePoint> comm_offsets = [] {
            std::vector<LatticePoint> v;
            for (int q = -2; q <= 2; ++q)
                for (int r = -2; r <= 2; ++r)
                    if (norm2({q, r}) >= 1 && norm2({q, r}) <= 4) v.push_back({q, r});
            return v;
        }();
        for (const auto& [p, id] : occupancy_) {
            int best = robots_[static_cast<size_t>(id)].epoch;
            for (const auto& off : comm_offsets) {
                auto it = occupancy_.find(p + off);
                if (it != occupancy_.end())
                    best = std::max(best, robots_[static_cast<size_t>(it->second)].epoch);
            }
            next[static_cast<size_t>(id)] = best;
        }
        for (auto& r : robots_)
            if (r.state == RobotState::Stop) r.epoch = next[static_cast<size_t>(r.id)];
    }
    return true;
}

bool Simulation::fail_monitor(const std::string& name, const std::string& detail) {
    ++result_.monitor_failures;
    emit(TraceKind::MonitorFail, {{"name", name}, {"epoch", epoch_}, {"detail", detail}});
    if (params_.strict) {
        result_.error = "monitor " + name + " failed: " + detail;
        return false;
    }
    return true;
}

bool Simulation::run_monitors(const char* boundary) {
    std::set<LatticePoint> occ;
    for (const auto& [p, id] : occupancy_) occ.insert(p);
    std::set<LatticePoint> ext = occ;
    if (phase_ == Phase::Subtractive) ext.insert(ds_.S.begin(), ds_.S.end());

    std::string bviol = boundary_proper_violation(ext, frame_);
    if (bviol.empty())
        emit(TraceKind::MonitorPass, {{"name", "boundary_proper"}, {"epoch", epoch_}});
    else if (!fail_monitor("boundary_proper", bviol))
        return false;

    EfpCycle cyc = efp_cycle(ext, frame_);
    if (cyc.ok)
        emit(TraceKind::MonitorPass, {{"name", "efp_cycle"}, {"epoch", epoch_}});
    else if (!fail_monitor("efp_cycle", cyc.error))
        return false;

    int movers = 0;
    for (const auto& r : robots_)
        if (r.state != RobotState::Stop) ++movers;
    if (movers <= 1)
        emit(TraceKind::MonitorPass, {{"name", "one_mover"}, {"epoch", epoch_}});
    else if (!fail_monitor("one_mover", std::to_string(movers) + " movers"))
        return false;

    nlohmann::ordered_json snapshot = nlohmann::ordered_json::array();
    for (const auto& r : robots_) {
        snapshot.push_back({r.id, r.pos.x, r.pos.y, static_cast<int>(r.state), r.gradient});
    }
    emit(TraceKind::SubEpochBoundary,
         {{"boundary", boundary}, {"epoch", epoch_}, {"robots", std::move(snapshot)}});
    return true;
}

bool Simulation::check_exterior_path(const Mover&, const LatticePoint& mpoint,
                                     const LatticePoint& b) {
    std::set<LatticePoint> occ;
    for (const auto& [p, id] : occupancy_) occ.insert(p);
    std::set<LatticePoint> ext = occ;
    ext.insert(ds_.S.begin(), ds_.S.end());
    EfpCycle cyc = efp_cycle(ext, frame_);
    if (!cyc.ok) return fail_monitor("exterior_virtual", cyc.error);
    std::vector<LatticePoint> walk = efp_walk(cyc, mpoint, b);
    if (walk.empty())
        return fail_monitor("exterior_virtual", "merging point does not reach the target");
    for (size_t i = 1; i < walk.size(); ++i) {
        for (const auto& n : neighbors(walk[i], frame_)) {
            if (ds_.S.count(n) && !occ.count(n))
                return fail_monitor("exterior_virtual",
                                    "exterior path point contributed by a virtual robot");
        }
    }
    emit(TraceKind::MonitorPass, {{"name", "exterior_virtual"}, {"epoch", epoch_}});
    return true;
}

void Simulation::record_clearance(const Vec2& mover_pos) {
    double min2 = 1e300;
    int closest = -1;
    for (const auto& r : robots_) {
        if (r.state != RobotState::Stop) continue;
        double dx = mover_pos.x - r.pos.x, dy = mover_pos.y - r.pos.y;
        double c2 = dx * dx + dy * dy;
        if (c2 < min2) {
            min2 = c2;
            closest = r.id;
        }
    }
    if (closest < 0) return;
    double c = std::sqrt(min2);
    result_.min_clearance = std::min(result_.min_clearance, c);
    const double limit = 2.0 * frame_.r_robot - 1e-6 * d_;
    if (c < limit) {
        ++result_.monitor_failures;
        emit(TraceKind::Collision, {{"other", closest}, {"dist", c}});
        if (params_.strict && result_.error.empty())
            result_.error = "clearance below 2r against robot " + std::to_string(closest);
    }
}

std::vector<int> Simulation::pivot_candidates(const Mover& m) const {
    const Robot& v = robots_[static_cast<size_t>(m.robot)];
    std::vector<int> out;
    for (const auto& r : robots_) {
        if (r.id == m.robot || r.state != RobotState::Stop) continue;
        if (v.state == RobotState::Ribbon && r.gradient != v.gradient - 1) continue;
        out.push_back(r.id);
    }
    return out;
}

bool Simulation::mover_tick(Mover& m) {
    Robot& v = robots_[static_cast<size_t>(m.robot)];
    ++tick_;

    const LatticePoint wp = m.waypoints[m.next_waypoint];
    Vec2 wpc = frame_.to_cartesian(wp);
    const double stop_radius = params_.stop_tol * d_;
    // Trilateration matters near waypoints (stop decisions and the required
    // fixes); skip the solver while cruising between them.
    const double loc_radius = 2.0 * stop_radius + 3.0 * params_.sigma * d_;
    v.believed = dist(v.pos, wpc) < loc_radius ? localize(v) : std::nullopt;
    if (dist(v.pos, wpc) < stop_radius) {
        if (!v.believed) {
            return fail_monitor("localization_fix",
                                "no fix while passing a required waypoint");
        }
    }
    if (v.believed && dist(*v.believed, wpc) < stop_radius) {
        emit(TraceKind::LocalizationFix,
             {{"robot", m.robot},
              {"waypoint", {wp.q, wp.r}},
              {"believed", {v.believed->x, v.believed->y}}});
        if (m.next_waypoint + 1 == m.waypoints.size()) {
            v.pos = wpc;
            v.believed = wpc;
            v.state = RobotState::Stop;
            occupancy_[wp] = m.robot;
            emit(TraceKind::Stopped, {{"k", epoch_}, {"robot", m.robot}, {"at", {wp.q, wp.r}}});
            return true;
        }
        if (m.recycled && m.next_waypoint == m.merge_waypoint) {
            // Past the merging point: the robot has left S and follows the
            // swarm edge without the gradient restriction.
            v.state = RobotState::Edge;
            m.eligible = pivot_candidates(m);
        }
        ++m.next_waypoint;
    }

    if (params_.raw_controller) {
        // Turn toward the swarm when too far from the nearest robot, away
        // when too close; advance a fixed arc length along the heading.
        double best = 1e300;
        for (int id : m.eligible)
            best = std::min(best, dist(v.pos, robots_[static_cast<size_t>(id)].pos));
        double sign = frame_.chirality >= 0 ? 1.0 : -1.0;
        m.heading += (best > d_ ? params_.dtheta : -params_.dtheta) * sign;
        v.pos = v.pos + Vec2{std::cos(m.heading), std::sin(m.heading)} * (d_ * params_.dtheta);
        record_clearance(v.pos);
        return true;
    }

    const double sign = frame_.chirality >= 0 ? -1.0 : 1.0;
    const Robot& pivot = robots_[static_cast<size_t>(v.pivot)];
    double next_angle = m.angle + sign * params_.dtheta;
    Vec2 candidate{pivot.pos.x + d_ * std::cos(next_angle), pivot.pos.y + d_ * std::sin(next_angle)};
    // Switch pivots instead of advancing if the step would close within d of
    // another eligible robot.
    int threat = -1;
    double threat2 = 1e300;
    const double limit2 = d_ * (1.0 - 1e-9) * d_ * (1.0 - 1e-9);
    for (int id : m.eligible) {
        if (id == v.pivot) continue;
        const Vec2& p = robots_[static_cast<size_t>(id)].pos;
        double dx = candidate.x - p.x, dy = candidate.y - p.y;
        double c2 = dx * dx + dy * dy;
        if (c2 < limit2 && c2 < threat2) {
            threat = id;
            threat2 = c2;
        }
    }
    if (threat >= 0) {
        emit(TraceKind::PivotSwitch, {{"robot", m.robot}, {"from", v.pivot}, {"to", threat}});
        v.pivot = threat;
        const Robot& np = robots_[static_cast<size_t>(threat)];
        m.angle = std::atan2(v.pos.y - np.pos.y, v.pos.x - np.pos.x);
        if (++m.no_advance_ticks > static_cast<int>(std::ceil(6.0 / params_.dtheta))) {
            result_.error = "mover stuck: no advance for 6/dtheta ticks";
            return false;
        }
        return true;
    }
    m.angle = next_angle;
    v.pos = candidate;
    m.no_advance_ticks = 0;
    record_clearance(v.pos);
    return true;
}

bool Simulation::run_epoch(const MovementPlan::Tuple& tup) {
    auto ita = occupancy_.find(tup.a);
    if (ita == occupancy_.end()) {
        result_.error = "epoch " + std::to_string(tup.k) + ": start position unoccupied";
        return false;
    }
    int rid = ita->second;
    if (!propagate_epoch_until(rid, tup.k)) return false;
    epoch_ = tup.k;
    Robot& v = robots_[static_cast<size_t>(rid)];

    if (tup.a == tup.b) {
        // Stationary reactivation: the robot takes the epoch without moving.
        emit(TraceKind::EpochStart,
             {{"k", tup.k}, {"robot", rid}, {"a", {tup.a.q, tup.a.r}}, {"b", {tup.b.q, tup.b.r}}});
        emit(TraceKind::Stopped, {{"k", tup.k}, {"robot", rid}, {"at", {tup.b.q, tup.b.r}}});
        v.epoch = tup.k + 1;
        return run_monitors("n+");
    }

    Mover m;
    m.robot = rid;
    bool additive = static_cast<size_t>(tup.k) <= plan_.N;
    if (additive) {
        v.state = RobotState::Edge;
        m.waypoints = {tup.b};
    } else if (ds_.S.count(tup.b)) {
        v.state = RobotState::Ribbon;
        m.waypoints = {tup.b};
    } else {
        v.state = RobotState::Ribbon;
        m.recycled = true;
        const auto& [rib_id, pos] = ribbon_pos_.at(tup.a);
        const Ribbon& rib = rt_.ribbon(rib_id);
        if (pos != 0) m.waypoints.push_back(rib.vertices.front());
        m.waypoints.push_back(rib.merging_point.value());
        m.merge_waypoint = m.waypoints.size() - 1;
        m.waypoints.push_back(tup.b);
    }
    occupancy_.erase(ita);

    m.eligible = pivot_candidates(m);
    int best = -1;
    double best_dist = 1e300;
    for (int id : m.eligible) {
        double c = dist(v.pos, robots_[static_cast<size_t>(id)].pos);
        if (c < best_dist - 1e-12 * d_) {
            best = id;
            best_dist = c;
        }
    }
    if (best < 0) {
        result_.error = "epoch " + std::to_string(tup.k) + ": no pivot available";
        return false;
    }
    v.pivot = best;
    const Robot& pv = robots_[static_cast<size_t>(best)];
    m.angle = std::atan2(v.pos.y - pv.pos.y, v.pos.x - pv.pos.x);
    m.heading = m.angle + (frame_.chirality >= 0 ? -1.0 : 1.0) * std::numbers::pi / 2.0;

    emit(TraceKind::EpochStart,
         {{"k", tup.k}, {"robot", rid}, {"a", {tup.a.q, tup.a.r}}, {"b", {tup.b.q, tup.b.r}}});
    if (!run_monitors("n-")) return false;
    if (m.recycled) {
        const auto& [rib_id, pos] = ribbon_pos_.at(tup.a);
        if (!check_exterior_path(m, rt_.ribbon(rib_id).merging_point.value(), tup.b)) return false;
    }

    const long cap = 2000000;
    long start_tick = tick_;
    while (v.state != RobotState::Stop) {
        if (tick_ - start_tick > cap) {
            result_.error = "epoch " + std::to_string(tup.k) + ": tick budget exhausted";
            return false;
        }
        if (!mover_tick(m)) return false;
        if (params_.strict && !result_.error.empty()) return false;
    }
    v.epoch = tup.k + 1;
    gradient_sweeps();
    return run_monitors("n+");
}

SimResult Simulation::run() {
    try {
        warmup();
    } catch (const std::exception& e) {
        result_.error = e.what();
        return result_;
    }
    auto snapshot_occ = [&] {
        std::set<LatticePoint> occ;
        for (const auto& [p, id] : occupancy_) occ.insert(p);
        result_.epoch_occupancy.push_back(std::move(occ));
    };
    if (!run_monitors("warmup")) {
        result_.ticks = tick_;
        return result_;
    }
    snapshot_occ();
    for (const auto& tup : plan_.tuples) {
        phase_ = static_cast<size_t>(tup.k) <= plan_.N ? Phase::Additive : Phase::Subtractive;
        if (!run_epoch(tup)) {
            result_.ticks = tick_;
            return result_;
        }
        snapshot_occ();
    }
    phase_ = Phase::Done;
    result_.completed = true;
    result_.ticks = tick_;
    for (const auto& [p, id] : occupancy_)
        if (classify_halfplane(p, frame_) == HalfPlaneId::Formation) result_.final_h1.insert(p);
    return result_;
}

SimResult simulate(const MovementPlan& plan, const DiscreteShape& ds, const Frame& f,
                   const SimParams& params) {
    Simulation sim(plan, ds, f, params);
    return sim.run();
}

}  // namespace hexswarm
