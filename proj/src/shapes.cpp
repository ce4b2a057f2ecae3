#include "hexswarm/shapes.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numbers>
#include <tuple>

#include "hexswarm/ribbons.hpp"

namespace hexswarm {

const char* violation_kind_name(ViolationKind k) {
    switch (k) {
        case ViolationKind::Connectivity: return "Connectivity";
        case ViolationKind::BoundaryInHole: return "BoundaryInHole";
        case ViolationKind::SmoothBoundary2d: return "SmoothBoundary2d";
        case ViolationKind::SmoothBoundarySqrt3: return "SmoothBoundarySqrt3";
        case ViolationKind::Placement: return "Placement";
        case ViolationKind::HopCount: return "HopCount";
        case ViolationKind::MinLength: return "MinLength";
        case ViolationKind::RootShape: return "RootShape";
    }
    return "Unknown";
}

namespace {

double point_segment_dist(const Vec2& p, const Vec2& a, const Vec2& b) {
    Vec2 ab = b - a;
    double len2 = ab.x * ab.x + ab.y * ab.y;
    if (len2 == 0.0) return dist(p, a);
    double t = ((p.x - a.x) * ab.x + (p.y - a.y) * ab.y) / len2;
    t = std::clamp(t, 0.0, 1.0);
    return dist(p, {a.x + t * ab.x, a.y + t * ab.y});
}

}  // namespace

bool point_in_polygon(const Vec2& p, const std::vector<Vec2>& poly, double eps) {
    size_t n = poly.size();
    for (size_t i = 0; i < n; ++i)
        if (point_segment_dist(p, poly[i], poly[(i + 1) % n]) < eps) return false;
    bool inside = false;
    for (size_t i = 0, j = n - 1; i < n; j = i++) {
        const Vec2& a = poly[i];
        const Vec2& b = poly[j];
        if ((a.y > p.y) != (b.y > p.y)) {
            double xint = a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x);
            if (p.x < xint) inside = !inside;
        }
    }
    return inside;
}

std::set<LatticePoint> compute_boundary(const std::set<LatticePoint>& S, const Frame& f) {
    std::set<LatticePoint> b;
    for (const auto& x : S)
        for (const auto& n : neighbors(x, f))
            if (!S.count(n)) {
                b.insert(x);
                break;
            }
    return b;
}

DiscreteShape discretize(const ShapeSpec& spec, const Pose& pose, const Frame& f) {
    const double eps = 1e-9;
    // Shape-frame coordinates of a lattice point: rotate back by theta after
    // removing the translation (all in d-units).
    const double c = std::cos(pose.theta), s = std::sin(pose.theta);
    // Bounding box of the posed outer polygon in d-units.
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (const auto& v : spec.outer) {
        double wx = c * v.x - s * v.y + pose.tx;
        double wy = s * v.x + c * v.y + pose.ty;
        xmin = std::min(xmin, wx); xmax = std::max(xmax, wx);
        ymin = std::min(ymin, wy); ymax = std::max(ymax, wy);
    }
    DiscreteShape ds;
    int rlo = static_cast<int>(std::floor(ymin / (std::sqrt(3.0) / 2.0))) - 1;
    int rhi = static_cast<int>(std::ceil(ymax / (std::sqrt(3.0) / 2.0))) + 1;
    for (int r = rlo; r <= rhi; ++r) {
        double y = (std::sqrt(3.0) / 2.0) * r;
        int qlo = static_cast<int>(std::floor(xmin - 0.5 * r)) - 1;
        int qhi = static_cast<int>(std::ceil(xmax - 0.5 * r)) + 1;
        for (int q = qlo; q <= qhi; ++q) {
            double x = q + 0.5 * r;
            // Into the shape frame.
            double ux = x - pose.tx, uy = y - pose.ty;
            Vec2 u{c * ux + s * uy, -s * ux + c * uy};
            if (!point_in_polygon(u, spec.outer, eps)) continue;
            LatticePoint p{q, r};
            ds.S.insert(p);
            for (const auto& hole : spec.holes)
                if (point_in_polygon(u, hole, eps)) {
                    ds.D.insert(p);
                    break;
                }
        }
    }
    if (ds.S.empty()) throw EmptyShape();
    ds.boundary = compute_boundary(ds.S, f);
    return ds;
}

std::vector<Violation> check_representation(const DiscreteShape& ds, const Frame& f) {
    std::vector<Violation> out;
    // Connectivity under lattice adjacency.
    if (!ds.S.empty()) {
        std::set<LatticePoint> seen{*ds.S.begin()};
        std::deque<LatticePoint> queue{*ds.S.begin()};
        while (!queue.empty()) {
            LatticePoint x = queue.front();
            queue.pop_front();
            for (const auto& n : neighbors(x, f))
                if (ds.S.count(n) && seen.insert(n).second) queue.push_back(n);
        }
        for (const auto& x : ds.S)
            if (!seen.count(x)) {
                out.push_back({ViolationKind::Connectivity, {x}, "S is disconnected"});
                break;
            }
    }
    for (const auto& x : ds.boundary)
        if (ds.D.count(x))
            out.push_back({ViolationKind::BoundaryInHole, {x}, "hole point on the boundary"});
    // Smoothness at distance 2d: the midpoint must belong to S.
    static const std::array<LatticePoint, 3> half_units{{{1, 0}, {0, 1}, {-1, 1}}};
    for (const auto& x : ds.S) {
        for (const auto& u : half_units) {
            LatticePoint y = x + u + u;
            if (ds.S.count(y) && !ds.S.count(x + u))
                out.push_back({ViolationKind::SmoothBoundary2d,
                               {x, y, x + u},
                               "points 2d apart with the midpoint missing"});
        }
        // Smoothness at distance sqrt(3)d: not both common neighbors missing.
        for (size_t i = 0; i < 3; ++i) {
            LatticePoint w = sqrt3_offsets()[i];
            LatticePoint y = x + w;
            if (!ds.S.count(y)) continue;
            auto mids = sqrt3_midpoints(w);
            if (!ds.S.count(x + mids[0]) && !ds.S.count(x + mids[1]))
                out.push_back({ViolationKind::SmoothBoundarySqrt3,
                               {x, y},
                               "points sqrt(3)d apart with both common neighbors missing"});
        }
    }
    return out;
}

namespace {

DiscreteShape translate_shape(const DiscreteShape& ds, const LatticePoint& by, const Frame& f) {
    DiscreteShape out;
    for (const auto& p : ds.S) out.S.insert(p + by);
    for (const auto& p : ds.D) out.D.insert(p + by);
    out.boundary = compute_boundary(out.S, f);
    return out;
}

struct Candidate {
    size_t score;  // |S \ D|
    double theta, tx, ty;
    size_t base;  // index into the base-pose cache
    LatticePoint shift;
    bool operator<(const Candidate& o) const {
        return std::make_tuple(o.score, theta, tx, ty) <
               std::make_tuple(score, o.theta, o.tx, o.ty);
    }
};

}  // namespace

PlacementResult find_placement(const ShapeSpec& spec, const Frame& f, const SearchParams& search) {
    // Discretize once per (rotation, fractional offset); integer lattice
    // shifts of the result are exact and cheap.
    std::vector<DiscreteShape> bases;
    std::vector<Candidate> candidates;
    for (int i = 0; i < search.rotation_samples; ++i) {
        double theta = i * (std::numbers::pi / 3.0) / search.rotation_samples;
        for (int a = 0; a < search.trans_steps; ++a) {
            for (int b = 0; b < search.trans_steps; ++b) {
                // Fractional offset within the rhombic fundamental domain
                // spanned by the lattice basis (1,0) and (1/2, sqrt(3)/2).
                double s1 = static_cast<double>(a) / search.trans_steps;
                double s2 = static_cast<double>(b) / search.trans_steps;
                Pose frac{theta, s1 + 0.5 * s2, (std::sqrt(3.0) / 2.0) * s2};
                DiscreteShape ds;
                try {
                    ds = discretize(spec, frac, f);
                } catch (const EmptyShape&) {
                    continue;
                }
                size_t score = ds.S.size() - ds.D.size();
                int rmin = ds.S.begin()->r;
                for (const auto& p : ds.S) rmin = std::min(rmin, p.r);
                int bottom_qmin = 0, bottom_qmax = 0;
                bool first = true;
                for (const auto& p : ds.S)
                    if (p.r == rmin) {
                        if (first) { bottom_qmin = bottom_qmax = p.q; first = false; }
                        bottom_qmin = std::min(bottom_qmin, p.q);
                        bottom_qmax = std::max(bottom_qmax, p.q);
                    }
                bases.push_back(std::move(ds));
                size_t base = bases.size() - 1;
                for (int layer = 1; layer <= search.max_layers; ++layer) {
                    int dr = (1 + layer) - rmin;
                    // Horizontal integer shifts that let the bottom row cover
                    // the root positions (columns -2..0 at r = 2).
                    for (int dq = -2 - bottom_qmax; dq <= 0 - bottom_qmin; ++dq) {
                        candidates.push_back({score, theta,
                                              frac.tx + dq + 0.5 * dr,
                                              frac.ty + (std::sqrt(3.0) / 2.0) * dr,
                                              base,
                                              {dq, dr}});
                    }
                }
            }
        }
    }
    std::sort(candidates.begin(), candidates.end());
    bool have_best = false;
    Pose best_pose;
    std::vector<Violation> best_violations;
    size_t best_card = 0;
    for (const auto& cand : candidates) {
        Pose pose{cand.theta, cand.tx, cand.ty};
        DiscreteShape ds = translate_shape(bases[cand.base], cand.shift, f);
        std::vector<Violation> v = check_representation(ds, f);
        bool placed = true;
        for (const auto& x : ds.S)
            if (classify_halfplane(x, f) != HalfPlaneId::Formation) {
                placed = false;
                break;
            }
        if (!placed)
            v.push_back({ViolationKind::Placement, {}, "shape leaves H1"});
        if (v.empty()) {
            try {
                RibbonTree rt = ribbonize(ds.S, ds.D, f);
                v = check_proper(rt, ds, f);
            } catch (const MalformedField& e) {
                v.push_back({ViolationKind::HopCount, {e.at}, e.what()});
            } catch (const CycleRibbon& e) {
                v.push_back({ViolationKind::HopCount, {e.at}, e.what()});
            }
        }
        if (v.empty()) return {pose, ds};
        if (!have_best || cand.score > best_card) {
            have_best = true;
            best_pose = pose;
            best_violations = std::move(v);
            best_card = cand.score;
        }
    }
    throw NoProperPlacement(best_pose, std::move(best_violations), best_card);
}

}  // namespace hexswarm
