#include "polygpt/coex/coexistence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "polygpt/rng.hpp"

namespace polygpt {

using geom::ConvexPolygon2D;
using geom::HalfPlane2D;
using geom::Vec2;

namespace {

constexpr double kBoundaryTol = 1e-9;

void require_even_polygon(int n) {
    if (n < 4 || n % 2 != 0) {
        throw std::invalid_argument("criterion requires an even polygon with n >= 4");
    }
}

void require_in_unbiased_polygon(int n, const Vec2& p, const char* which) {
    const ConvexPolygon2D poly = geom::regular_constraint_polygon(n, 0.5, {0.0, 0.0});
    if (!geom::contains_point(poly, p, 1e-7)) {
        throw std::invalid_argument(std::string(which) +
                                    " lies outside the unbiased polygon");
    }
}

Vec2 grid_direction(int n, int k) {
    const double th = 2.0 * std::numbers::pi * k / n;
    return {std::cos(th), std::sin(th)};
}

}  // namespace

CoexistenceVerdict criterion_verdict(int n, const Vec2& e, const Vec2& f) {
    require_even_polygon(n);
    require_in_unbiased_polygon(n, e, "e");
    require_in_unbiased_polygon(n, f, "f");

    const Vec2 diff = f - e;
    const Vec2 sum = f + e;
    CoexistenceVerdict v;
    double min_slack = std::numeric_limits<double>::infinity();
    for (int k1 = 0; k1 < n; ++k1) {
        const double a = diff.dot(grid_direction(n, k1));
        for (int k2 = 0; k2 < n; ++k2) {
            const double lhs = a + sum.dot(grid_direction(n, k2));
            min_slack = std::min(min_slack, 1.0 - lhs);
        }
    }
    v.coexistent = min_slack >= -kBoundaryTol;
    v.slack = min_slack;
    for (int k1 = 0; k1 < n; ++k1) {
        const double a = diff.dot(grid_direction(n, k1));
        for (int k2 = 0; k2 < n; ++k2) {
            const double slack = 1.0 - (a + sum.dot(grid_direction(n, k2)));
            const bool record = v.coexistent ? std::abs(slack) <= kBoundaryTol
                                             : slack < -kBoundaryTol;
            if (record) v.binding.emplace_back(k1, k2);
        }
    }
    return v;
}

bool coexist_criterion_even_polygon(int n, const Vec2& e, const Vec2& f) {
    return criterion_verdict(n, e, f).coexistent;
}

CoexistenceVerdict coexist_oracle(const Theory& t, const Effect& e, const Effect& f) {
    if (static_cast<int>(e.dim()) != t.dim || static_cast<int>(f.dim()) != t.dim) {
        throw std::invalid_argument("coexist_oracle: dimension mismatch");
    }
    if (!is_effect(t, e, 1e-7) || !is_effect(t, f, 1e-7)) {
        throw std::invalid_argument("coexist_oracle: e and f must be effects of the theory");
    }
    const std::size_t d = static_cast<std::size_t>(t.dim);

    // Unknown is g1 alone; g2 = e - g1, g3 = f - g1 and
    // g4 = u - e - f + g1 make the equalities exact. Each marginal must lie
    // in the effect space, described by the stored halfspaces a.x <= b:
    //   g1:  a.g1 <= b
    //   g2: -a.g1 <= b - a.e
    //   g3: -a.g1 <= b - a.f
    //   g4:  a.g1 <= b - a.(u - e - f)
    geom::FeasibilityProblem prob;
    prob.num_vars = t.dim;
    const Effect rest = t.unit - e - f;
    for (const geom::HalfSpaceD& h : t.effect_halfspaces) {
        double ae = 0.0, af = 0.0, ar = 0.0;
        for (std::size_t i = 0; i < d; ++i) {
            ae += h.normal[i] * e.coords[i];
            af += h.normal[i] * f.coords[i];
            ar += h.normal[i] * rest.coords[i];
        }
        std::vector<double> neg(d);
        for (std::size_t i = 0; i < d; ++i) neg[i] = -h.normal[i];
        prob.constraints.emplace_back(h.normal, h.offset);
        prob.constraints.emplace_back(neg, h.offset - ae);
        prob.constraints.emplace_back(std::move(neg), h.offset - af);
        prob.constraints.emplace_back(h.normal, h.offset - ar);
    }

    const geom::FeasibilityResult r = geom::lp_feasible(prob);
    if (r.status == geom::FeasibilityStatus::kDegenerate) {
        throw std::runtime_error("coexist_oracle: solver reported numerical degeneracy");
    }
    CoexistenceVerdict v;
    v.coexistent = r.feasible();
    if (r.feasible()) {
        Effect g1(*r.witness);
        v.witness = {g1, e - g1, f - g1};
    }
    return v;
}

RegionReport coexistence_region(int n, const Vec2& e) {
    require_even_polygon(n);
    require_in_unbiased_polygon(n, e, "e");

    ConvexPolygon2D region = geom::regular_constraint_polygon(n, 0.5, {0.0, 0.0});
    const ConvexPolygon2D unbiased = region;
    for (int k1 = 0; k1 < n && !region.is_empty(); ++k1) {
        const Vec2 u1 = grid_direction(n, k1);
        for (int k2 = 0; k2 < n && !region.is_empty(); ++k2) {
            const Vec2 u2 = grid_direction(n, k2);
            const Vec2 normal = u1 + u2;
            const double rhs = 1.0 + e.dot(u1 - u2);
            if (normal.norm() <= 1e-12) continue;  // antipodal pair, no constraint
            region = geom::clip_halfplane(region, HalfPlane2D(normal, rhs));
        }
    }

    RegionReport rep;
    rep.n = n;
    rep.fixed_effect = e;
    rep.region = region;
    rep.area = geom::polygon_area(region);
    rep.clipped_to = unbiased;
    return rep;
}

BuschEffectPair::BuschEffectPair(const std::array<double, 3>& l1,
                                 const std::array<double, 3>& l2)
    : lambda1(l1), lambda2(l2) {
    const auto norm3 = [](const std::array<double, 3>& v) {
        return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
    };
    if (norm3(lambda1) > 1.0 + 1e-12 || norm3(lambda2) > 1.0 + 1e-12) {
        throw std::invalid_argument("BuschEffectPair: Bloch vectors must have norm <= 1");
    }
}

BuschEffectPair::BuschEffectPair(const Vec2& l1, const Vec2& l2)
    : BuschEffectPair(std::array<double, 3>{l1.x, l1.y, 0.0},
                      std::array<double, 3>{l2.x, l2.y, 0.0}) {}

bool busch_coexistent(const BuschEffectPair& p) {
    double sum = 0.0, diff = 0.0;
    for (int i = 0; i < 3; ++i) {
        const double s = p.lambda1[i] + p.lambda2[i];
        const double d = p.lambda1[i] - p.lambda2[i];
        sum += s * s;
        diff += d * d;
    }
    return 0.5 * std::sqrt(sum) + 0.5 * std::sqrt(diff) <= 1.0 + kBoundaryTol;
}

bool busch_planar_region_membership(const Vec2& e, const Vec2& f) {
    if (e.norm() > 0.5 + 1e-12 || f.norm() > 0.5 + 1e-12) {
        throw std::invalid_argument(
            "busch_planar_region_membership: effects must lie in the radius-1/2 disk");
    }
    return (e + f).norm() + (e - f).norm() <= 1.0 + kBoundaryTol;
}

Vec2 bloch_from_unbiased(const Vec2& e) { return 2.0 * e; }
Vec2 unbiased_from_bloch(const Vec2& lambda) { return 0.5 * lambda; }

double quantum_limit_gap(int n, const Vec2& e) {
    const double r = e.norm();
    if (r >= 0.5) {
        throw std::invalid_argument("quantum_limit_gap: |e| must be < 1/2");
    }
    const double ellipse = std::numbers::pi * 0.5 * std::sqrt(0.25 - r * r);
    const double area = coexistence_region(n, e).area;
    return std::abs(area - ellipse) / ellipse;
}

namespace {

bool is_nontrivial_extremal(const Theory& t, const Effect& e) {
    if (max_abs_diff(e, t.zero) <= 1e-9 || max_abs_diff(e, t.unit) <= 1e-9) return false;
    for (const Effect& v : t.extremal_effects) {
        if (max_abs_diff(v, e) <= 1e-9) return true;
    }
    return false;
}

}  // namespace

std::array<Effect, 4> extremal_coexistence_set(const Theory& t, const Effect& e) {
    if (t.dim != 3) {
        throw std::invalid_argument("extremal_coexistence_set: requires d = 3");
    }
    if (!t.reflecting_hyperplane) {
        throw std::invalid_argument("extremal_coexistence_set: no reflecting hyperplane");
    }
    if (!is_nontrivial_extremal(t, e)) {
        throw std::invalid_argument("extremal_coexistence_set: e must be a nontrivial extremal");
    }
    const Effect bar = effect_complement(t, e);
    return {t.zero, e, bar, t.unit};
}

bool in_extremal_coexistence_set(const Theory& t, const Effect& e, const Effect& f,
                                 double tol) {
    const std::array<Effect, 4> corners = extremal_coexistence_set(t, e);
    const Effect& a = corners[1];
    const Effect& b = corners[2];

    // Least squares f = s a + t b through the 2x2 normal equations.
    double aa = 0.0, ab = 0.0, bb = 0.0, fa = 0.0, fb = 0.0;
    for (std::size_t i = 0; i < 3; ++i) {
        aa += a.coords[i] * a.coords[i];
        ab += a.coords[i] * b.coords[i];
        bb += b.coords[i] * b.coords[i];
        fa += f.coords[i] * a.coords[i];
        fb += f.coords[i] * b.coords[i];
    }
    const double det = aa * bb - ab * ab;
    if (std::abs(det) < 1e-12) {
        throw std::runtime_error("in_extremal_coexistence_set: degenerate parallelogram");
    }
    const double s = (fa * bb - fb * ab) / det;
    const double u = (aa * fb - ab * fa) / det;

    double residual = 0.0;
    for (std::size_t i = 0; i < 3; ++i) {
        residual = std::max(residual,
                            std::abs(f.coords[i] - s * a.coords[i] - u * b.coords[i]));
    }
    return residual <= tol && s >= -tol && s <= 1.0 + tol && u >= -tol && u <= 1.0 + tol;
}

std::vector<Effect> sample_effects_in_polytope(const Theory& t, int count,
                                               std::uint64_t seed) {
    const std::size_t d = static_cast<std::size_t>(t.dim);
    std::vector<double> lo(d, std::numeric_limits<double>::infinity());
    std::vector<double> hi(d, -std::numeric_limits<double>::infinity());
    for (const Effect& e : t.extremal_effects) {
        for (std::size_t i = 0; i < d; ++i) {
            lo[i] = std::min(lo[i], e.coords[i]);
            hi[i] = std::max(hi[i], e.coords[i]);
        }
    }

    std::vector<Effect> out;
    out.reserve(static_cast<std::size_t>(count));
    const std::uint64_t max_attempts =
        1000ULL * static_cast<std::uint64_t>(count) + 1000ULL;
    for (std::uint64_t attempt = 0; attempt < max_attempts; ++attempt) {
        if (out.size() == static_cast<std::size_t>(count)) break;
        SplitMix64 g(substream_seed(seed, attempt));
        std::vector<double> c(d);
        for (std::size_t i = 0; i < d; ++i) {
            c[i] = lo[i] + (hi[i] - lo[i]) * g.next_double();
        }
        Effect candidate(std::move(c));
        if (is_effect(t, candidate, 0.0)) {
            out.push_back(std::move(candidate));
        }
    }
    if (out.size() != static_cast<std::size_t>(count)) {
        throw std::runtime_error("sample_effects_in_polytope: acceptance rate too low");
    }
    return out;
}

double coexistence_volume_fraction(const Theory& t, const Effect& e, int samples,
                                   std::uint64_t seed) {
    if (samples < 1000) {
        throw std::invalid_argument("coexistence_volume_fraction: samples must be >= 1000");
    }
    if (t.dim != 3) {
        throw std::invalid_argument("coexistence_volume_fraction: requires d = 3");
    }
    const std::vector<Effect> fs = sample_effects_in_polytope(t, samples, seed);
    long hits = 0;
    for (const Effect& f : fs) {
        if (coexist_oracle(t, e, f).coexistent) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(samples);
}

ConvexPolygon2D lower_set_slice(const Theory& t, const Effect& e, double l) {
    if (t.dim != 3 || t.effect_space_first || !t.reflecting_hyperplane) {
        throw std::invalid_argument("lower_set_slice: requires an even polygon theory");
    }
    const int n = static_cast<int>(t.extremal_states.size());
    if (n % 2 != 0) {
        throw std::invalid_argument("lower_set_slice: requires an even polygon theory");
    }
    if (std::abs(e.z() - 0.5) > 1e-9) {
        throw std::invalid_argument("lower_set_slice: e must be unbiased (z = 1/2)");
    }
    if (l < 0.0 || l > 0.5) {
        throw std::invalid_argument("lower_set_slice: l must lie in [0, 1/2]");
    }

    // g >= o on all states pins the slice into R_l(0); g <= e pins it into
    // R_(1/2 - l) centered at e_xy.
    const ConvexPolygon2D base = geom::regular_constraint_polygon(n, l, {0.0, 0.0});
    const std::vector<HalfPlane2D> upper =
        geom::regular_constraint_halfplanes(n, 0.5 - l, e.xy());
    if (base.is_empty()) return base;
    return geom::intersect_halfplanes(upper, base);
}

}  // namespace polygpt
