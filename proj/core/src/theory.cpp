#include "polygpt/gpt/theory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace polygpt {

using geom::HalfSpaceD;

State::State(std::vector<double> c) : coords(std::move(c)) {
    for (double v : coords) {
        if (!std::isfinite(v)) throw std::invalid_argument("State: non-finite entry");
    }
}

Effect::Effect(std::vector<double> c) : coords(std::move(c)) {
    for (double v : coords) {
        if (!std::isfinite(v)) throw std::invalid_argument("Effect: non-finite entry");
    }
}

Effect operator+(const Effect& a, const Effect& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("Effect: dimension mismatch");
    std::vector<double> c(a.dim());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coords[i] + b.coords[i];
    return Effect(std::move(c));
}

Effect operator-(const Effect& a, const Effect& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("Effect: dimension mismatch");
    std::vector<double> c(a.dim());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coords[i] - b.coords[i];
    return Effect(std::move(c));
}

Effect operator*(double s, const Effect& a) {
    std::vector<double> c(a.dim());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = s * a.coords[i];
    return Effect(std::move(c));
}

double max_abs_diff(const Effect& a, const Effect& b) {
    if (a.dim() != b.dim()) return std::numeric_limits<double>::infinity();
    double m = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) {
        m = std::max(m, std::abs(a.coords[i] - b.coords[i]));
    }
    return m;
}

double probability(const Effect& e, const State& w) {
    if (e.dim() != w.dim()) {
        throw std::invalid_argument("probability: effect/state dimension mismatch");
    }
    double s = 0.0;
    for (std::size_t i = 0; i < e.dim(); ++i) s += e.coords[i] * w.coords[i];
    return s;
}

Effect effect_complement(const Theory& t, const Effect& e) {
    return t.unit - e;
}

bool is_effect(const Theory& t, const Effect& e, double tol) {
    if (static_cast<int>(e.dim()) != t.dim) {
        throw std::invalid_argument("is_effect: dimension mismatch");
    }
    if (!t.effect_space_first) {
        for (const State& w : t.extremal_states) {
            const double p = probability(e, w);
            if (p < -tol || p > 1.0 + tol) return false;
        }
        return true;
    }
    // Effect-space-first: membership through the stored hull facets.
    for (const HalfSpaceD& h : t.effect_halfspaces) {
        double lhs = 0.0;
        for (std::size_t i = 0; i < h.normal.size(); ++i) lhs += h.normal[i] * e.coords[i];
        if (lhs > h.offset + tol) return false;
    }
    return true;
}

std::vector<Effect> enumerate_extremal_effects(const Theory& t) {
    if (t.effect_space_first) {
        throw std::invalid_argument(
            "enumerate_extremal_effects: theory has no extremal states");
    }
    auto result = geom::enumerate_polytope_vertices(t.effect_halfspaces, t.dim);
    if (result.status == geom::PolytopeStatus::kUnbounded) {
        throw std::runtime_error("enumerate_extremal_effects: effect polytope unbounded");
    }
    if (result.status == geom::PolytopeStatus::kEmpty) {
        throw std::runtime_error("enumerate_extremal_effects: effect polytope empty");
    }
    std::vector<Effect> out;
    out.reserve(result.vertices.size());
    for (auto& v : result.vertices) out.emplace_back(std::move(v));
    return out;
}

namespace {

// Cyclic Jacobi eigendecomposition for a symmetric matrix. Returns
// eigenvalues ascending with matching unit eigenvectors as columns.
void symmetric_eigen(std::vector<std::vector<double>> a,
                     std::vector<double>& values,
                     std::vector<std::vector<double>>& vectors) {
    const std::size_t n = a.size();
    vectors.assign(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) vectors[i][i] = 1.0;

    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off += a[p][q] * a[p][q];
        if (off < 1e-26) break;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                if (std::abs(a[p][q]) < 1e-300) continue;
                const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                const double sign = theta >= 0.0 ? 1.0 : -1.0;
                const double tv = sign / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(tv * tv + 1.0);
                const double s = tv * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a[k][p], akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a[p][k], aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double vkp = vectors[k][p], vkq = vectors[k][q];
                    vectors[k][p] = c * vkp - s * vkq;
                    vectors[k][q] = s * vkp + c * vkq;
                }
            }
        }
    }
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t i, std::size_t j) { return a[i][i] < a[j][j]; });
    values.resize(n);
    std::vector<std::vector<double>> sorted(n, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i) {
        values[i] = a[order[i]][order[i]];
        for (std::size_t k = 0; k < n; ++k) sorted[k][i] = vectors[k][order[i]];
    }
    vectors = std::move(sorted);
}

bool is_trivial_extremal(const Theory& t, const Effect& e) {
    return max_abs_diff(e, t.zero) <= 1e-9 || max_abs_diff(e, t.unit) <= 1e-9;
}

double hyperplane_residual(const std::vector<std::vector<double>>& w,
                           const std::vector<double>& normal) {
    double worst = 0.0;
    for (const auto& row : w) {
        double d = 0.0;
        for (std::size_t i = 0; i < row.size(); ++i) d += row[i] * normal[i];
        worst = std::max(worst, std::abs(d));
    }
    return worst;
}

}  // namespace

ReflectingHyperplaneResult find_reflecting_hyperplane(const Theory& t) {
    const std::size_t d = static_cast<std::size_t>(t.dim);
    const Effect center = 0.5 * t.unit;

    std::vector<std::vector<double>> w;
    for (const Effect& e : t.extremal_effects) {
        if (is_trivial_extremal(t, e)) continue;
        std::vector<double> row(d);
        for (std::size_t i = 0; i < d; ++i) row[i] = e.coords[i] - center.coords[i];
        w.push_back(std::move(row));
    }

    ReflectingHyperplaneResult out;
    if (w.size() + 1 < d) {  // cannot span a (d-1)-flat
        out.status = HyperplaneSearch::kDegenerate;
        return out;
    }

    std::vector<std::vector<double>> gram(d, std::vector<double>(d, 0.0));
    for (const auto& row : w) {
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) gram[i][j] += row[i] * row[j];
    }
    std::vector<double> values;
    std::vector<std::vector<double>> vectors;
    symmetric_eigen(std::move(gram), values, vectors);

    std::vector<double> n1(d), n2(d);
    for (std::size_t i = 0; i < d; ++i) {
        n1[i] = vectors[i][0];
        if (d >= 2) n2[i] = vectors[i][1];
    }
    const double r1 = hyperplane_residual(w, n1);
    out.max_residual = r1;
    if (r1 >= 1e-9) {
        out.status = HyperplaneSearch::kNotFound;
        return out;
    }
    if (d >= 2 && hyperplane_residual(w, n2) < 1e-9) {
        // A second independent fit exists: the flat is underdetermined.
        out.status = HyperplaneSearch::kDegenerate;
        return out;
    }
    double offset = 0.0;
    for (std::size_t i = 0; i < d; ++i) offset += n1[i] * center.coords[i];
    // Canonical sign: first nonzero component positive.
    for (std::size_t i = 0; i < d; ++i) {
        if (std::abs(n1[i]) > 1e-12) {
            if (n1[i] < 0.0) {
                for (double& c : n1) c = -c;
                offset = -offset;
            }
            break;
        }
    }
    out.status = HyperplaneSearch::kFound;
    out.hyperplane = Hyperplane{std::move(n1), offset};
    return out;
}

bool is_state_space_point_symmetric(const Theory& t, double tol) {
    if (t.effect_space_first || t.extremal_states.empty()) {
        throw std::invalid_argument("is_state_space_point_symmetric: no states");
    }
    const std::size_t d = static_cast<std::size_t>(t.dim);
    const std::size_t m = t.extremal_states.size();

    std::vector<double> centroid(d, 0.0);
    for (const State& s : t.extremal_states) {
        for (std::size_t i = 0; i < d; ++i) centroid[i] += s.coords[i];
    }
    for (double& c : centroid) c /= static_cast<double>(m);

    std::vector<std::vector<double>> generators;
    generators.reserve(m);
    for (const State& s : t.extremal_states) generators.push_back(s.coords);

    for (const State& s : t.extremal_states) {
        std::vector<double> target(d);
        for (std::size_t i = 0; i < d; ++i) target[i] = 2.0 * centroid[i] - s.coords[i];
        if (!geom::in_convex_hull(generators, target, tol)) return false;
    }
    return true;
}

bool is_edge(const Theory& t, const Effect& e1, const Effect& e2) {
    const auto find_index = [&](const Effect& e) -> int {
        for (std::size_t i = 0; i < t.extremal_effects.size(); ++i) {
            if (max_abs_diff(t.extremal_effects[i], e) <= 1e-9) return static_cast<int>(i);
        }
        return -1;
    };
    const int i1 = find_index(e1);
    const int i2 = find_index(e2);
    if (i1 < 0 || i2 < 0 || i1 == i2) {
        throw std::invalid_argument("is_edge: arguments must be distinct extremal effects");
    }

    const Effect mid = 0.5 * (e1 + e2);
    const std::size_t n = t.extremal_effects.size();
    const std::size_t d = static_cast<std::size_t>(t.dim);
    constexpr double kOutsideWeight = 1e-6;

    geom::FeasibilityProblem prob;
    prob.num_vars = static_cast<int>(n);
    for (std::size_t i = 0; i < d; ++i) {
        std::vector<double> row(n);
        for (std::size_t j = 0; j < n; ++j) row[j] = t.extremal_effects[j].coords[i];
        prob.constraints.emplace_back(row, mid.coords[i]);
        for (double& c : row) c = -c;
        prob.constraints.emplace_back(std::move(row), -mid.coords[i]);
    }
    std::vector<double> ones(n, 1.0);
    prob.constraints.emplace_back(ones, 1.0);
    for (double& c : ones) c = -c;
    prob.constraints.emplace_back(std::move(ones), -1.0);
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<double> row(n, 0.0);
        row[j] = -1.0;
        prob.constraints.emplace_back(std::move(row), 0.0);
    }
    // Demand strictly positive weight outside {e1, e2}.
    std::vector<double> outside(n, -1.0);
    outside[static_cast<std::size_t>(i1)] = 0.0;
    outside[static_cast<std::size_t>(i2)] = 0.0;
    prob.constraints.emplace_back(std::move(outside), -kOutsideWeight);

    return !geom::lp_feasible(prob).feasible();
}

geom::ConvexPolygon2D unbiased_cross_section(const Theory& t) {
    if (t.dim != 3) {
        throw std::invalid_argument("unbiased_cross_section: requires a d = 3 theory");
    }
    if (!t.reflecting_hyperplane) {
        throw std::invalid_argument("unbiased_cross_section: theory has no reflecting hyperplane");
    }
    const Hyperplane& h = *t.reflecting_hyperplane;
    const double nz = h.normal[2];
    if (std::abs(h.normal[0]) > 1e-9 || std::abs(h.normal[1]) > 1e-9 ||
        std::abs(nz) < 1e-9 || std::abs(h.offset / nz - 0.5) > 1e-9) {
        throw std::invalid_argument("unbiased_cross_section: hyperplane is not z = 1/2");
    }

    // Substitute z = 1/2 into each effect-polytope halfspace.
    std::vector<geom::HalfPlane2D> hps;
    for (const HalfSpaceD& hs : t.effect_halfspaces) {
        const geom::Vec2 nxy{hs.normal[0], hs.normal[1]};
        const double rhs = hs.offset - 0.5 * hs.normal[2];
        if (nxy.norm() <= 1e-12) {
            if (rhs < -1e-9) return geom::ConvexPolygon2D::empty();
            continue;
        }
        hps.emplace_back(nxy, rhs);
    }

    double radius = 1.0;
    for (const Effect& e : t.extremal_effects) {
        radius = std::max(radius, e.xy().norm());
    }
    const double r = 2.0 * radius;
    auto bound = geom::ConvexPolygon2D::from_ccw_vertices(
        {{-r, -r}, {r, -r}, {r, r}, {-r, r}});
    return geom::intersect_halfplanes(hps, bound);
}

std::vector<std::vector<double>> square_bit_probability_table(const Theory& t) {
    if (!t.presentation || t.extremal_states.size() != 4 || t.extremal_effects.size() != 6) {
        throw std::invalid_argument("square_bit_probability_table: not a square-bit theory");
    }
    std::vector<std::vector<double>> table(4, std::vector<double>(6, 0.0));
    for (std::size_t r = 0; r < 4; ++r) {
        for (std::size_t c = 0; c < 6; ++c) {
            table[r][c] = probability(t.extremal_effects[c], t.extremal_states[r]);
        }
    }
    return table;
}

namespace {

// Greedy affinely independent subset of {points}, seeded with `seed`.
std::vector<std::size_t> affine_basis_indices(const std::vector<Effect>& points,
                                              std::size_t seed_index,
                                              std::size_t d) {
    std::vector<std::size_t> chosen{seed_index};
    std::vector<std::vector<double>> span;  // rows: p - seed, kept in echelon form
    for (std::size_t i = 0; i < points.size() && chosen.size() < d + 1; ++i) {
        if (i == seed_index) continue;
        std::vector<double> row(d);
        for (std::size_t k = 0; k < d; ++k) {
            row[k] = points[i].coords[k] - points[seed_index].coords[k];
        }
        std::vector<double> reduced = row;
        for (const auto& basis_row : span) {
            std::size_t lead = 0;
            while (lead < d && std::abs(basis_row[lead]) < 1e-12) ++lead;
            if (lead == d) continue;
            const double f = reduced[lead] / basis_row[lead];
            for (std::size_t k = 0; k < d; ++k) reduced[k] -= f * basis_row[k];
        }
        double mag = 0.0;
        for (double v : reduced) mag = std::max(mag, std::abs(v));
        if (mag > 1e-9) {
            span.push_back(reduced);
            chosen.push_back(i);
        }
    }
    return chosen;
}

}  // namespace

double affine_equivalence_residual(const Theory& a, const Theory& b) {
    const std::size_t d = static_cast<std::size_t>(a.dim);
    if (a.dim != b.dim || a.extremal_effects.size() != b.extremal_effects.size()) {
        return std::numeric_limits<double>::infinity();
    }
    const auto& pa = a.extremal_effects;
    const auto& pb = b.extremal_effects;
    const std::size_t n = pa.size();

    // Locate units; they are pinned to each other.
    const auto index_of = [](const std::vector<Effect>& v, const Effect& e) -> int {
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (max_abs_diff(v[i], e) <= 1e-9) return static_cast<int>(i);
        }
        return -1;
    };
    const int ua = index_of(pa, a.unit);
    const int ub = index_of(pb, b.unit);
    if (ua < 0 || ub < 0) return std::numeric_limits<double>::infinity();

    const std::vector<std::size_t> basis =
        affine_basis_indices(pa, static_cast<std::size_t>(ua), d);
    if (basis.size() != d + 1) return std::numeric_limits<double>::infinity();

    double best = std::numeric_limits<double>::infinity();

    // Try every ordered assignment of the non-unit basis points to points of
    // b, solve the affine map, and score the induced matching.
    std::vector<std::size_t> targets(d);
    std::vector<bool> used(n, false);
    used[static_cast<std::size_t>(ub)] = true;

    const auto score_map = [&](const std::vector<std::vector<double>>& map_rows) {
        // map(p) = M p + c given as rows of [M | c].
        std::vector<bool> taken(n, false);
        double worst = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            std::vector<double> img(d);
            for (std::size_t r = 0; r < d; ++r) {
                double v = map_rows[r][d];
                for (std::size_t k = 0; k < d; ++k) v += map_rows[r][k] * pa[i].coords[k];
                img[r] = v;
            }
            double best_dist = std::numeric_limits<double>::infinity();
            int best_j = -1;
            for (std::size_t j = 0; j < n; ++j) {
                if (taken[j]) continue;
                double dist = 0.0;
                for (std::size_t k = 0; k < d; ++k) {
                    dist = std::max(dist, std::abs(img[k] - pb[j].coords[k]));
                }
                if (dist < best_dist) {
                    best_dist = dist;
                    best_j = static_cast<int>(j);
                }
            }
            if (best_j < 0) return std::numeric_limits<double>::infinity();
            taken[static_cast<std::size_t>(best_j)] = true;
            worst = std::max(worst, best_dist);
        }
        return worst;
    };

    const auto solve_and_score = [&]() {
        // Solve for each output row: unknowns (M_r, c_r) from d+1 pairs.
        std::vector<std::vector<double>> sys(d + 1, std::vector<double>(d + 1));
        for (std::size_t i = 0; i <= d; ++i) {
            const Effect& p = pa[basis[i]];
            for (std::size_t k = 0; k < d; ++k) sys[i][k] = p.coords[k];
            sys[i][d] = 1.0;
        }
        std::vector<std::vector<double>> map_rows(d);
        for (std::size_t r = 0; r < d; ++r) {
            std::vector<double> rhs(d + 1);
            rhs[0] = pb[static_cast<std::size_t>(ub)].coords[r];  // basis[0] = unit
            for (std::size_t i = 1; i <= d; ++i) rhs[i] = pb[targets[i - 1]].coords[r];
            auto sol = geom::solve_linear_system(sys, std::move(rhs));
            if (!sol) return;
            map_rows[r] = std::move(*sol);
        }
        best = std::min(best, score_map(map_rows));
    };

    const auto recurse = [&](auto&& self, std::size_t pos) -> void {
        if (pos == d) {
            solve_and_score();
            return;
        }
        for (std::size_t j = 0; j < n; ++j) {
            if (used[j]) continue;
            used[j] = true;
            targets[pos] = j;
            self(self, pos + 1);
            used[j] = false;
        }
    };
    recurse(recurse, 0);
    return best;
}

}  // namespace polygpt
