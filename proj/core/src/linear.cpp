#include "polygpt/geom/linear.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace polygpt::geom {

namespace {

constexpr double kPivotTol = 1e-11;
constexpr double kFeasTol = 1e-9;
constexpr double kVertexDedupTol = 1e-7;

double norm(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

}  // namespace

HalfSpaceD::HalfSpaceD(std::vector<double> n, double off)
    : normal(std::move(n)), offset(off) {
    if (normal.empty()) {
        throw std::invalid_argument("HalfSpaceD: dimension must be >= 1");
    }
    for (double c : normal) {
        if (!std::isfinite(c)) throw std::invalid_argument("HalfSpaceD: non-finite normal");
    }
    if (!std::isfinite(offset)) throw std::invalid_argument("HalfSpaceD: non-finite offset");
    if (norm(normal) <= 0.0) {
        throw std::invalid_argument("HalfSpaceD: normal must be nonzero");
    }
}

std::optional<std::vector<double>> solve_linear_system(std::vector<std::vector<double>> a,
                                                       std::vector<double> b) {
    const std::size_t n = b.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r) {
            if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
        }
        if (std::abs(a[piv][col]) < kPivotTol) return std::nullopt;
        std::swap(a[piv], a[col]);
        std::swap(b[piv], b[col]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col) continue;
            const double f = a[r][col] / a[col][col];
            if (f == 0.0) continue;
            for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
            b[r] -= f * b[col];
        }
    }
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
    return x;
}

// ---------------------------------------------------------------------------
// Phase-1 simplex.
//
// Variables x are free, so the tableau works over x = p - q with p, q >= 0.
// Every row a.x <= b gains a slack; rows with negative right-hand side are
// negated and gain an artificial variable. The phase-1 objective minimizes
// the artificial sum; Bland's smallest-index rule guarantees termination.
// ---------------------------------------------------------------------------
FeasibilityResult lp_feasible(const FeasibilityProblem& prob) {
    const int n = prob.num_vars;
    if (n <= 0) throw std::invalid_argument("lp_feasible: num_vars must be >= 1");
    for (const HalfSpaceD& h : prob.constraints) {
        if (static_cast<int>(h.dim()) != n) {
            throw std::invalid_argument("lp_feasible: constraint dimension mismatch");
        }
    }
    const int m = static_cast<int>(prob.constraints.size());
    if (m == 0) {
        return {FeasibilityStatus::kFeasible, std::vector<double>(n, 0.0)};
    }

    // Scale rows to unit normals so tolerances behave like distances.
    std::vector<std::vector<double>> a(m, std::vector<double>(n));
    std::vector<double> b(m);
    for (int i = 0; i < m; ++i) {
        const double s = 1.0 / norm(prob.constraints[i].normal);
        for (int j = 0; j < n; ++j) a[i][j] = prob.constraints[i].normal[j] * s;
        b[i] = prob.constraints[i].offset * s;
    }

    const int cols = 2 * n + m;  // p, q, slacks; artificials appended later
    std::vector<int> art_of_row(m, -1);
    int num_art = 0;
    for (int i = 0; i < m; ++i) {
        if (b[i] < 0.0) art_of_row[i] = num_art++;
    }
    const int total = cols + num_art;

    // tab has m constraint rows plus the objective row.
    std::vector<std::vector<double>> tab(m + 1, std::vector<double>(total + 1, 0.0));
    std::vector<int> basis(m);
    for (int i = 0; i < m; ++i) {
        const double sign = (b[i] < 0.0) ? -1.0 : 1.0;
        for (int j = 0; j < n; ++j) {
            tab[i][j] = sign * a[i][j];
            tab[i][n + j] = -sign * a[i][j];
        }
        tab[i][2 * n + i] = sign;  // slack
        tab[i][total] = sign * b[i];
        if (art_of_row[i] >= 0) {
            tab[i][cols + art_of_row[i]] = 1.0;
            basis[i] = cols + art_of_row[i];
        } else {
            basis[i] = 2 * n + i;
        }
    }
    // Objective row: minimize the artificial sum. Start from the raw costs
    // (+1 on each artificial column), then clear the basic columns.
    for (int k = 0; k < num_art; ++k) tab[m][cols + k] = 1.0;
    for (int i = 0; i < m; ++i) {
        if (art_of_row[i] < 0) continue;
        for (int j = 0; j <= total; ++j) tab[m][j] -= tab[i][j];
    }

    const long max_iters = 2000 + 64L * (m + total);
    long iters = 0;
    while (true) {
        if (++iters > max_iters) {
            return {FeasibilityStatus::kDegenerate, std::nullopt};
        }
        // Bland: entering = lowest-index column with negative reduced cost.
        int enter = -1;
        for (int j = 0; j < total; ++j) {
            if (tab[m][j] < -kPivotTol) {
                enter = j;
                break;
            }
        }
        if (enter < 0) break;
        // Ratio test; ties broken by smallest basis variable index (Bland).
        int leave = -1;
        double best_ratio = std::numeric_limits<double>::infinity();
        for (int i = 0; i < m; ++i) {
            if (tab[i][enter] > kPivotTol) {
                const double ratio = tab[i][total] / tab[i][enter];
                if (ratio < best_ratio - 1e-12 ||
                    (ratio < best_ratio + 1e-12 && (leave < 0 || basis[i] < basis[leave]))) {
                    best_ratio = ratio;
                    leave = i;
                }
            }
        }
        if (leave < 0) {
            // Phase-1 objective is bounded below by zero, so an unbounded
            // pivot column signals numerical trouble.
            return {FeasibilityStatus::kDegenerate, std::nullopt};
        }
        // Pivot.
        const double piv = tab[leave][enter];
        for (int j = 0; j <= total; ++j) tab[leave][j] /= piv;
        for (int i = 0; i <= m; ++i) {
            if (i == leave) continue;
            const double f = tab[i][enter];
            if (f == 0.0) continue;
            for (int j = 0; j <= total; ++j) tab[i][j] -= f * tab[leave][j];
        }
        basis[leave] = enter;
    }

    const double objective = -tab[m][total];
    if (objective > 1e-8) {
        return {FeasibilityStatus::kInfeasible, std::nullopt};
    }

    std::vector<double> x(n, 0.0);
    for (int i = 0; i < m; ++i) {
        const double v = tab[i][total];
        if (basis[i] < n) {
            x[basis[i]] += v;
        } else if (basis[i] < 2 * n) {
            x[basis[i] - n] -= v;
        }
    }
    // Verify the witness; failure to meet tolerances is reported distinctly.
    double worst = 0.0;
    for (int i = 0; i < m; ++i) {
        worst = std::max(worst, dot(a[i], x) - b[i]);
    }
    if (worst > 1e-7) {
        return {FeasibilityStatus::kDegenerate, std::nullopt};
    }
    return {FeasibilityStatus::kFeasible, std::move(x)};
}

namespace {

// True when some nonzero recession direction r (A r <= 0) exists. Checked
// exactly with 2d small LPs: any nonzero r has a coordinate of largest
// magnitude that can be scaled to +-1.
bool has_recession_direction(const std::vector<std::vector<double>>& a, int d) {
    for (int i = 0; i < d; ++i) {
        for (double sign : {1.0, -1.0}) {
            FeasibilityProblem probe;
            probe.num_vars = d;
            for (const auto& row : a) {
                probe.constraints.emplace_back(row, 0.0);
            }
            std::vector<double> e(d, 0.0);
            e[i] = 1.0;
            probe.constraints.emplace_back(e, sign);
            for (double& c : e) c = -c;
            probe.constraints.emplace_back(std::move(e), -sign);
            if (lp_feasible(probe).feasible()) return true;
        }
    }
    return false;
}

}  // namespace

std::vector<HalfSpaceD> convex_hull_facets_3d(const std::vector<std::vector<double>>& points) {
    const std::size_t n = points.size();
    if (n < 4) throw std::invalid_argument("convex_hull_facets_3d: need >= 4 points");
    for (const auto& p : points) {
        if (p.size() != 3) throw std::invalid_argument("convex_hull_facets_3d: points must be 3D");
    }

    std::vector<HalfSpaceD> facets;
    const auto is_duplicate = [&](const std::vector<double>& nrm, double off) {
        for (const HalfSpaceD& f : facets) {
            double diff = std::abs(f.offset - off);
            for (int k = 0; k < 3; ++k) diff = std::max(diff, std::abs(f.normal[k] - nrm[k]));
            if (diff <= 1e-7) return true;
        }
        return false;
    };

    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            for (std::size_t k = j + 1; k < n; ++k) {
                const auto& a = points[i];
                const auto& b = points[j];
                const auto& c = points[k];
                const double ux = b[0] - a[0], uy = b[1] - a[1], uz = b[2] - a[2];
                const double vx = c[0] - a[0], vy = c[1] - a[1], vz = c[2] - a[2];
                std::vector<double> nrm{uy * vz - uz * vy, uz * vx - ux * vz,
                                        ux * vy - uy * vx};
                const double len = std::sqrt(dot(nrm, nrm));
                if (len < 1e-12) continue;
                for (double& v : nrm) v /= len;
                const double off = dot(nrm, a);
                double lo = 0.0, hi = 0.0;
                for (const auto& p : points) {
                    const double s = dot(nrm, p) - off;
                    lo = std::min(lo, s);
                    hi = std::max(hi, s);
                }
                if (hi <= 1e-9) {
                    if (!is_duplicate(nrm, off)) facets.emplace_back(nrm, off);
                } else if (lo >= -1e-9) {
                    std::vector<double> neg{-nrm[0], -nrm[1], -nrm[2]};
                    if (!is_duplicate(neg, -off)) facets.emplace_back(std::move(neg), -off);
                }
            }
        }
    }
    if (facets.size() < 4) {
        throw std::runtime_error("convex_hull_facets_3d: point cloud is not full-dimensional");
    }
    return facets;
}

bool in_convex_hull(const std::vector<std::vector<double>>& generators,
                    const std::vector<double>& point, double tol) {
    const std::size_t m = generators.size();
    const std::size_t d = point.size();
    FeasibilityProblem prob;
    prob.num_vars = static_cast<int>(m);
    for (std::size_t i = 0; i < d; ++i) {
        std::vector<double> row(m);
        for (std::size_t j = 0; j < m; ++j) row[j] = generators[j][i];
        prob.constraints.emplace_back(row, point[i] + tol);
        for (double& c : row) c = -c;
        prob.constraints.emplace_back(std::move(row), -point[i] + tol);
    }
    std::vector<double> ones(m, 1.0);
    prob.constraints.emplace_back(ones, 1.0 + tol);
    for (double& c : ones) c = -c;
    prob.constraints.emplace_back(std::move(ones), -1.0 + tol);
    for (std::size_t j = 0; j < m; ++j) {
        std::vector<double> row(m, 0.0);
        row[j] = -1.0;
        prob.constraints.emplace_back(std::move(row), 0.0);
    }
    return lp_feasible(prob).feasible();
}

VertexEnumeration enumerate_polytope_vertices(const std::vector<HalfSpaceD>& halfspaces,
                                              int d) {
    if (d < 2 || d > 4) {
        throw std::invalid_argument("enumerate_polytope_vertices: d must be in {2,3,4}");
    }
    const int m = static_cast<int>(halfspaces.size());
    for (const HalfSpaceD& h : halfspaces) {
        if (static_cast<int>(h.dim()) != d) {
            throw std::invalid_argument("enumerate_polytope_vertices: dimension mismatch");
        }
    }

    std::vector<std::vector<double>> a(m, std::vector<double>(d));
    std::vector<double> b(m);
    for (int i = 0; i < m; ++i) {
        const double s = 1.0 / norm(halfspaces[i].normal);
        for (int j = 0; j < d; ++j) a[i][j] = halfspaces[i].normal[j] * s;
        b[i] = halfspaces[i].offset * s;
    }

    VertexEnumeration out;
    if (has_recession_direction(a, d)) {
        out.status = PolytopeStatus::kUnbounded;
        return out;
    }

    // All d-subsets of constraints, solved as square systems.
    std::vector<int> idx(d);
    for (int i = 0; i < d; ++i) idx[i] = i;
    const auto advance = [&]() {
        int k = d - 1;
        while (k >= 0 && idx[k] == m - d + k) --k;
        if (k < 0) return false;
        ++idx[k];
        for (int j = k + 1; j < d; ++j) idx[j] = idx[j - 1] + 1;
        return true;
    };

    if (m >= d) {
        while (true) {
            std::vector<std::vector<double>> sys(d, std::vector<double>(d));
            std::vector<double> rhs(d);
            for (int r = 0; r < d; ++r) {
                sys[r] = a[idx[r]];
                rhs[r] = b[idx[r]];
            }
            if (auto x = solve_linear_system(std::move(sys), std::move(rhs))) {
                bool ok = true;
                for (int i = 0; i < m && ok; ++i) {
                    ok = dot(a[i], *x) <= b[i] + kFeasTol;
                }
                if (ok) {
                    bool dup = false;
                    for (const auto& v : out.vertices) {
                        double dist = 0.0;
                        for (int j = 0; j < d; ++j) dist = std::max(dist, std::abs(v[j] - (*x)[j]));
                        if (dist <= kVertexDedupTol) {
                            dup = true;
                            break;
                        }
                    }
                    if (!dup) out.vertices.push_back(std::move(*x));
                }
            }
            if (!advance()) break;
        }
    }

    if (out.vertices.empty()) {
        FeasibilityProblem probe;
        probe.num_vars = d;
        probe.constraints = halfspaces;
        out.status = lp_feasible(probe).feasible() ? PolytopeStatus::kUnbounded
                                                   : PolytopeStatus::kEmpty;
    }
    return out;
}

}  // namespace polygpt::geom
