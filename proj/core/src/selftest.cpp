#include "polygpt/selftest.hpp"

#include <chrono>
#include <limits>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>

#include "polygpt/coex/coexistence.hpp"
#include "polygpt/export.hpp"
#include "polygpt/gpt/builders.hpp"
#include "polygpt/gpt/serialize.hpp"
#include "polygpt/rng.hpp"

namespace polygpt::selftest {

namespace {

using geom::Vec2;

struct Check {
    std::string id;
    std::function<bool(std::ostringstream&)> run;
};

// --- closed-form extremal-effect sets used as the independent route -------

std::vector<std::vector<double>> expected_polygon_extremals(int n) {
    std::vector<std::vector<double>> out;
    out.push_back({0.0, 0.0, 0.0});
    if (n % 2 == 0) {
        const double tn = std::tan(std::numbers::pi / n);
        for (int k = 0; k < n; ++k) {
            const double th = 2.0 * std::numbers::pi * k / n;
            out.push_back({0.5 * (std::cos(th) + tn * std::sin(th)),
                           0.5 * (-std::sin(th) + tn * std::cos(th)), 0.5});
        }
    } else {
        const double denom = 1.0 - std::cos((n - 1) * std::numbers::pi / n);
        for (int k = 0; k < n; ++k) {
            const double th = 2.0 * std::numbers::pi * k / n;
            out.push_back({std::cos(th) / denom, std::sin(th) / denom,
                           -std::cos((n - 1) * std::numbers::pi / n) / denom});
        }
        for (int k = 0; k < n; ++k) {
            const double th = 2.0 * std::numbers::pi * k / n;
            out.push_back({-std::cos(th) / denom, -std::sin(th) / denom, 1.0 / denom});
        }
    }
    out.push_back({0.0, 0.0, 1.0});
    return out;
}

double set_match_error(const std::vector<Effect>& got,
                       const std::vector<std::vector<double>>& expected) {
    if (got.size() != expected.size()) return std::numeric_limits<double>::infinity();
    std::vector<bool> taken(got.size(), false);
    double worst = 0.0;
    for (const auto& want : expected) {
        double best = std::numeric_limits<double>::infinity();
        int best_i = -1;
        for (std::size_t i = 0; i < got.size(); ++i) {
            if (taken[i]) continue;
            double diff = 0.0;
            for (std::size_t k = 0; k < want.size(); ++k) {
                diff = std::max(diff, std::abs(got[i].coords[k] - want[k]));
            }
            if (diff < best) {
                best = diff;
                best_i = static_cast<int>(i);
            }
        }
        if (best_i < 0) return std::numeric_limits<double>::infinity();
        taken[static_cast<std::size_t>(best_i)] = true;
        worst = std::max(worst, best);
    }
    return worst;
}

std::vector<Effect> nontrivial_extremals(const Theory& t) {
    std::vector<Effect> out;
    for (const Effect& e : t.extremal_effects) {
        if (max_abs_diff(e, t.zero) <= 1e-9 || max_abs_diff(e, t.unit) <= 1e-9) continue;
        out.push_back(e);
    }
    return out;
}

// 21 deterministic probe points inside the unbiased polygon: the center plus
// four rings of five, at angles incommensurate with the polygon symmetry.
std::vector<Vec2> probe_points() {
    std::vector<Vec2> pts;
    pts.emplace_back(0.0, 0.0);
    const double radii[] = {0.25, 0.5, 0.75, 0.95};
    for (double r : radii) {
        for (int m = 0; m < 5; ++m) {
            const double th = 2.0 * std::numbers::pi * m / 5.0 + 0.37;
            pts.emplace_back(0.5 * r * std::cos(th), 0.5 * r * std::sin(th));
        }
    }
    return pts;
}

bool witness_valid(const Theory& t, const Effect& e, const Effect& f,
                   const CoexistenceVerdict& v, double tol = 1e-7) {
    if (!v.witness) return false;
    const auto& [g1, g2, g3] = *v.witness;
    if (max_abs_diff(g1 + g2, e) > 1e-9 || max_abs_diff(g1 + g3, f) > 1e-9) return false;
    const Effect g4 = t.unit - g1 - g2 - g3;
    return is_effect(t, g1, tol) && is_effect(t, g2, tol) && is_effect(t, g3, tol) &&
           is_effect(t, g4, tol);
}

// --- the individual acceptance checks --------------------------------------

bool check_polygon_extremals(std::ostringstream& detail) {
    double worst = 0.0;
    for (int n = 3; n <= 12; ++n) {
        const Theory t = build_regular_polygon_theory(n);
        const auto expected = expected_polygon_extremals(n);
        const std::size_t want = (n % 2 == 0) ? static_cast<std::size_t>(n + 2)
                                              : static_cast<std::size_t>(2 * n + 2);
        if (t.extremal_effects.size() != want || expected.size() != want) {
            detail << "n=" << n << " count=" << t.extremal_effects.size()
                   << " expected=" << want;
            return false;
        }
        worst = std::max(worst, set_match_error(t.extremal_effects, expected));
    }
    detail << "n=3..12 max_coord_error=" << format_g17(worst);
    return worst < 1e-9;
}

bool check_square_bit_table(std::ostringstream& detail) {
    static const double kTable[4][6] = {
        {0, 1, 0, 0, 1, 1},
        {0, 1, 0, 1, 0, 1},
        {0, 0, 1, 0, 1, 1},
        {0, 0, 1, 1, 0, 1},
    };
    const Theory t = build_square_bit();
    const auto table = square_bit_probability_table(t);
    double worst = 0.0;
    for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 6; ++c) {
            worst = std::max(worst, std::abs(table[static_cast<std::size_t>(r)]
                                                  [static_cast<std::size_t>(c)] -
                                             kTable[r][c]));
        }
    }
    detail << "4x6 max_error=" << format_g17(worst);
    return worst <= 1e-12;
}

bool check_criterion_oracle(std::ostringstream& detail) {
    const auto points = probe_points();
    long agree = 0, band = 0, mismatch = 0;
    for (int n : {4, 6, 8, 10}) {
        const Theory t = build_regular_polygon_theory(n);
        for (const Vec2& pe : points) {
            for (const Vec2& pf : points) {
                const CoexistenceVerdict cv = criterion_verdict(n, pe, pf);
                if (cv.slack && std::abs(*cv.slack) <= 1e-6) {
                    ++band;
                    continue;
                }
                const Effect e({pe.x, pe.y, 0.5});
                const Effect f({pf.x, pf.y, 0.5});
                const CoexistenceVerdict ov = coexist_oracle(t, e, f);
                if (ov.coexistent == cv.coexistent &&
                    (!ov.coexistent || witness_valid(t, e, f, ov))) {
                    ++agree;
                } else {
                    ++mismatch;
                }
            }
        }
    }
    detail << "pairs=" << (agree + band + mismatch) << " agree=" << agree
           << " band=" << band << " mismatch=" << mismatch;
    return mismatch == 0;
}

bool check_extremal_vanishing(const Options& opt, std::ostringstream& detail) {
    double worst_area = 0.0;
    double worst_fraction = 0.0;
    for (int n : {4, 6, 8, 10, 12}) {
        const Theory t = build_regular_polygon_theory(n);
        const auto extremals = nontrivial_extremals(t);
        for (const Effect& e : extremals) {
            worst_area = std::max(worst_area, coexistence_region(n, e.xy()).area);
        }
        const double frac =
            coexistence_volume_fraction(t, extremals.front(), opt.samples, opt.seed);
        worst_fraction = std::max(worst_fraction, frac);
    }
    for (double delta : {0.1, 0.25, 0.4}) {
        const Theory t = build_displaced_hexagon(delta);
        const Effect& displaced = t.extremal_effects[1];  // the lifted k = 0 vertex
        const double frac =
            coexistence_volume_fraction(t, displaced, opt.samples, opt.seed);
        worst_fraction = std::max(worst_fraction, frac);
    }
    detail << "max_region_area=" << format_g17(worst_area)
           << " max_mc_fraction=" << format_g17(worst_fraction)
           << " samples=" << opt.samples;
    return worst_area < 1e-12 && worst_fraction < 0.01;
}

bool check_parallelogram(const Options& opt, std::ostringstream& detail) {
    const Theory t = build_regular_polygon_theory(6);
    const Effect e = nontrivial_extremals(t).front();
    const auto samples = sample_effects_in_polytope(t, 200, opt.seed + 17);
    int agree = 0;
    for (const Effect& f : samples) {
        const bool member = in_extremal_coexistence_set(t, e, f);
        const bool oracle = coexist_oracle(t, e, f).coexistent;
        if (member == oracle) ++agree;
    }
    detail << "agree=" << agree << "/200";
    return agree == 200;
}

bool check_symmetry_equivalence(std::ostringstream& detail) {
    for (int n = 4; n <= 12; n += 2) {
        const Theory t = build_regular_polygon_theory(n);
        const auto r = find_reflecting_hyperplane(t);
        if (!r.found() || r.max_residual >= 1e-9 || !is_state_space_point_symmetric(t)) {
            detail << "even n=" << n << " failed";
            return false;
        }
    }
    for (int n = 3; n <= 11; n += 2) {
        const Theory t = build_regular_polygon_theory(n);
        const auto r = find_reflecting_hyperplane(t);
        if (r.found() || is_state_space_point_symmetric(t)) {
            detail << "odd n=" << n << " failed";
            return false;
        }
    }
    const Theory dh = build_displaced_hexagon(0.25);
    if (find_reflecting_hyperplane(dh).found()) {
        detail << "displaced hexagon unexpectedly has a hyperplane";
        return false;
    }
    detail << "even 4..12 found+symmetric, odd 3..11 absent+asymmetric, counterexample absent";
    return true;
}

bool check_quantum_limit(std::ostringstream& detail) {
    const Vec2 e{0.2, 0.0};
    double prev = std::numeric_limits<double>::infinity();
    std::vector<double> gaps;
    for (int n : {8, 16, 32, 64, 128}) {
        const double gap = quantum_limit_gap(n, e);
        gaps.push_back(gap);
        if (gap >= prev) {
            detail << "gap not decreasing at n=" << n;
            return false;
        }
        prev = gap;
    }
    const double tail = quantum_limit_gap(200, e);
    double closed_form_err = 0.0;
    for (int n : {8, 16, 32, 64, 128}) {
        const double expected = n * std::tan(std::numbers::pi / n) / std::numbers::pi - 1.0;
        closed_form_err = std::max(closed_form_err,
                                   std::abs(quantum_limit_gap(n, {0.0, 0.0}) - expected));
    }
    detail << "gaps(0.2,0)=";
    for (std::size_t i = 0; i < gaps.size(); ++i) {
        if (i) detail << ",";
        detail << format_g17(gaps[i]);
    }
    detail << " gap(200)=" << format_g17(tail)
           << " center_closed_form_err=" << format_g17(closed_form_err);
    return tail < 0.01 && closed_form_err < 1e-9;
}

bool check_classical(const Options& opt, std::ostringstream& detail) {
    const Theory t = build_classical_theory(2);
    int ok = 0;
    for (int i = 0; i < 500; ++i) {
        SplitMix64 g(substream_seed(opt.seed + 99, static_cast<std::uint64_t>(i)));
        const Effect e({g.next_double(), g.next_double()});
        const Effect f({g.next_double(), g.next_double()});
        const CoexistenceVerdict v = coexist_oracle(t, e, f);
        if (!v.coexistent || !witness_valid(t, e, f, v)) continue;
        // The explicit witness g1 = min(e, f) must validate as well.
        const Effect g1({std::min(e.coords[0], f.coords[0]),
                         std::min(e.coords[1], f.coords[1])});
        const Effect g2 = e - g1;
        const Effect g3 = f - g1;
        const Effect g4 = t.unit - g1 - g2 - g3;
        if (is_effect(t, g1, 1e-9) && is_effect(t, g2, 1e-9) && is_effect(t, g3, 1e-9) &&
            is_effect(t, g4, 1e-9)) {
            ++ok;
        }
    }
    detail << "coexistent_with_valid_witnesses=" << ok << "/500";
    return ok == 500;
}

bool check_edge_structure(std::ostringstream& detail) {
    for (int n = 4; n <= 12; n += 2) {
        const Theory t = build_regular_polygon_theory(n);
        for (const Effect& e : nontrivial_extremals(t)) {
            if (!is_edge(t, t.zero, e) || !is_edge(t, e, t.unit)) {
                detail << "edge test failed for n=" << n;
                return false;
            }
            for (double l : {0.1, 0.25, 0.4}) {
                const auto slice = lower_set_slice(t, e, l);
                if (!slice.is_point()) {
                    detail << "lower-set slice not a point at n=" << n << " l=" << l;
                    return false;
                }
                const Vec2 expect = 2.0 * l * e.xy();
                if (geom::distance(slice.vertices()[0], expect) > 1e-7) {
                    detail << "lower-set slice misplaced at n=" << n << " l=" << l;
                    return false;
                }
            }
        }
    }
    // Complement closure of extremal sets across every built theory.
    std::vector<Theory> zoo;
    for (int n = 2; n <= 4; ++n) zoo.push_back(build_classical_theory(n));
    for (int n = 3; n <= 12; ++n) zoo.push_back(build_regular_polygon_theory(n));
    zoo.push_back(build_square_bit());
    for (double delta : {0.1, 0.25, 0.4}) zoo.push_back(build_displaced_hexagon(delta));
    for (const Theory& t : zoo) {
        for (const Effect& e : t.extremal_effects) {
            const Effect bar = effect_complement(t, e);
            bool found = false;
            for (const Effect& v : t.extremal_effects) {
                if (max_abs_diff(v, bar) <= 1e-9) {
                    found = true;
                    break;
                }
            }
            if (!found) {
                detail << "complement closure failed in " << t.name;
                return false;
            }
        }
    }
    detail << "edges + slices for even n<=12, complement closure over "
           << zoo.size() << " theories";
    return true;
}

bool check_determinism(const Options& opt, std::ostringstream& detail) {
    const auto region_once = [] {
        const RegionReport rep = coexistence_region(6, {1.0 / 3.0, 0.0});
        return region_csv(rep) + region_svg(rep);
    };
    const auto limit_once = [] {
        const Vec2 e{0.2, 0.0};
        return limit_csv(e, compute_limit_rows(e, {8, 16, 32}));
    };
    const bool region_same = region_once() == region_once();
    const bool limit_same = limit_once() == limit_once();
    const Theory t = build_regular_polygon_theory(6);
    const Effect e = nontrivial_extremals(t).front();
    const bool mc_same =
        coexistence_volume_fraction(t, e, 1000, opt.seed) ==
        coexistence_volume_fraction(t, e, 1000, opt.seed);
    detail << "region_bytes=" << (region_same ? "same" : "DIFFER")
           << " limit_bytes=" << (limit_same ? "same" : "DIFFER")
           << " mc=" << (mc_same ? "same" : "DIFFER");
    return region_same && limit_same && mc_same;
}

}  // namespace

std::vector<CheckResult> run_acceptance_checks(const Options& options) {
    std::vector<Check> checks;
    checks.push_back({"c01_polygon_extremals", [](std::ostringstream& d) { return check_polygon_extremals(d); }});
    checks.push_back({"c02_square_bit_table", [](std::ostringstream& d) { return check_square_bit_table(d); }});
    checks.push_back({"c03_criterion_oracle",
                      [](std::ostringstream& d) { return check_criterion_oracle(d); }});
    checks.push_back({"c04_extremal_vanishing", [&](std::ostringstream& d) {
                          return check_extremal_vanishing(options, d);
                      }});
    checks.push_back({"c05_parallelogram", [&](std::ostringstream& d) {
                          return check_parallelogram(options, d);
                      }});
    checks.push_back({"c06_symmetry_equivalence", [](std::ostringstream& d) { return check_symmetry_equivalence(d); }});
    checks.push_back({"c07_quantum_limit",
                      [](std::ostringstream& d) { return check_quantum_limit(d); }});
    checks.push_back({"c08_classical", [&](std::ostringstream& d) {
                          return check_classical(options, d);
                      }});
    checks.push_back({"c09_edge_structure",
                      [](std::ostringstream& d) { return check_edge_structure(d); }});
    checks.push_back({"c10_determinism", [&](std::ostringstream& d) {
                          return check_determinism(options, d);
                      }});

    std::vector<CheckResult> results;
    for (const Check& c : checks) {
        if (!options.only.empty() && c.id.find(options.only) == std::string::npos) {
            continue;
        }
        CheckResult r;
        r.id = c.id;
        std::ostringstream detail;
        const auto start = std::chrono::steady_clock::now();
        try {
            r.passed = c.run(detail);
        } catch (const std::exception& e) {
            r.passed = false;
            detail << "exception: " << e.what();
        }
        r.seconds = std::chrono::duration<double>(
                        std::chrono::steady_clock::now() - start)
                        .count();
        r.detail = detail.str();
        results.push_back(std::move(r));
    }
    return results;
}

}  // namespace polygpt::selftest
