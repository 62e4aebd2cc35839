#include <doctest.h>

#include <cmath>
#include <numbers>

#include "polygpt/coex/coexistence.hpp"
#include "polygpt/gpt/builders.hpp"
#include "polygpt/rng.hpp"

using namespace polygpt;
using geom::Vec2;

namespace {

Effect unbiased(const Vec2& p) { return Effect({p.x, p.y, 0.5}); }

Effect first_nontrivial(const Theory& t) {
    for (const Effect& e : t.extremal_effects) {
        if (max_abs_diff(e, t.zero) > 1e-9 && max_abs_diff(e, t.unit) > 1e-9) return e;
    }
    throw std::runtime_error("no nontrivial extremal");
}

bool witness_ok(const Theory& t, const Effect& e, const Effect& f,
                const CoexistenceVerdict& v) {
    if (!v.witness) return false;
    const auto& [g1, g2, g3] = *v.witness;
    if (max_abs_diff(g1 + g2, e) > 1e-9 || max_abs_diff(g1 + g3, f) > 1e-9) return false;
    const Effect g4 = t.unit - g1 - g2 - g3;
    return is_effect(t, g1, 1e-7) && is_effect(t, g2, 1e-7) && is_effect(t, g3, 1e-7) &&
           is_effect(t, g4, 1e-7);
}

}  // namespace

TEST_CASE("coexist_criterion_even_polygon") {
    SUBCASE("center coexists with everything, including the extremal vertices") {
        CHECK(coexist_criterion_even_polygon(6, {0, 0}, {0.3, 0.1}));
        const double r = 0.5 / std::cos(std::numbers::pi / 6);
        const double th = std::numbers::pi / 6;  // k=0 vertex of R_{1/2}
        CHECK(coexist_criterion_even_polygon(6, {0, 0},
                                             {r * std::cos(th), r * std::sin(th)}));
    }
    SUBCASE("extremal self-coexistence saturates the binding constraints") {
        const auto v = criterion_verdict(4, {0.5, 0.5}, {0.5, 0.5});
        CHECK(v.coexistent);
        REQUIRE(v.slack.has_value());
        CHECK(std::abs(*v.slack) <= 1e-9);  // exactly on the boundary
        CHECK_FALSE(v.binding.empty());
    }
    SUBCASE("n=4 orthogonal extremal pair is not coexistent") {
        const auto v = criterion_verdict(4, {0.5, 0.5}, {0.5, -0.5});
        CHECK_FALSE(v.coexistent);
        REQUIRE(v.slack.has_value());
        CHECK(*v.slack == doctest::Approx(-1.0).epsilon(1e-12));  // lhs max = 2
    }
    SUBCASE("odd n rejected") {
        CHECK_THROWS_AS(coexist_criterion_even_polygon(5, {0, 0}, {0, 0}),
                        std::invalid_argument);
    }
    SUBCASE("points outside the unbiased polygon rejected") {
        CHECK_THROWS_AS(coexist_criterion_even_polygon(6, {0.9, 0}, {0, 0}),
                        std::invalid_argument);
    }
}

TEST_CASE("coexist_oracle") {
    const Theory hex = build_regular_polygon_theory(6);
    SUBCASE("self-coexistence with a valid witness") {
        const Effect e = unbiased({0.21, -0.13});
        const auto v = coexist_oracle(hex, e, e);
        CHECK(v.coexistent);
        CHECK(witness_ok(hex, e, e, v));
    }
    SUBCASE("complement pairs coexist") {
        const Effect e = unbiased({0.3, 0.2});
        const Effect f = effect_complement(hex, e);
        const auto v = coexist_oracle(hex, e, f);
        CHECK(v.coexistent);
        CHECK(witness_ok(hex, e, f, v));
    }
    SUBCASE("adjacent extremals: oracle matches the criterion") {
        const auto nontrivial = [&] {
            std::vector<Effect> out;
            for (const Effect& e : hex.extremal_effects) {
                if (max_abs_diff(e, hex.zero) > 1e-9 && max_abs_diff(e, hex.unit) > 1e-9) {
                    out.push_back(e);
                }
            }
            return out;
        }();
        REQUIRE(nontrivial.size() == 6);
        const Effect& e = nontrivial[0];
        const Effect& f = nontrivial[1];
        const bool by_criterion = coexist_criterion_even_polygon(6, e.xy(), f.xy());
        const bool by_oracle = coexist_oracle(hex, e, f).coexistent;
        CHECK(by_criterion == by_oracle);
    }
    SUBCASE("non-effects are rejected") {
        CHECK_THROWS_AS(coexist_oracle(hex, Effect({2.0, 0.0, 0.5}), hex.unit),
                        std::invalid_argument);
    }
}

TEST_CASE("coexistence_region") {
    SUBCASE("center: the full unbiased polygon, area n tan(pi/n) / 4") {
        for (int n : {4, 6, 8}) {
            const auto rep = coexistence_region(n, {0, 0});
            CHECK(rep.area ==
                  doctest::Approx(n * std::tan(std::numbers::pi / n) / 4.0).epsilon(1e-9));
            CHECK(geom::contains_point(rep.region, {0, 0}, 1e-9));
        }
    }
    SUBCASE("extremal effect: degenerate region") {
        const Theory hex = build_regular_polygon_theory(6);
        const Effect e = first_nontrivial(hex);
        const auto rep = coexistence_region(6, e.xy());
        CHECK(rep.area < 1e-12);
        CHECK(geom::contains_point(rep.region, e.xy(), 1e-7));  // self-coexistence
    }
    SUBCASE("monotone shrinkage toward the edge midpoint") {
        // e = r * apothem toward the k=0 edge; areas non-increasing in r.
        double prev = std::numeric_limits<double>::infinity();
        for (double r : {0.0, 1.0 / 3.0, 2.0 / 3.0, 1.0}) {
            const auto rep = coexistence_region(6, {0.5 * r, 0.0});
            CHECK(rep.area <= prev + 1e-12);
            if (r > 0.0) CHECK(rep.area < prev);
            prev = rep.area;
        }
    }
    SUBCASE("region(e) equals region(-e) vertexwise") {
        const Vec2 e{0.21, 0.17};
        const auto a = coexistence_region(6, e);
        const auto b = coexistence_region(6, -e);
        REQUIRE(a.region.size() == b.region.size());
        for (const Vec2& v : a.region.vertices()) {
            CHECK(geom::contains_point(b.region, v, 1e-9));
        }
        CHECK(a.area == doctest::Approx(b.area).epsilon(1e-12));
    }
    SUBCASE("region membership matches the criterion away from the slack band") {
        const Vec2 e{1.0 / 3.0, 0.0};
        const auto rep = coexistence_region(6, e);
        int checked = 0;
        for (int i = 0; i < 50; ++i) {
            for (int j = 0; j < 50; ++j) {
                const double r = 0.5 / std::cos(std::numbers::pi / 6);
                const Vec2 f{-r + 2.0 * r * (i + 0.5) / 50, -r + 2.0 * r * (j + 0.5) / 50};
                if (!geom::contains_point(rep.clipped_to, f, -1e-9)) continue;
                const auto v = criterion_verdict(6, e, f);
                if (std::abs(*v.slack) <= 1e-6) continue;
                CHECK(geom::contains_point(rep.region, f, 1e-9) == v.coexistent);
                ++checked;
            }
        }
        CHECK(checked > 1500);
    }
}

TEST_CASE("busch criteria") {
    SUBCASE("identical sharp effects coexist (boundary)") {
        CHECK(busch_coexistent(BuschEffectPair(std::array<double, 3>{1, 0, 0},
                                               std::array<double, 3>{1, 0, 0})));
    }
    SUBCASE("orthogonal sharp effects do not") {
        CHECK_FALSE(busch_coexistent(BuschEffectPair(std::array<double, 3>{1, 0, 0},
                                                     std::array<double, 3>{0, 1, 0})));
    }
    SUBCASE("soft orthogonal pair does (sqrt(1/2) < 1)") {
        CHECK(busch_coexistent(BuschEffectPair(std::array<double, 3>{0.5, 0, 0},
                                               std::array<double, 3>{0, 0.5, 0})));
    }
    SUBCASE("norm guard") {
        CHECK_THROWS_AS(busch_coexistent(BuschEffectPair(std::array<double, 3>{1.1, 0, 0},
                                                         std::array<double, 3>{0, 0, 0})),
                        std::invalid_argument);
    }
    SUBCASE("planar membership: 3-4-5 boundary case") {
        CHECK(busch_planar_region_membership({0.3, 0.0}, {0.0, 0.4}));  // sums to exactly 1
        CHECK(busch_planar_region_membership({0.3, 0.0}, {0.3, 0.0}));
        CHECK(busch_planar_region_membership({0.0, 0.0}, {0.49, 0.0}));
        CHECK_FALSE(busch_planar_region_membership({0.3, 0.0}, {0.0, 0.41}));
        CHECK_THROWS_AS(busch_planar_region_membership({0.6, 0.0}, {0, 0}),
                        std::invalid_argument);
    }
    SUBCASE("planar form agrees with the Bloch form under lambda = 2e") {
        for (int i = 0; i < 100; ++i) {
            SplitMix64 g(substream_seed(31337, static_cast<std::uint64_t>(i)));
            const Vec2 e{-0.35 + 0.7 * g.next_double(), -0.35 + 0.7 * g.next_double()};
            const Vec2 f{-0.35 + 0.7 * g.next_double(), -0.35 + 0.7 * g.next_double()};
            CHECK(busch_planar_region_membership(e, f) ==
                  busch_coexistent(BuschEffectPair(bloch_from_unbiased(e),
                                                   bloch_from_unbiased(f))));
        }
    }
    SUBCASE("busch-true implies polygon-criterion-true (n = 64)") {
        for (int i = 0; i < 50; ++i) {
            SplitMix64 g(substream_seed(90210, static_cast<std::uint64_t>(i)));
            const double re = 0.45 * g.next_double();
            const double te = 2 * std::numbers::pi * g.next_double();
            const double rf = 0.45 * g.next_double();
            const double tf = 2 * std::numbers::pi * g.next_double();
            const Vec2 e{re * std::cos(te), re * std::sin(te)};
            const Vec2 f{rf * std::cos(tf), rf * std::sin(tf)};
            if (busch_planar_region_membership(e, f)) {
                CHECK(coexist_criterion_even_polygon(64, e, f));
            }
        }
    }
}

TEST_CASE("quantum_limit_gap") {
    SUBCASE("center gap has the closed form n tan(pi/n) / pi - 1") {
        for (int n : {8, 16}) {
            const double expect = n * std::tan(std::numbers::pi / n) / std::numbers::pi - 1.0;
            CHECK(quantum_limit_gap(n, {0, 0}) == doctest::Approx(expect).epsilon(1e-9));
        }
    }
    SUBCASE("gap shrinks with n and is small at n=200") {
        const Vec2 e{0.2, 0.0};
        const double g8 = quantum_limit_gap(8, e);
        const double g32 = quantum_limit_gap(32, e);
        const double g200 = quantum_limit_gap(200, e);
        CHECK(g32 < g8);
        CHECK(g200 < 0.01);
    }
    SUBCASE("rejects |e| >= 1/2") {
        CHECK_THROWS_AS(quantum_limit_gap(8, {0.5, 0.0}), std::invalid_argument);
        CHECK_THROWS_AS(quantum_limit_gap(8, {0.6, 0.0}), std::invalid_argument);
    }
}

TEST_CASE("extremal_coexistence_set") {
    const Theory hex = build_regular_polygon_theory(6);
    const Effect e = first_nontrivial(hex);
    const auto corners = extremal_coexistence_set(hex, e);
    CHECK(max_abs_diff(corners[0], hex.zero) == 0.0);
    CHECK(max_abs_diff(corners[3], hex.unit) == 0.0);
    CHECK(max_abs_diff(corners[1] + corners[2], hex.unit) <= 1e-12);

    SUBCASE("center and e itself are members") {
        CHECK(in_extremal_coexistence_set(hex, e, 0.5 * hex.unit));
        CHECK(in_extremal_coexistence_set(hex, e, e));
        CHECK(in_extremal_coexistence_set(hex, e, hex.zero));
        CHECK(in_extremal_coexistence_set(hex, e, hex.unit));
    }
    SUBCASE("adjacent extremal is not a member and the oracle agrees") {
        Effect f = hex.zero;
        for (const Effect& cand : hex.extremal_effects) {
            if (max_abs_diff(cand, hex.zero) > 1e-9 && max_abs_diff(cand, hex.unit) > 1e-9 &&
                max_abs_diff(cand, e) > 1e-9 &&
                max_abs_diff(cand, effect_complement(hex, e)) > 1e-9) {
                f = cand;
                break;
            }
        }
        CHECK_FALSE(in_extremal_coexistence_set(hex, e, f));
        CHECK_FALSE(coexist_oracle(hex, e, f).coexistent);
    }
    SUBCASE("trivial or non-extremal e rejected") {
        CHECK_THROWS_AS(extremal_coexistence_set(hex, hex.zero), std::invalid_argument);
        CHECK_THROWS_AS(extremal_coexistence_set(hex, Effect({0.1, 0.0, 0.5})),
                        std::invalid_argument);
    }
}

TEST_CASE("coexistence_volume_fraction") {
    const Theory hex = build_regular_polygon_theory(6);
    SUBCASE("center coexists with every sample") {
        CHECK(coexistence_volume_fraction(hex, 0.5 * hex.unit, 1000, 5) == 1.0);
    }
    SUBCASE("deterministic under a fixed seed, validates sample count") {
        const double a = coexistence_volume_fraction(hex, first_nontrivial(hex), 1000, 11);
        const double b = coexistence_volume_fraction(hex, first_nontrivial(hex), 1000, 11);
        CHECK(a == b);
        CHECK_THROWS_AS(coexistence_volume_fraction(hex, hex.unit, 10, 1),
                        std::invalid_argument);
    }
}

TEST_CASE("lower_set_slice") {
    const Theory hex = build_regular_polygon_theory(6);
    SUBCASE("l=0 collapses to the origin") {
        const auto s = lower_set_slice(hex, unbiased({0.2, 0.1}), 0.0);
        REQUIRE(s.is_point());
        CHECK(geom::distance(s.vertices()[0], {0, 0}) <= 1e-12);
    }
    SUBCASE("extremal e: single point at 2 l e_xy") {
        const Effect e = first_nontrivial(hex);
        const auto s = lower_set_slice(hex, e, 0.25);
        REQUIRE(s.is_point());
        CHECK(geom::distance(s.vertices()[0], 0.5 * e.xy()) <= 1e-7);
    }
    SUBCASE("center: R_l(0) itself") {
        const auto s = lower_set_slice(hex, Effect({0, 0, 0.5}), 0.25);
        const auto expect = geom::regular_constraint_polygon(6, 0.25, {0, 0});
        REQUIRE(s.size() == expect.size());
        for (const Vec2& v : expect.vertices()) {
            CHECK(geom::contains_point(s, v, 1e-9));
        }
    }
    SUBCASE("guards") {
        CHECK_THROWS_AS(lower_set_slice(hex, unbiased({0, 0}), 0.6), std::invalid_argument);
        CHECK_THROWS_AS(lower_set_slice(hex, unbiased({0, 0}), -0.1), std::invalid_argument);
        CHECK_THROWS_AS(lower_set_slice(hex, Effect({0, 0, 0.4}), 0.2),
                        std::invalid_argument);
        CHECK_THROWS_AS(lower_set_slice(build_regular_polygon_theory(5), unbiased({0, 0}), 0.2),
                        std::invalid_argument);
    }
}

TEST_CASE("self- and complement-coexistence hold for sampled unbiased effects") {
    const Theory hex = build_regular_polygon_theory(6);
    for (int i = 0; i < 40; ++i) {
        SplitMix64 g(substream_seed(606, static_cast<std::uint64_t>(i)));
        const double r = 0.45 * g.next_double();
        const double th = 2 * std::numbers::pi * g.next_double();
        const Vec2 p{r * std::cos(th), r * std::sin(th)};
        CHECK(coexist_criterion_even_polygon(6, p, p));
        const Effect e = unbiased(p);
        CHECK(coexist_oracle(hex, e, e).coexistent);
        CHECK(coexist_oracle(hex, e, effect_complement(hex, e)).coexistent);
    }
}
