#include <doctest.h>

#include <cmath>
#include <numbers>

#include "polygpt/geom/polygon.hpp"
#include "polygpt/rng.hpp"

using namespace polygpt;
using geom::ConvexPolygon2D;
using geom::HalfPlane2D;
using geom::Vec2;

namespace {

ConvexPolygon2D unit_square() {
    return ConvexPolygon2D::from_ccw_vertices({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
}

bool vertex_sets_match(const ConvexPolygon2D& a, const std::vector<Vec2>& expected,
                       double tol = 1e-9) {
    if (a.size() != expected.size()) return false;
    std::vector<bool> used(expected.size(), false);
    for (const Vec2& v : a.vertices()) {
        bool hit = false;
        for (std::size_t i = 0; i < expected.size(); ++i) {
            if (!used[i] && geom::distance(v, expected[i]) <= tol) {
                used[i] = hit = true;
                break;
            }
        }
        if (!hit) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("Vec2 rejects non-finite components") {
    CHECK_THROWS_AS(Vec2(std::nan(""), 0.0), std::invalid_argument);
    CHECK_THROWS_AS(Vec2(0.0, std::numeric_limits<double>::infinity()),
                    std::invalid_argument);
    CHECK_THROWS_AS(HalfPlane2D({0.0, 0.0}, 1.0), std::invalid_argument);
}

TEST_CASE("clip_halfplane basic cases") {
    const auto sq = unit_square();
    SUBCASE("axis-aligned bisection") {
        const auto half = clip_halfplane(sq, HalfPlane2D({1, 0}, 0.5));
        CHECK(vertex_sets_match(half, {{0, 0}, {0.5, 0}, {0.5, 1}, {0, 1}}));
    }
    SUBCASE("non-binding constraint leaves the square unchanged") {
        const auto same = clip_halfplane(sq, HalfPlane2D({1, 0}, 2.0));
        CHECK(vertex_sets_match(same, {{0, 0}, {1, 0}, {1, 1}, {0, 1}}));
    }
    SUBCASE("infeasible constraint empties the square") {
        CHECK(clip_halfplane(sq, HalfPlane2D({1, 0}, -1.0)).is_empty());
    }
    SUBCASE("clipping twice equals clipping once") {
        const HalfPlane2D hp({3, 1}, 1.7);
        const auto once = clip_halfplane(sq, hp);
        const auto twice = clip_halfplane(once, hp);
        REQUIRE(once.size() == twice.size());
        for (std::size_t i = 0; i < once.size(); ++i) {
            CHECK(geom::distance(once.vertices()[i], twice.vertices()[i]) < 1e-9);
        }
    }
    SUBCASE("degenerate inputs survive clipping") {
        const auto pt = ConvexPolygon2D::point({0.2, 0.2});
        CHECK(clip_halfplane(pt, HalfPlane2D({1, 0}, 0.5)).is_point());
        CHECK(clip_halfplane(pt, HalfPlane2D({1, 0}, 0.1)).is_empty());
        const auto seg = ConvexPolygon2D::segment({0, 0}, {1, 0});
        const auto cut = clip_halfplane(seg, HalfPlane2D({1, 0}, 0.25));
        REQUIRE(cut.is_segment());
        CHECK(geom::distance(cut.vertices()[1], {0.25, 0}) < 1e-12);
    }
}

TEST_CASE("intersect_halfplanes") {
    const auto bound = ConvexPolygon2D::from_ccw_vertices(
        {{-10, -10}, {10, -10}, {10, 10}, {-10, 10}});
    SUBCASE("|x|<=0.5, |y|<=0.5") {
        std::vector<HalfPlane2D> hps{{{1, 0}, 0.5}, {{-1, 0}, 0.5}, {{0, 1}, 0.5}, {{0, -1}, 0.5}};
        const auto box = intersect_halfplanes(hps, bound);
        CHECK(vertex_sets_match(box, {{0.5, 0.5}, {-0.5, 0.5}, {-0.5, -0.5}, {0.5, -0.5}}));
    }
    SUBCASE("empty list is the identity") {
        const auto same = intersect_halfplanes({}, bound);
        CHECK(vertex_sets_match(same, bound.vertices()));
    }
    SUBCASE("eight halfplanes of R_{1/2} give the regular octagon") {
        // Oracle: vertices at circumradius l / cos(pi/n), angles (2k+1)pi/n.
        const auto hps = geom::regular_constraint_halfplanes(8, 0.5, {0, 0});
        const auto oct = intersect_halfplanes(hps, bound);
        std::vector<Vec2> expected;
        const double r = 0.5 / std::cos(std::numbers::pi / 8);
        for (int k = 0; k < 8; ++k) {
            const double th = (2.0 * k + 1.0) * std::numbers::pi / 8;
            expected.emplace_back(r * std::cos(th), r * std::sin(th));
        }
        CHECK(vertex_sets_match(oct, expected, 1e-9));
    }
    SUBCASE("order of halfplanes does not matter") {
        std::vector<HalfPlane2D> hps{{{1, 0.2}, 0.4}, {{-1, 1}, 0.7}, {{0, -1}, 0.3}, {{0.5, 1}, 0.6}};
        const auto fwd = intersect_halfplanes(hps, bound);
        std::reverse(hps.begin(), hps.end());
        const auto rev = intersect_halfplanes(hps, bound);
        CHECK(vertex_sets_match(fwd, rev.vertices(), 1e-9));
    }
    SUBCASE("empty bound is rejected") {
        CHECK_THROWS_AS(intersect_halfplanes({}, ConvexPolygon2D::empty()),
                        std::invalid_argument);
    }
}

TEST_CASE("minkowski_sum") {
    const auto sq = unit_square();
    SUBCASE("square + square doubles the square") {
        const auto s2 = minkowski_sum(sq, sq);
        CHECK(vertex_sets_match(s2, {{0, 0}, {2, 0}, {2, 2}, {0, 2}}));
        CHECK(polygon_area(s2) == doctest::Approx(4.0).epsilon(1e-12));
    }
    SUBCASE("point summand translates") {
        const auto moved = minkowski_sum(sq, ConvexPolygon2D::point({3, -1}));
        CHECK(vertex_sets_match(moved, {{3, -1}, {4, -1}, {4, 0}, {3, 0}}));
    }
    SUBCASE("orthogonal segments sum to the unit square") {
        const auto a = ConvexPolygon2D::segment({0, 0}, {1, 0});
        const auto b = ConvexPolygon2D::segment({0, 0}, {0, 1});
        CHECK(vertex_sets_match(minkowski_sum(a, b), sq.vertices()));
    }
    SUBCASE("commutes and support functions add (16 directions)") {
        const auto p = geom::regular_constraint_polygon(6, 0.4, {0.1, -0.2});
        const auto q = geom::regular_constraint_polygon(4, 0.3, {-0.3, 0.25});
        const auto pq = minkowski_sum(p, q);
        const auto qp = minkowski_sum(q, p);
        CHECK(vertex_sets_match(pq, qp.vertices(), 1e-9));
        for (int k = 0; k < 16; ++k) {
            const double th = 2.0 * std::numbers::pi * k / 16;
            const Vec2 u{std::cos(th), std::sin(th)};
            CHECK(pq.support(u) ==
                  doctest::Approx(p.support(u) + q.support(u)).epsilon(1e-12));
        }
        CHECK(polygon_area(pq) >= polygon_area(p) + polygon_area(q) - 1e-12);
    }
    SUBCASE("translation equivariance") {
        const auto p = geom::regular_constraint_polygon(5, 0.4, {0, 0});
        const auto q = geom::regular_constraint_polygon(3, 0.2, {0, 0});
        const Vec2 t{0.7, -1.3};
        const auto moved = minkowski_sum(minkowski_sum(p, ConvexPolygon2D::point(t)), q);
        const auto then_moved = minkowski_sum(minkowski_sum(p, q), ConvexPolygon2D::point(t));
        CHECK(vertex_sets_match(moved, then_moved.vertices(), 1e-9));
    }
}

TEST_CASE("polygon_area") {
    CHECK(polygon_area(unit_square()) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(polygon_area(ConvexPolygon2D::empty()) == 0.0);
    CHECK(polygon_area(ConvexPolygon2D::point({1, 2})) == 0.0);
    CHECK(polygon_area(ConvexPolygon2D::segment({0, 0}, {2, 3})) == 0.0);

    // Oracle: regular polygon area n l^2 tan(pi/n) at apothem l.
    const auto oct = geom::regular_constraint_polygon(8, 0.5, {0, 0});
    CHECK(polygon_area(oct) ==
          doctest::Approx(8 * 0.25 * std::tan(std::numbers::pi / 8)).epsilon(1e-12));

    SUBCASE("invariant under vertex-list rotation and rigid rotation") {
        const auto hex = geom::regular_constraint_polygon(6, 0.37, {0.2, 0.1});
        const double base = polygon_area(hex);
        std::vector<Vec2> rotated_list(hex.vertices().begin() + 2, hex.vertices().end());
        rotated_list.insert(rotated_list.end(), hex.vertices().begin(),
                            hex.vertices().begin() + 2);
        CHECK(polygon_area(ConvexPolygon2D::from_ccw_vertices(rotated_list)) ==
              doctest::Approx(base).epsilon(1e-12));
        const double phi = 0.83;
        std::vector<Vec2> spun;
        for (const Vec2& v : hex.vertices()) {
            spun.emplace_back(v.x * std::cos(phi) - v.y * std::sin(phi),
                              v.x * std::sin(phi) + v.y * std::cos(phi));
        }
        CHECK(polygon_area(ConvexPolygon2D::from_ccw_vertices(spun)) ==
              doctest::Approx(base).epsilon(1e-9));
    }
}

TEST_CASE("contains_point") {
    const auto sq = unit_square();
    CHECK(contains_point(sq, {0.5, 0.5}, 1e-9));
    CHECK(contains_point(sq, {1.0, 1.0}, 1e-9));  // boundary inclusive
    CHECK_FALSE(contains_point(sq, {1.1, 0.5}, 1e-9));
    CHECK(contains_point(sq, {1.0 + 1e-10, 0.5}, 1e-9));
    CHECK(contains_point(ConvexPolygon2D::point({1, 1}), {1, 1}, 1e-9));
    CHECK_FALSE(contains_point(ConvexPolygon2D::empty(), {0, 0}, 1e-9));
    CHECK(contains_point(ConvexPolygon2D::segment({0, 0}, {1, 0}), {0.5, 0}, 1e-9));
    CHECK_FALSE(contains_point(ConvexPolygon2D::segment({0, 0}, {1, 0}), {0.5, 0.1}, 1e-9));
}

TEST_CASE("regular_constraint_polygon") {
    SUBCASE("n=4 apothem 1/2 is the square with corners (+-1/2, +-1/2)") {
        const auto sq = geom::regular_constraint_polygon(4, 0.5, {0, 0});
        CHECK(vertex_sets_match(sq, {{0.5, 0.5}, {-0.5, 0.5}, {-0.5, -0.5}, {0.5, -0.5}}));
    }
    SUBCASE("zero apothem collapses to the center") {
        const auto pt = geom::regular_constraint_polygon(6, 0.0, {0.3, -0.4});
        REQUIRE(pt.is_point());
        CHECK(geom::distance(pt.vertices()[0], {0.3, -0.4}) == 0.0);
    }
    SUBCASE("hexagon circumradius equals apothem / cos(pi/6)") {
        const auto hex = geom::regular_constraint_polygon(6, 0.5, {0, 0});
        const double expect = 0.5 / std::cos(std::numbers::pi / 6);
        for (const Vec2& v : hex.vertices()) {
            CHECK(v.norm() == doctest::Approx(expect).epsilon(1e-12));
        }
    }
    SUBCASE("rotational symmetry by 2pi/n about the center") {
        const auto hex = geom::regular_constraint_polygon(6, 0.4, {0.1, 0.2});
        const double th = std::numbers::pi / 3;
        for (const Vec2& v : hex.vertices()) {
            const Vec2 r{0.1 + (v.x - 0.1) * std::cos(th) - (v.y - 0.2) * std::sin(th),
                         0.2 + (v.x - 0.1) * std::sin(th) + (v.y - 0.2) * std::cos(th)};
            CHECK(contains_point(hex, r, 1e-9));
        }
    }
    SUBCASE("precondition violations") {
        CHECK_THROWS_AS(geom::regular_constraint_polygon(2, 0.5, {0, 0}),
                        std::invalid_argument);
        CHECK_THROWS_AS(geom::regular_constraint_polygon(5, -0.1, {0, 0}),
                        std::invalid_argument);
    }
    SUBCASE("matches the halfplane route") {
        for (int n : {3, 5, 8, 12}) {
            const auto direct = geom::regular_constraint_polygon(n, 0.35, {0.05, -0.02});
            const auto bound = ConvexPolygon2D::from_ccw_vertices(
                {{-5, -5}, {5, -5}, {5, 5}, {-5, 5}});
            const auto clipped = intersect_halfplanes(
                geom::regular_constraint_halfplanes(n, 0.35, {0.05, -0.02}), bound);
            CHECK(vertex_sets_match(direct, clipped.vertices(), 1e-9));
        }
    }
}
