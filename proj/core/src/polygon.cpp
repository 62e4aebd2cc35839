#include "polygpt/geom/polygon.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace polygpt::geom {

namespace {

// Merges consecutive near-duplicates and collinear middles of a closed loop.
std::vector<Vec2> canonicalize_loop(std::vector<Vec2> loop) {
    // Duplicate merge first, including the wrap-around pair.
    std::vector<Vec2> out;
    for (const Vec2& v : loop) {
        if (out.empty() || distance(out.back(), v) > kDedupTol) {
            out.push_back(v);
        }
    }
    while (out.size() > 1 && distance(out.front(), out.back()) <= kDedupTol) {
        out.pop_back();
    }
    if (out.size() < 3) return out;

    // Drop middle vertices of nearly collinear triples.
    std::vector<Vec2> slim;
    const std::size_t n = out.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2& prev = out[(i + n - 1) % n];
        const Vec2& cur = out[i];
        const Vec2& next = out[(i + 1) % n];
        const double cr = (cur - prev).cross(next - cur);
        if (std::abs(cr) > kGeomTol) {
            slim.push_back(cur);
        }
    }
    if (slim.size() < 3) {
        // The loop is a sliver: collapse to its two extreme points (or one).
        auto [mnx, mxx] = std::minmax_element(out.begin(), out.end(),
            [](const Vec2& a, const Vec2& b) {
                return a.x < b.x || (a.x == b.x && a.y < b.y);
            });
        if (distance(*mnx, *mxx) <= kDedupTol) return {*mnx};
        return {*mnx, *mxx};
    }
    return slim;
}

bool is_ccw_convex(const std::vector<Vec2>& v) {
    const std::size_t n = v.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 a = v[(i + 1) % n] - v[i];
        const Vec2 b = v[(i + 2) % n] - v[(i + 1) % n];
        if (a.cross(b) < -kGeomTol) return false;
    }
    return true;
}

}  // namespace

ConvexPolygon2D ConvexPolygon2D::from_loop_unchecked(std::vector<Vec2> loop) {
    ConvexPolygon2D p;
    p.verts_ = canonicalize_loop(std::move(loop));
    return p;
}

ConvexPolygon2D ConvexPolygon2D::from_ccw_vertices(std::vector<Vec2> vertices) {
    ConvexPolygon2D p = from_loop_unchecked(std::move(vertices));
    if (p.verts_.size() >= 3 && !is_ccw_convex(p.verts_)) {
        throw std::invalid_argument("ConvexPolygon2D: vertex ring is not convex CCW");
    }
    return p;
}

ConvexPolygon2D ConvexPolygon2D::point(const Vec2& v) {
    ConvexPolygon2D p;
    p.verts_ = {v};
    return p;
}

ConvexPolygon2D ConvexPolygon2D::segment(const Vec2& a, const Vec2& b) {
    ConvexPolygon2D p;
    if (distance(a, b) <= kDedupTol) {
        p.verts_ = {a};
    } else {
        p.verts_ = {a, b};
    }
    return p;
}

double ConvexPolygon2D::support(const Vec2& dir) const {
    if (verts_.empty()) {
        throw std::invalid_argument("support: empty polygon");
    }
    double best = dir.dot(verts_[0]);
    for (const Vec2& v : verts_) best = std::max(best, dir.dot(v));
    return best;
}

ConvexPolygon2D clip_halfplane(const ConvexPolygon2D& poly, const HalfPlane2D& hp) {
    const auto& vs = poly.vertices();
    if (vs.empty()) return ConvexPolygon2D::empty();

    if (vs.size() == 1) {
        return hp.contains(vs[0], kGeomTol) ? poly : ConvexPolygon2D::empty();
    }
    if (vs.size() == 2) {
        const double da = hp.signed_distance(vs[0]);
        const double db = hp.signed_distance(vs[1]);
        const bool ia = da <= kGeomTol;
        const bool ib = db <= kGeomTol;
        if (ia && ib) return poly;
        if (!ia && !ib) return ConvexPolygon2D::empty();
        const double t = std::clamp(da / (da - db), 0.0, 1.0);
        const Vec2 cut = vs[0] + t * (vs[1] - vs[0]);
        return ia ? ConvexPolygon2D::segment(vs[0], cut)
                  : ConvexPolygon2D::segment(cut, vs[1]);
    }

    // Sutherland-Hodgman against a single halfplane.
    std::vector<Vec2> out;
    out.reserve(vs.size() + 1);
    const std::size_t n = vs.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2& cur = vs[i];
        const Vec2& nxt = vs[(i + 1) % n];
        const double dc = hp.signed_distance(cur);
        const double dn = hp.signed_distance(nxt);
        const bool in_c = dc <= kGeomTol;
        const bool in_n = dn <= kGeomTol;
        if (in_c) out.push_back(cur);
        if (in_c != in_n && std::abs(dc - dn) > 0.0) {
            const double t = std::clamp(dc / (dc - dn), 0.0, 1.0);
            out.push_back(cur + t * (nxt - cur));
        }
    }
    return ConvexPolygon2D::from_loop_unchecked(std::move(out));
}

ConvexPolygon2D intersect_halfplanes(const std::vector<HalfPlane2D>& hps,
                                     const ConvexPolygon2D& bound) {
    if (bound.is_empty()) {
        throw std::invalid_argument("intersect_halfplanes: bound must be nonempty");
    }
    ConvexPolygon2D acc = bound;
    for (const HalfPlane2D& hp : hps) {
        acc = clip_halfplane(acc, hp);
        if (acc.is_empty()) break;
    }
    return acc;
}

ConvexPolygon2D convex_hull(std::vector<Vec2> points) {
    if (points.empty()) return ConvexPolygon2D::empty();
    std::sort(points.begin(), points.end(), [](const Vec2& a, const Vec2& b) {
        return a.x < b.x || (a.x == b.x && a.y < b.y);
    });
    points.erase(std::unique(points.begin(), points.end(),
                             [](const Vec2& a, const Vec2& b) {
                                 return distance(a, b) <= kDedupTol;
                             }),
                 points.end());
    const std::size_t n = points.size();
    if (n <= 2) return ConvexPolygon2D::from_loop_unchecked(std::move(points));

    std::vector<Vec2> hull(2 * n);
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) {  // lower chain
        while (k >= 2 && (hull[k - 1] - hull[k - 2]).cross(points[i] - hull[k - 2]) <= kGeomTol) --k;
        hull[k++] = points[i];
    }
    const std::size_t lower = k + 1;
    for (std::size_t i = n - 1; i-- > 0;) {  // upper chain
        while (k >= lower && (hull[k - 1] - hull[k - 2]).cross(points[i] - hull[k - 2]) <= kGeomTol) --k;
        hull[k++] = points[i];
    }
    hull.resize(k - 1);
    return ConvexPolygon2D::from_loop_unchecked(std::move(hull));
}

ConvexPolygon2D minkowski_sum(const ConvexPolygon2D& p, const ConvexPolygon2D& q) {
    if (p.is_empty() || q.is_empty()) return ConvexPolygon2D::empty();
    std::vector<Vec2> sums;
    sums.reserve(p.size() * q.size());
    for (const Vec2& a : p.vertices()) {
        for (const Vec2& b : q.vertices()) {
            sums.push_back(a + b);
        }
    }
    return convex_hull(std::move(sums));
}

double polygon_area(const ConvexPolygon2D& poly) {
    const auto& v = poly.vertices();
    if (v.size() < 3) return 0.0;
    double twice = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const Vec2& a = v[i];
        const Vec2& b = v[(i + 1) % v.size()];
        twice += a.cross(b);
    }
    return 0.5 * twice;
}

namespace {

double distance_to_segment(const Vec2& a, const Vec2& b, const Vec2& p) {
    const Vec2 ab = b - a;
    const double len2 = ab.dot(ab);
    if (len2 == 0.0) return distance(a, p);
    const double t = std::clamp((p - a).dot(ab) / len2, 0.0, 1.0);
    return distance(a + t * ab, p);
}

}  // namespace

bool contains_point(const ConvexPolygon2D& poly, const Vec2& pt, double tol) {
    const auto& v = poly.vertices();
    if (v.empty()) return false;
    if (v.size() == 1) return distance(v[0], pt) <= tol;
    if (v.size() == 2) return distance_to_segment(v[0], v[1], pt) <= tol;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const Vec2& a = v[i];
        const Vec2& b = v[(i + 1) % v.size()];
        const Vec2 edge = b - a;
        // Signed distance of pt to the edge line, positive on the inside.
        const double d = edge.cross(pt - a) / edge.norm();
        if (d < -tol) return false;
    }
    return true;
}

std::vector<HalfPlane2D> regular_constraint_halfplanes(int n, double l, const Vec2& x0) {
    if (n < 3) throw std::invalid_argument("regular polygon: n must be >= 3");
    if (l < 0.0) throw std::invalid_argument("regular polygon: apothem must be >= 0");
    std::vector<HalfPlane2D> hps;
    hps.reserve(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        const double th = 2.0 * std::numbers::pi * k / n;
        const Vec2 normal{std::cos(th), std::sin(th)};
        hps.emplace_back(normal, l + normal.dot(x0));
    }
    return hps;
}

ConvexPolygon2D regular_constraint_polygon(int n, double l, const Vec2& x0) {
    if (n < 3) throw std::invalid_argument("regular polygon: n must be >= 3");
    if (l < 0.0) throw std::invalid_argument("regular polygon: apothem must be >= 0");
    if (l == 0.0) return ConvexPolygon2D::point(x0);
    // Vertices sit between adjacent edge normals, at the circumradius.
    const double radius = l / std::cos(std::numbers::pi / n);
    std::vector<Vec2> verts;
    verts.reserve(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        const double th = (2.0 * k + 1.0) * std::numbers::pi / n;
        verts.push_back(x0 + radius * Vec2{std::cos(th), std::sin(th)});
    }
    return ConvexPolygon2D::from_ccw_vertices(std::move(verts));
}

}  // namespace polygpt::geom
