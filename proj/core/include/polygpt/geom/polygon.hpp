#pragma once

#include <vector>

#include "polygpt/geom/vec2.hpp"

namespace polygpt::geom {

/// Predicate tolerance for orientation / membership tests.
inline constexpr double kGeomTol = 1e-9;
/// Tolerance used when merging nearly identical vertices.
inline constexpr double kDedupTol = 1e-7;

/// Convex region given by its counterclockwise vertex ring.
///
/// Degenerate regions are first-class values: an empty vertex list is the
/// empty set, one vertex is a point, two vertices are a segment.
class ConvexPolygon2D {
  public:
    ConvexPolygon2D() = default;

    /// Builds from a CCW vertex ring. Merges duplicate and collinear
    /// vertices, then rejects rings that are not convex CCW within kGeomTol.
    static ConvexPolygon2D from_ccw_vertices(std::vector<Vec2> vertices);

    static ConvexPolygon2D empty() { return {}; }
    static ConvexPolygon2D point(const Vec2& v);
    static ConvexPolygon2D segment(const Vec2& a, const Vec2& b);

    const std::vector<Vec2>& vertices() const { return verts_; }
    std::size_t size() const { return verts_.size(); }

    bool is_empty() const { return verts_.empty(); }
    bool is_point() const { return verts_.size() == 1; }
    bool is_segment() const { return verts_.size() == 2; }
    /// True when the region has no interior (empty, point or segment).
    bool is_degenerate() const { return verts_.size() < 3; }

    /// Support function value max_{v in poly} dir . v. Throws when empty.
    double support(const Vec2& dir) const;

  private:
    friend ConvexPolygon2D clip_halfplane(const ConvexPolygon2D&, const HalfPlane2D&);
    friend ConvexPolygon2D convex_hull(std::vector<Vec2> points);

    static ConvexPolygon2D from_loop_unchecked(std::vector<Vec2> loop);

    std::vector<Vec2> verts_;
};

/// poly ∩ {p : hp.normal . p <= hp.offset}. The result may be degenerate.
ConvexPolygon2D clip_halfplane(const ConvexPolygon2D& poly, const HalfPlane2D& hp);

/// bound ∩ (∩ hps). `bound` must be nonempty.
ConvexPolygon2D intersect_halfplanes(const std::vector<HalfPlane2D>& hps,
                                     const ConvexPolygon2D& bound);

/// Minkowski sum {a + b : a in p, b in q}.
ConvexPolygon2D minkowski_sum(const ConvexPolygon2D& p, const ConvexPolygon2D& q);

/// Shoelace area; zero for degenerate polygons.
double polygon_area(const ConvexPolygon2D& poly);

/// True iff pt lies within tol of the (closed) region.
bool contains_point(const ConvexPolygon2D& poly, const Vec2& pt, double tol = kGeomTol);

/// Regular n-gon R_l(x0) with apothem l: edge k has outward normal at angle
/// 2*k*pi/n and distance l from x0. l = 0 collapses to the point x0.
ConvexPolygon2D regular_constraint_polygon(int n, double l, const Vec2& x0);

/// The n halfplane constraints that define regular_constraint_polygon.
std::vector<HalfPlane2D> regular_constraint_halfplanes(int n, double l, const Vec2& x0);

/// CCW convex hull of a point cloud (monotone chain).
ConvexPolygon2D convex_hull(std::vector<Vec2> points);

}  // namespace polygpt::geom
