#pragma once

#include <cmath>
#include <stdexcept>

namespace polygpt::geom {

/// Planar point / direction with finite components.
struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    constexpr Vec2() = default;
    Vec2(double x_, double y_) : x(x_), y(y_) {
        if (!std::isfinite(x) || !std::isfinite(y)) {
            throw std::invalid_argument("Vec2: components must be finite");
        }
    }

    Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    Vec2 operator-() const { return {-x, -y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }

    double dot(const Vec2& o) const { return x * o.x + y * o.y; }
    double cross(const Vec2& o) const { return x * o.y - y * o.x; }
    double norm() const { return std::hypot(x, y); }
};

inline Vec2 operator*(double s, const Vec2& v) { return v * s; }

inline double distance(const Vec2& a, const Vec2& b) { return (a - b).norm(); }

/// Closed halfplane {p : normal . p <= offset}.
struct HalfPlane2D {
    Vec2 normal;
    double offset = 0.0;

    HalfPlane2D(const Vec2& n, double off) : normal(n), offset(off) {
        if (normal.norm() <= 0.0) {
            throw std::invalid_argument("HalfPlane2D: normal must be nonzero");
        }
        if (!std::isfinite(offset)) {
            throw std::invalid_argument("HalfPlane2D: offset must be finite");
        }
    }

    /// Signed distance of p to the boundary line; negative inside.
    double signed_distance(const Vec2& p) const {
        return (normal.dot(p) - offset) / normal.norm();
    }

    bool contains(const Vec2& p, double tol) const {
        return signed_distance(p) <= tol;
    }
};

}  // namespace polygpt::geom
