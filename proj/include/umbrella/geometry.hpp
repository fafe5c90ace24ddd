#pragma once

#include <cmath>
#include <optional>
#include <utility>

namespace umbrella {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2() = default;
    Vec2(double x_, double y_) : x(x_), y(y_) {}

    Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double k) const { return {x * k, y * k}; }
    Vec2 operator/(double k) const { return {x / k, y / k}; }
    Vec2 operator-() const { return {-x, -y}; }

    double dot(const Vec2& o) const { return x * o.x + y * o.y; }
    double cross(const Vec2& o) const { return x * o.y - y * o.x; }
    double norm() const { return std::hypot(x, y); }
    double norm2() const { return x * x + y * y; }

    /// Rotation by +90 degrees (counterclockwise).
    Vec2 perp() const { return {-y, x}; }

    Vec2 normalized() const {
        const double n = norm();
        return {x / n, y / n};
    }
};

inline Vec2 operator*(double k, const Vec2& v) { return v * k; }

/// 2x2 real matrix, row major.
struct Mat2 {
    double m00 = 0.0, m01 = 0.0;
    double m10 = 0.0, m11 = 0.0;

    static Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }

    Mat2 operator*(const Mat2& o) const {
        return {m00 * o.m00 + m01 * o.m10, m00 * o.m01 + m01 * o.m11,
                m10 * o.m00 + m11 * o.m10, m10 * o.m01 + m11 * o.m11};
    }
    Vec2 operator*(const Vec2& v) const {
        return {m00 * v.x + m01 * v.y, m10 * v.x + m11 * v.y};
    }
    Mat2 operator-(const Mat2& o) const {
        return {m00 - o.m00, m01 - o.m01, m10 - o.m10, m11 - o.m11};
    }
    double trace() const { return m00 + m11; }
    double det() const { return m00 * m11 - m01 * m10; }
};

/// Wraps an angle into [0, 2*pi).
inline double wrap_angle(double phi) {
    phi = std::fmod(phi, kTwoPi);
    if (phi < 0.0) phi += kTwoPi;
    return phi;
}

/// Wraps into (0, 2*pi]; used for arc extents where zero means full turn.
inline double wrap_angle_positive(double phi) {
    phi = wrap_angle(phi);
    return phi == 0.0 ? kTwoPi : phi;
}

/// Wraps a coordinate difference into [-period/2, period/2).
inline double wrap_signed(double d, double period) {
    d = std::fmod(d, period);
    if (d < -0.5 * period) d += period;
    if (d >= 0.5 * period) d -= period;
    return d;
}

struct Circle {
    Vec2 center;
    double radius = 1.0;

    bool contains(const Vec2& p, double tol = 0.0) const {
        return (p - center).norm() <= radius + tol;
    }
    /// Signed distance to the disk boundary, negative inside.
    double boundary_depth(const Vec2& p) const {
        return (p - center).norm() - radius;
    }
};

/// Intersection points of two circle boundaries, or nullopt when the circles
/// do not cross transversally. The first point lies to the left of the axis
/// from a.center to b.center.
inline std::optional<std::pair<Vec2, Vec2>> circle_intersections(const Circle& a,
                                                                 const Circle& b) {
    const Vec2 ab = b.center - a.center;
    const double d = ab.norm();
    if (d < 1e-14) return std::nullopt;
    const double along = (d * d + a.radius * a.radius - b.radius * b.radius) / (2.0 * d);
    const double h2 = a.radius * a.radius - along * along;
    if (h2 <= 0.0) return std::nullopt;
    const Vec2 u = ab / d;
    const Vec2 base = a.center + along * u;
    const Vec2 off = std::sqrt(h2) * u.perp();
    return std::make_pair(base + off, base - off);
}

}  // namespace umbrella
