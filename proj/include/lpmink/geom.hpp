#pragma once

// Small fixed-dimension vector helpers shared by the whole library.
// Dimensions are 2 or 3 throughout; 2-d data is stored in Vec3 with z = 0
// where a uniform representation keeps the code simpler.

#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace lpmink {

using Vec2 = std::array<double, 2>;
using Vec3 = std::array<double, 3>;

inline double dot(const Vec3& a, const Vec3& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

inline double dot(const Vec2& a, const Vec2& b) { return a[0] * b[0] + a[1] * b[1]; }

inline Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

// z-component of the 2-d cross product
inline double cross2(const Vec2& a, const Vec2& b) { return a[0] * b[1] - a[1] * b[0]; }

inline Vec3 add(const Vec3& a, const Vec3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
inline Vec3 sub(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
inline Vec3 scale(const Vec3& a, double s) { return {a[0] * s, a[1] * s, a[2] * s}; }
inline Vec2 add(const Vec2& a, const Vec2& b) { return {a[0] + b[0], a[1] + b[1]}; }
inline Vec2 sub(const Vec2& a, const Vec2& b) { return {a[0] - b[0], a[1] - b[1]}; }
inline Vec2 scale(const Vec2& a, double s) { return {a[0] * s, a[1] * s}; }

inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }
inline double norm(const Vec2& a) { return std::sqrt(dot(a, a)); }

inline Vec3 normalized(const Vec3& a) {
    double n = norm(a);
    if (n == 0.0) throw std::domain_error("cannot normalize the zero vector");
    return scale(a, 1.0 / n);
}

inline double dist(const Vec3& a, const Vec3& b) { return norm(sub(a, b)); }
inline double dist(const Vec2& a, const Vec2& b) { return norm(sub(a, b)); }

// Orthonormal basis (s, t) of the plane orthogonal to a unit vector u,
// with (s, t, u) right-handed.
inline std::pair<Vec3, Vec3> orthonormal_basis(const Vec3& u) {
    Vec3 a = std::abs(u[0]) < 0.9 ? Vec3{1.0, 0.0, 0.0} : Vec3{0.0, 1.0, 0.0};
    Vec3 s = normalized(sub(a, scale(u, dot(a, u))));
    Vec3 t = cross(u, s);
    return {s, t};
}

// Angle between two unit vectors, robust near 0 and pi.
inline double angle_between(const Vec3& a, const Vec3& b) {
    return 2.0 * std::asin(0.5 * std::min(2.0, dist(a, b)));
}

}  // namespace lpmink
