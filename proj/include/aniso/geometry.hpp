// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 aniso contributors

#pragma once

#include <array>
#include <cmath>

namespace aniso {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
inline Vec2 swapped(Vec2 a) { return {a.y, a.x}; }

// Row-major 2x2 matrix.
struct Mat2 {
    double a = 1.0, b = 0.0, c = 0.0, d = 1.0;

    Vec2 operator*(Vec2 v) const { return {a * v.x + b * v.y, c * v.x + d * v.y}; }
    Mat2 operator*(const Mat2& o) const {
        return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
    }
    Mat2 transpose() const { return {a, c, b, d}; }
    double det() const { return a * d - b * c; }
    Mat2 inverse() const {
        const double s = 1.0 / det();
        return {d * s, -b * s, -c * s, a * s};
    }
};

constexpr double kPi = 3.14159265358979323846;

// A_a = diag(a, sqrt(a))
inline Mat2 parabolic_scaling(double a) { return {a, 0.0, 0.0, std::sqrt(a)}; }

// S_k = [[1, k], [0, 1]]
inline Mat2 shear(double k) { return {1.0, k, 0.0, 1.0}; }

// Counter-clockwise rotation by theta.
inline Mat2 rotation_ccw(double theta) {
    const double c = std::cos(theta), s = std::sin(theta);
    return {c, -s, s, c};
}

// R_theta: planar rotation by -theta.
inline Mat2 rotation(double theta) { return rotation_ccw(-theta); }

// <y> = (1 + |y|^2)^{1/2}
inline double bracket(double y) { return std::sqrt(1.0 + y * y); }
inline double bracket(Vec2 y) { return std::sqrt(1.0 + dot(y, y)); }

// 2^{j/2}
inline double half_power(int j) { return std::ldexp(j % 2 == 0 ? 1.0 : std::sqrt(2.0), j >= 0 ? j / 2 : -((-j + 1) / 2)); }

// Reduce an angle to (-pi/2, pi/2].
inline double wrap_half_turn(double a) {
    a = std::fmod(a, kPi);
    if (a > kPi / 2) a -= kPi;
    if (a <= -kPi / 2) a += kPi;
    return a;
}

}  // namespace aniso
