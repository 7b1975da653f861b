// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 aniso contributors

#include "aniso/atoms.hpp"

#include <cmath>
#include <type_traits>

namespace aniso {

int curvelet_orientation_count(int j) {
    return 4 * static_cast<int>(std::ceil(kPi * half_power(j) / 4.0 - 1e-12));
}

double curvelet_angle(int j, int ell) {
    return kPi * ell / curvelet_orientation_count(j);
}

double curvelet_half_width(int j) { return kPi / curvelet_orientation_count(j); }

double cone_slope_limit() {
    static const double s = std::tan(kPi / 4.0 + kConeBlend);
    return s;
}

double cone_weight(int cone, Vec2 xi, const WindowPair& w) {
    if (cone == 2) xi = swapped(xi);
    const double phi = std::atan2(std::fabs(xi.y), std::fabs(xi.x));
    const double t = (phi - (kPi / 4.0 - kConeBlend)) / (2.0 * kConeBlend);
    if (t >= 1.0) return 0.0;
    return std::cos(0.5 * kPi * w.ramp(t));
}

int shear_limit(int j) {
    return static_cast<int>(std::ceil(cone_slope_limit() * half_power(j)));
}

int nominal_shear_limit(int j) {
    return static_cast<int>(std::ceil(half_power(j) - 1e-12));
}

double curvelet_window(const WindowPair& w, int j, int ell, Vec2 xi) {
    const double r = norm(xi);
    if (r == 0.0) return 0.0;
    const double radial = w.W(std::ldexp(r, -j));
    if (radial == 0.0) return 0.0;
    const double omega = std::atan2(xi.y, xi.x);
    const double d = wrap_half_turn(omega - curvelet_angle(j, ell));
    return radial * w.V(d / curvelet_half_width(j));
}

double shearlet_window(const WindowPair& w, int j, int k, int cone, Vec2 xi) {
    if (cone == 2) xi = swapped(xi);
    if (xi.x == 0.0) return 0.0;
    const double radial = w.W(std::ldexp(xi.x, -j));
    if (radial == 0.0) return 0.0;
    const double ang = w.V(k + half_power(j) * xi.y / xi.x);
    if (ang == 0.0) return 0.0;
    return radial * ang * cone_weight(1, xi, w);
}

double wavelet_window(const WindowPair& w, int h, int j, Vec2 xi) {
    const double u = std::ldexp(xi.x, -j), v = std::ldexp(xi.y, -j);
    switch (h) {
        case 1: return w.phi_hat(u) * w.W(v);
        case 2: return w.W(u) * w.phi_hat(v);
        case 3: return w.W(u) * w.W(v);
        default: return 0.0;
    }
}

Vec2 curvelet_position(int j, int ell, IntPair m) {
    const Vec2 mv{double(m[0]), double(m[1])};
    return rotation_ccw(curvelet_angle(j, ell)) * (parabolic_scaling(std::ldexp(1.0, -j)) * mv);
}

Vec2 shearlet_position(int j, int k, int cone, IntPair m) {
    const Vec2 mv{double(m[0]), double(m[1])};
    const Vec2 p = parabolic_scaling(std::ldexp(1.0, -j)) * (shear(k) * mv);
    return cone == 2 ? swapped(p) : p;
}

Vec2 wavelet_position(int j, IntPair n) {
    return {std::ldexp(double(n[0]), -j), std::ldexp(double(n[1]), -j)};
}

namespace {

std::complex<double> with_phase(double amplitude, Vec2 p, Vec2 xi) {
    if (amplitude == 0.0) return {0.0, 0.0};
    return std::polar(amplitude, dot(p, xi));
}

}  // namespace

std::complex<double> curvelet_hat(const CurveletIndex& mu, Vec2 xi, const WindowPair& w) {
    const double a = std::pow(2.0, -0.75 * mu.j) * curvelet_window(w, mu.j, mu.ell, xi);
    return with_phase(a, curvelet_position(mu.j, mu.ell, mu.m), xi);
}

std::complex<double> shearlet_hat(const ShearletIndex& eta, Vec2 xi, const WindowPair& w) {
    const double a = std::pow(2.0, -0.75 * eta.j) * shearlet_window(w, eta.j, eta.k, eta.cone, xi);
    return with_phase(a, shearlet_position(eta.j, eta.k, eta.cone, eta.m), xi);
}

std::complex<double> wavelet_hat(const WaveletIndex& nu, Vec2 xi, const WindowPair& w) {
    const double a = std::ldexp(1.0, -nu.j) * wavelet_window(w, nu.h, nu.j, xi);
    return with_phase(a, wavelet_position(nu.j, nu.n), xi);
}

std::complex<double> atom_hat(const AtomIndex& a, Vec2 xi, const WindowPair& w) {
    return std::visit(
        [&](const auto& idx) -> std::complex<double> {
            using T = std::decay_t<decltype(idx)>;
            if constexpr (std::is_same_v<T, CurveletIndex>) return curvelet_hat(idx, xi, w);
            else if constexpr (std::is_same_v<T, ShearletIndex>) return shearlet_hat(idx, xi, w);
            else return wavelet_hat(idx, xi, w);
        },
        a);
}

int atom_scale(const AtomIndex& a) {
    return std::visit([](const auto& idx) { return idx.j; }, a);
}

double atom_amplitude(const AtomIndex& a) {
    if (std::holds_alternative<WaveletIndex>(a)) return std::ldexp(1.0, -atom_scale(a));
    return std::pow(2.0, -0.75 * atom_scale(a));
}

double atom_window(const AtomIndex& a, Vec2 xi, const WindowPair& w) {
    return std::visit(
        [&](const auto& idx) -> double {
            using T = std::decay_t<decltype(idx)>;
            if constexpr (std::is_same_v<T, CurveletIndex>) return curvelet_window(w, idx.j, idx.ell, xi);
            else if constexpr (std::is_same_v<T, ShearletIndex>) return shearlet_window(w, idx.j, idx.k, idx.cone, xi);
            else return wavelet_window(w, idx.h, idx.j, xi);
        },
        a);
}

Vec2 atom_position(const AtomIndex& a) {
    return std::visit(
        [](const auto& idx) -> Vec2 {
            using T = std::decay_t<decltype(idx)>;
            if constexpr (std::is_same_v<T, CurveletIndex>) return curvelet_position(idx.j, idx.ell, idx.m);
            else if constexpr (std::is_same_v<T, ShearletIndex>) return shearlet_position(idx.j, idx.k, idx.cone, idx.m);
            else return wavelet_position(idx.j, idx.n);
        },
        a);
}

}  // namespace aniso
