// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 aniso contributors

#include "aniso/windows.hpp"

#include <cmath>
#include <stdexcept>

#include "aniso/geometry.hpp"

namespace aniso {

namespace {

double binomial(int n, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

}  // namespace

WindowPair::WindowPair(int smoothness_order) : order_(smoothness_order) {
    if (smoothness_order < 1) throw std::invalid_argument("smoothness_order must be >= 1");
    // nu(t) = sum_{i=r+1}^{2r+1} C(2r+1, i) t^i (1-t)^{2r+1-i}, expanded in powers of t.
    const int n = 2 * order_ + 1;
    poly_.assign(n + 1, 0.0);
    for (int i = order_ + 1; i <= n; ++i) {
        const double c = binomial(n, i);
        for (int q = 0; q <= n - i; ++q) {
            const double sign = (q % 2 == 0) ? 1.0 : -1.0;
            poly_[i + q] += c * binomial(n - i, q) * sign;
        }
    }
}

double WindowPair::ramp(double t) const {
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    double v = 0.0;
    for (auto it = poly_.rbegin(); it != poly_.rend(); ++it) v = v * t + *it;
    return v;
}

double WindowPair::W(double x) const {
    const double a = std::fabs(x);
    if (a <= 0.5 || a >= 2.0) return 0.0;
    if (a <= 1.0) return std::sin(0.5 * kPi * ramp(2.0 * a - 1.0));
    return std::cos(0.5 * kPi * ramp(a - 1.0));
}

double WindowPair::V(double t) const {
    const double a = std::fabs(t);
    if (a >= 1.0) return 0.0;
    return std::cos(0.5 * kPi * ramp(a));
}

double WindowPair::phi_hat(double x) const {
    const double a = std::fabs(x);
    if (a <= 0.5) return 1.0;
    if (a >= 1.0) return 0.0;
    return std::cos(0.5 * kPi * ramp(2.0 * a - 1.0));
}

double WindowPair::W_top(double x) const {
    return std::fabs(x) >= 1.0 ? 1.0 : W(x);
}

WindowPair make_meyer_windows(int smoothness_order) { return WindowPair(smoothness_order); }

const WindowPair& default_windows() {
    static const WindowPair w(3);
    return w;
}

}  // namespace aniso
