// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 aniso contributors

#pragma once

#include <array>
#include <cmath>

namespace aniso {

namespace gram_detail {

constexpr int kTableOversample = 4;  // samples per unit of y
constexpr int kTaps = 6;             // Lagrange nodes -2..3

inline std::array<double, kTaps> lagrange_weights(double t) {
    std::array<double, kTaps> w{};
    for (int i = 0; i < kTaps; ++i) {
        double v = 1.0;
        for (int k = 0; k < kTaps; ++k)
            if (k != i) v *= (t - (k - 2)) / double(i - k);
        w[i] = v;
    }
    return w;
}

}  // namespace gram_detail

template <class Visitor>
void GramBlockEvaluator::for_each(double threshold, Visitor&& visit) const {
    using namespace gram_detail;
    const int rr = row_radius_, rc = col_radius_;
    const int side_r = 2 * rr + 1, side_c = 2 * rc + 1;
    const int width = 2 * q_ + 1;
    const int o = kTableOversample;
    for (int a1 = -rc; a1 <= rc; ++a1) {
        for (int a2 = -rc; a2 <= rc; ++a2) {
            const std::size_t col = static_cast<std::size_t>(a1 + rc) * side_c + (a2 + rc);
            const IntPair mt = map_column({a1, a2});
            const Vec2 c = c_ * Vec2{double(mt[0]), double(mt[1])};
            const double u1 = -o * c.x, u2 = -o * c.y;
            const double f1 = std::floor(u1), f2 = std::floor(u2);
            const auto w1 = lagrange_weights(u1 - f1);
            const auto w2 = lagrange_weights(u2 - f2);
            const int base1 = static_cast<int>(f1) - 2 + q_;
            const int base2 = static_cast<int>(f2) - 2 + q_;
            for (int m1 = -rr; m1 <= rr; ++m1) {
                const double* row0 = table_.data() + static_cast<std::size_t>(base1 + o * m1) * width + base2;
                for (int m2 = -rr; m2 <= rr; ++m2) {
                    const double* p = row0 + o * m2;
                    double acc = 0.0;
                    for (int i = 0; i < kTaps; ++i) {
                        const double* q = p + static_cast<std::size_t>(i) * width;
                        double s = 0.0;
                        for (int k = 0; k < kTaps; ++k) s += w2[k] * q[k];
                        acc += w1[i] * s;
                    }
                    const double v = scale_ * acc;
                    if (std::fabs(v) >= threshold && v != 0.0)
                        visit(static_cast<std::size_t>(m1 + rr) * side_r + (m2 + rr), col, v);
                }
            }
        }
    }
}

}  // namespace aniso
