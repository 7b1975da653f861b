// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 aniso contributors

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "aniso/geometry.hpp"
#include "aniso/windows.hpp"

namespace aniso {
namespace {

const WindowPair& w = default_windows();

TEST(Windows, OutsideSupportIsZero) {
    EXPECT_EQ(w.W(0.25), 0.0);
    EXPECT_EQ(w.V(1.5), 0.0);
    for (double x = 0.0; x <= 0.5; x += 1e-3) EXPECT_EQ(w.W(x), 0.0) << x;
    for (double x = 2.0; x <= 8.0; x += 1e-2) EXPECT_EQ(w.W(x), 0.0) << x;
    for (double t = 1.0; t <= 3.0; t += 1e-3) {
        EXPECT_EQ(w.V(t), 0.0) << t;
        EXPECT_EQ(w.V(-t), 0.0) << t;
    }
}

TEST(Windows, RampMatchesMeyerPolynomial) {
    for (double t = 0.0; t <= 1.0; t += 0.01) {
        const double expect = t * t * t * t * (35 - 84 * t + 70 * t * t - 20 * t * t * t);
        EXPECT_NEAR(w.ramp(t), expect, 1e-13) << t;
        EXPECT_NEAR(w.ramp(t) + w.ramp(1 - t), 1.0, 1e-14) << t;
    }
    EXPECT_EQ(w.ramp(-0.5), 0.0);
    EXPECT_EQ(w.ramp(1.5), 1.0);
}

TEST(Windows, CalderonAtThree) {
    double s = 0.0;
    for (int j = 0; j <= 10; ++j) s += std::pow(w.W(3.0 / std::ldexp(1.0, j)), 2);
    EXPECT_NEAR(s, 1.0, 1e-10);
}

TEST(Windows, CalderonDenseSampling) {
    const int J = 10;
    double worst = 0.0;
    for (int i = 0; i <= 20000; ++i) {
        const double r = std::pow(2.0, (J - 1) * double(i) / 20000.0);
        double s = 0.0;
        for (int j = 0; j <= J; ++j) s += std::pow(w.W(r / std::ldexp(1.0, j)), 2);
        worst = std::max(worst, std::fabs(s - 1.0));
    }
    EXPECT_LT(worst, 1e-12);
}

TEST(Windows, AngularPartition) {
    double worst = 0.0;
    for (int i = 0; i <= 20000; ++i) {
        const double t = -2.0 + 4.0 * i / 20000.0;
        double s = 0.0;
        for (int k = -4; k <= 4; ++k) s += std::pow(w.V(t + k), 2);
        worst = std::max(worst, std::fabs(s - 1.0));
    }
    EXPECT_LT(worst, 1e-12);
}

TEST(Windows, ScalingFunctionClosesPartition) {
    for (double r = 0.0; r <= 64.0; r += 0.01) {
        double s = std::pow(w.phi_hat(r), 2);
        for (int j = 0; j <= 8; ++j) s += std::pow(w.W(r / std::ldexp(1.0, j)), 2);
        EXPECT_NEAR(s, 1.0, 1e-12) << r;
    }
}

TEST(Windows, TopWindowClosesFromBelow) {
    for (double x = 0.0; x <= 8.0; x += 0.01) {
        const double expect = x >= 1.0 ? 1.0 : w.W(x);
        EXPECT_NEAR(w.W_top(x), expect, 1e-15) << x;
    }
}

TEST(Windows, FiniteDifferencesBounded) {
    // Fourth differences at step h scale like h^4 for a C^4 profile.
    const double h = 1e-3;
    double worst_w = 0.0, worst_v = 0.0;
    for (double x = 0.3; x <= 2.2; x += 1e-3) {
        const double d4 = w.W(x + 2 * h) - 4 * w.W(x + h) + 6 * w.W(x) - 4 * w.W(x - h) + w.W(x - 2 * h);
        worst_w = std::max(worst_w, std::fabs(d4) / std::pow(h, 4));
    }
    for (double t = -1.2; t <= 1.2; t += 1e-3) {
        const double d4 = w.V(t + 2 * h) - 4 * w.V(t + h) + 6 * w.V(t) - 4 * w.V(t - h) + w.V(t - 2 * h);
        worst_v = std::max(worst_v, std::fabs(d4) / std::pow(h, 4));
    }
    EXPECT_LT(worst_w, 1e5);
    EXPECT_LT(worst_v, 1e5);
}

TEST(Windows, HigherOrderRampStillPartitions) {
    const WindowPair w5 = make_meyer_windows(5);
    EXPECT_EQ(w5.smoothness_order(), 5);
    for (double t = 0.0; t <= 1.0; t += 0.01) EXPECT_NEAR(w5.ramp(t) + w5.ramp(1 - t), 1.0, 1e-12);
    for (double t = -1.0; t <= 1.0; t += 0.01) {
        const double s = w5.V(t) * w5.V(t) + w5.V(t - 1) * w5.V(t - 1) + w5.V(t + 1) * w5.V(t + 1);
        EXPECT_NEAR(s, 1.0, 1e-12);
    }
}

TEST(Geometry, MatrixIdentities) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.1, 5.0);
    for (int i = 0; i < 50; ++i) {
        const double a = u(rng), b = u(rng), th = u(rng);
        const Mat2 ab = parabolic_scaling(a) * parabolic_scaling(b), c = parabolic_scaling(a * b);
        EXPECT_NEAR(ab.a, c.a, 1e-12);
        EXPECT_NEAR(ab.d, c.d, 1e-12);
        const int k = int(i) - 25, k2 = 3 - int(i);
        const Mat2 s = shear(k) * shear(k2);
        EXPECT_EQ(s.b, double(k + k2));
        const Mat2 r = rotation(th);
        const Mat2 rrt = r * r.transpose();
        EXPECT_NEAR(rrt.a, 1.0, 1e-14);
        EXPECT_NEAR(rrt.b, 0.0, 1e-14);
        EXPECT_NEAR(r.det(), 1.0, 1e-14);
    }
    EXPECT_EQ(bracket(0.0), 1.0);
    // R_theta rotates by -theta.
    const Vec2 v = rotation(kPi / 2) * Vec2{1.0, 0.0};
    EXPECT_NEAR(v.x, 0.0, 1e-15);
    EXPECT_NEAR(v.y, -1.0, 1e-15);
}

TEST(Geometry, HalfPowerAndWrap) {
    for (int j = -6; j <= 12; ++j) EXPECT_NEAR(half_power(j), std::pow(2.0, j / 2.0), 1e-12) << j;
    EXPECT_NEAR(wrap_half_turn(kPi + 0.1), 0.1, 1e-15);
    EXPECT_NEAR(wrap_half_turn(-0.1 - kPi), -0.1, 1e-15);
}

}  // namespace
}  // namespace aniso
