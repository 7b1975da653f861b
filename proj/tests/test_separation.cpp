// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 aniso contributors

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "aniso/separation.hpp"

namespace aniso {
namespace {

double l2(const std::vector<double>& v) {
    return std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0));
}

std::vector<double> bandlimited_noise(int n, int j_lo, int j_hi, std::uint64_t seed) {
    const FrequencyGrid g(n);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> d;
    std::vector<double> f(std::size_t(n) * n);
    for (double& v : f) v = d(rng);
    auto spec = g.forward(f);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            const int r = std::max(std::abs(g.frequency(a)), std::abs(g.frequency(b)));
            if (r < std::ldexp(1.0, j_lo) || r > std::ldexp(1.0, j_hi)) spec[std::size_t(a) * n + b] = 0.0;
        }
    return g.backward(spec);
}

TEST(Curve, CircleGeometry) {
    CurveSpec c;
    c.a = {};
    c.b = {};
    c.r0 = 0.25;
    EXPECT_NEAR(c.length(), 2 * kPi * 0.25, 1e-9);
    EXPECT_NEAR(c.point(0.25).y, 0.75, 1e-15);
    EXPECT_FALSE(c.self_intersects());
    c.a = {0.0, 0.3};
    EXPECT_TRUE(c.self_intersects());
}

TEST(Mixture, PointProfileFollowsPowerLaw) {
    MixtureSpec s;
    s.points = {{0.5, 0.5}};
    s.with_curve = false;
    const int n = 256;
    const MixtureModel m = render_mixture(s, n);
    for (int d = 3; d <= 50; ++d) {
        const double r = double(d) / n, expect = std::pow(r, -1.5);
        EXPECT_NEAR(m.points[std::size_t(128 + d) * n + 128] / expect, 1.0, 0.02) << d;
        EXPECT_NEAR(m.points[std::size_t(128) * n + 128 - d] / expect, 1.0, 0.02) << d;
    }
    EXPECT_EQ(point_profile(s, n, 0.46), 0.0);
    EXPECT_NEAR(point_profile(s, n, 0.0), std::pow(2.0 / n, -1.5), 1e-9);
}

TEST(Mixture, CircleMassIsLength) {
    MixtureSpec s;
    s.points.clear();
    s.curve.a = {};
    s.curve.b = {};
    s.curve.r0 = 0.3;
    const int n = 128;
    const MixtureModel m = render_mixture(s, n);
    const double mass = std::accumulate(m.curve.begin(), m.curve.end(), 0.0) / (double(n) * n);
    EXPECT_NEAR(mass, 2 * kPi * 0.3, 1e-9);
    for (double v : m.points) ASSERT_EQ(v, 0.0);
    const auto t = m.total();
    for (std::size_t i = 0; i < t.size(); ++i) ASSERT_EQ(t[i], m.curve[i]);
}

TEST(Mixture, RejectsBadInput) {
    MixtureSpec s;
    EXPECT_THROW(render_mixture(s, 100), std::invalid_argument);
    s.points = {{1.2, 0.5}};
    EXPECT_THROW(render_mixture(s, 64), std::invalid_argument);
}

TEST(Corona, ReconstructsCoveredBand) {
    const int n = 128;
    const auto f = bandlimited_noise(n, 3, 5, 51);
    const auto parts = corona_decompose(f, n, 1, 5);
    ASSERT_EQ(parts.size(), 5u);
    const auto back = corona_reconstruct(parts, n);
    double err = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) err += (f[i] - back[i]) * (f[i] - back[i]);
    EXPECT_LT(std::sqrt(err) / l2(f), 1e-8);
    EXPECT_THROW(corona_decompose(f, n, 1, 6), std::invalid_argument);
}

TEST(Corona, SinusoidStaysNearItsScale) {
    const int n = 128;
    for (int j = 2; j <= 4; ++j) {
        std::vector<double> f(std::size_t(n) * n);
        const double k = std::ldexp(1.0, j);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) f[std::size_t(a) * n + b] = std::cos(2 * kPi * k * a / n);
        for (const Corona& c : corona_decompose(f, n, 0, 5)) {
            const double e = l2(c.f);
            if (std::abs(c.j - j) > 1) EXPECT_LT(e, 1e-10) << j << " " << c.j;
        }
    }
}

TEST(Corona, ZeroInZeroOut) {
    for (const Corona& c : corona_decompose(std::vector<double>(64 * 64, 0.0), 64, 1, 4))
        for (double v : c.f) ASSERT_EQ(v, 0.0);
}

TEST(Solver, ZeroInput) {
    const DiscreteFrame wav(FrameKind::wavelet, 64), she(FrameKind::shearlet, 64);
    const SplitSpectra r = csep_solve(std::vector<std::complex<double>>(64 * 64), wav, she);
    for (const auto& v : r.w) ASSERT_EQ(v, std::complex<double>(0.0, 0.0));
    for (const auto& v : r.s) ASSERT_EQ(v, std::complex<double>(0.0, 0.0));
    EXPECT_TRUE(r.report.converged);
}

TEST(Solver, MonotoneAndFeasible) {
    const int n = 64;
    const MixtureModel mix = render_mixture(default_mixture(), n);
    const FrequencyGrid g(n);
    const auto parts = corona_decompose(mix.total(), n, 3, 3);
    const auto f = g.forward(parts[0].f);
    const DiscreteFrame wav(FrameKind::wavelet, n), she(FrameKind::shearlet, n);
    const SplitSpectra r = csep_solve(f, wav, she);
    EXPECT_TRUE(r.report.monotone);
    for (std::size_t i = 1; i < r.report.history.size(); ++i)
        EXPECT_LE(r.report.history[i], r.report.history[i - 1] * (1 + 1e-12));
    EXPECT_LT(r.report.feasibility, 1e-5);
    double e = 0.0, fe = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        e += std::norm(r.w[i] + r.s[i] - f[i]);
        fe += std::norm(f[i]);
    }
    EXPECT_LT(std::sqrt(e / fe), 1e-5);
    EXPECT_TRUE(r.report.converged);
}

// Dense wavelet x shearlet Grammian from rendered atoms.
std::vector<std::vector<double>> dense_gram(const DiscreteFrame& wav, const DiscreteFrame& she) {
    std::vector<std::vector<double>> sa(she.coefficient_count());
    for (std::size_t i = 0; i < sa.size(); ++i) sa[i] = she.render_atom(i);
    std::vector<std::vector<double>> g(wav.coefficient_count(), std::vector<double>(sa.size()));
    for (std::size_t i = 0; i < g.size(); ++i) {
        const auto x = wav.render_atom(i);
        for (std::size_t k = 0; k < sa.size(); ++k)
            g[i][k] = std::fabs(std::inner_product(x.begin(), x.end(), sa[k].begin(), 0.0));
    }
    return g;
}

double brute_coherence(const std::vector<std::vector<double>>& g, const std::vector<std::size_t>& s1,
                       const std::vector<std::size_t>& s2) {
    double best = 0.0;
    for (std::size_t k = 0; k < g[0].size(); ++k) {
        double s = 0.0;
        for (std::size_t i : s1) s += g[i][k];
        best = std::max(best, s);
    }
    for (const auto& row : g) {
        double s = 0.0;
        for (std::size_t k : s2) s += row[k];
        best = std::max(best, s);
    }
    return best;
}

TEST(Coherence, EmptyClusters) {
    const DiscreteFrame wav(FrameKind::wavelet, 32), she(FrameKind::shearlet, 32);
    EXPECT_EQ(cluster_coherence({}, {}, wav, she), 0.0);
}

TEST(Coherence, MatchesBruteForce) {
    const int n = 16;
    const DiscreteFrame wav(FrameKind::wavelet, n), she(FrameKind::shearlet, n);
    const auto g = dense_gram(wav, she);
    std::mt19937_64 rng(53);
    std::uniform_int_distribution<std::size_t> pw(0, g.size() - 1), ps(0, g[0].size() - 1);
    for (int t = 0; t < 10; ++t) {
        const std::size_t a = pw(rng), b = ps(rng);
        // Singletons: the largest single entry in row a or column b.
        double single = 0.0;
        for (double v : g[a]) single = std::max(single, v);
        for (const auto& row : g) single = std::max(single, row[b]);
        EXPECT_NEAR(cluster_coherence({a}, {b}, wav, she), single, 1e-12);
    }
    for (int t = 0; t < 4; ++t) {
        std::vector<std::size_t> s1, s2;
        for (std::size_t i = 0; i < g.size(); ++i)
            if (rng() % 6 == 0) s1.push_back(i);
        for (std::size_t i = 0; i < g[0].size(); ++i)
            if (rng() % 6 == 0) s2.push_back(i);
        const double best = brute_coherence(g, s1, s2);
        EXPECT_NEAR(cluster_coherence(s1, s2, wav, she), best, 1e-10 * best);
        EXPECT_NEAR(cluster_coherence(s1, s2, wav, she, 3), best, 1e-10 * best);
    }
}

TEST(Separation, SolveGridAndScaleRange) {
    EXPECT_EQ(solve_grid_size(512, 3), 64);
    EXPECT_EQ(solve_grid_size(512, 6), 512);
    EXPECT_EQ(solve_grid_size(128, 6), 128);
    const MixtureModel mix = render_mixture(default_mixture(), 64);
    EXPECT_THROW(separate_scale(mix, 4), std::invalid_argument);
    EXPECT_THROW(separate_scale(mix, 0), std::invalid_argument);
}

TEST(Separation, PurePointsAreRecovered) {
    MixtureSpec s = default_mixture();
    s.with_curve = false;
    const MixtureModel mix = render_mixture(s, 256);
    SeparationOptions o;
    o.coherence = false;
    const ScaleResult r = separate_scale(mix, 5, o);
    EXPECT_EQ(r.solve_grid, 256);
    EXPECT_LE(r.ratio, 0.1);
    EXPECT_LE(r.curve_norm, 1e-12 * r.point_norm);
    EXPECT_LE(r.curve_error, 0.05 * r.point_norm);
    EXPECT_TRUE(r.report.converged);
}

TEST(Separation, ClustersSitOnTheGeometry) {
    const MixtureSpec s = default_mixture();
    const int j = 3, m = solve_grid_size(512, j);
    const DiscreteFrame wav(FrameKind::wavelet, m), she(FrameKind::shearlet, m);
    const Clusters c = make_clusters(s, j, wav, she);
    ASSERT_FALSE(c.wavelet.empty());
    ASSERT_FALSE(c.shearlet.empty());
    EXPECT_TRUE(std::is_sorted(c.wavelet.begin(), c.wavelet.end()));
    const double radius = 2.0 * std::ldexp(1.0, -j);
    for (std::size_t i : c.wavelet) {
        const auto [x, y] = wav.position_of(i);
        double best = 1e9;
        for (const Vec2& p : s.points) {
            double dx = std::fabs(x / m - p.x), dy = std::fabs(y / m - p.y);
            dx = std::min(dx, 1 - dx);
            dy = std::min(dy, 1 - dy);
            best = std::min(best, std::hypot(dx, dy));
        }
        EXPECT_LE(best, radius * (1 + 1e-12)) << i;
    }
}

}  // namespace
}  // namespace aniso
