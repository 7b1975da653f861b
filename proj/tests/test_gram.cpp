// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 aniso contributors

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

#include "aniso/gram.hpp"
#include "aniso/support.hpp"

namespace aniso {
namespace {

CrossGram from_dense(const std::vector<std::vector<double>>& d) {
    CrossGram m;
    m.rows.resize(d.size(), CurveletIndex{});
    m.cols.resize(d.empty() ? 0 : d[0].size(), CurveletIndex{});
    for (std::size_t i = 0; i < d.size(); ++i)
        for (std::size_t j = 0; j < d[i].size(); ++j)
            if (d[i][j] != 0.0) m.entries.push_back({i, j, d[i][j], 0.0});
    return m;
}

// Trapezoid rule over [-R, R]^2 with h small enough for the phases involved.
std::complex<double> brute_inner(const AtomIndex& a, const AtomIndex& b, double radius, int n) {
    const double h = 2.0 * radius / n;
    std::complex<double> s = 0.0;
    for (int i = 0; i <= n; ++i)
        for (int k = 0; k <= n; ++k) {
            const Vec2 xi{-radius + i * h, -radius + k * h};
            s += atom_hat(a, xi) * std::conj(atom_hat(b, xi));
        }
    return s * h * h;
}

TEST(OpNorm, Examples) {
    EXPECT_DOUBLE_EQ(op_p_norm({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, 1.0), 1.0);
    EXPECT_DOUBLE_EQ(op_p_norm({{1, 0}, {0, 1}}, 0.3), 1.0);
    EXPECT_NEAR(op_p_norm({{1, 0.5}, {0.5, 1}}, 1.0), 1.5, 1e-15);
    EXPECT_NEAR(op_p_norm({{1, 0.5}, {0.5, 1}}, 0.5), std::pow(1 + std::sqrt(0.5), 2), 1e-12);
    EXPECT_EQ(op_p_norm(CrossGram{}, 1.0), 0.0);
    EXPECT_NEAR(op_p_norm(from_dense({{1, 0.5}, {0.5, 1}}), 0.5), 2.914213562373095, 1e-12);
}

TEST(OpNorm, TransposeSymmetry) {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int t = 0; t < 20; ++t) {
        std::vector<std::vector<double>> d(7, std::vector<double>(4));
        for (auto& r : d)
            for (double& v : r) v = u(rng) > 0.3 ? u(rng) : 0.0;
        const CrossGram m = from_dense(d);
        for (double p : {1.0, 0.7, 0.5}) {
            const OpNorm a = op_p_norm_detail(m, p), b = op_p_norm_detail(transpose(m), p);
            EXPECT_NEAR(a.value, b.value, 1e-12);
            EXPECT_NEAR(a.row_sup, b.col_sup, 1e-12);
        }
    }
}

TEST(OpNorm, MatrixLevelSparsityTransfer) {
    std::mt19937_64 rng(32);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int t = 0; t < 50; ++t) {
        const std::size_t nr = 9, nc = 6;
        std::vector<std::vector<double>> d(nr, std::vector<double>(nc));
        for (auto& r : d)
            for (double& v : r) v = u(rng) > 0.0 ? u(rng) : 0.0;
        const double p = 0.4 + 0.6 * (t % 7) / 6.0;
        std::vector<double> c(nr);
        double cp = 0.0;
        for (double& v : c) {
            v = u(rng);
            cp += std::pow(std::fabs(v), p);
        }
        for (double& v : c) v /= std::pow(cp, 1.0 / p);
        double lhs = 0.0;
        for (std::size_t j = 0; j < nc; ++j) {
            double s = 0.0;
            for (std::size_t i = 0; i < nr; ++i) s += c[i] * d[i][j];
            lhs += std::pow(std::fabs(s), p);
        }
        EXPECT_LE(lhs, std::pow(op_p_norm(d, p), p) * (1 + 1e-12));
    }
}

TEST(DecayFit, RecoversPlantedExponent) {
    std::vector<std::pair<double, double>> e;
    for (int i = 0; i < 40; ++i) {
        const double b = 0.3 * i;
        e.push_back({b, std::pow(std::sqrt(1 + b * b), -6.0)});
    }
    const DecayFit f = decay_fit(e);
    EXPECT_NEAR(f.slope, -6.0, 1e-6);
    EXPECT_NEAR(f.r2, 1.0, 1e-9);
    EXPECT_EQ(f.count, 40u);
    std::mt19937_64 rng(33);
    std::shuffle(e.begin(), e.end(), rng);
    EXPECT_NEAR(decay_fit(e).slope, f.slope, 1e-12);
}

TEST(DecayFit, AllZeroRefused) {
    std::vector<std::pair<double, double>> e(12, {1.0, 0.0});
    EXPECT_THROW(decay_fit(e), std::invalid_argument);
}

TEST(InnerProduct, DistantScalesVanish) {
    for (int k = -2; k <= 2; ++k)
        for (int ell = 0; ell < curvelet_orientation_count(7); ell += 3) {
            const auto v = inner_product(ShearletIndex{2, k, {1, 0}, 1}, CurveletIndex{7, ell, {0, 2}});
            EXPECT_EQ(v, std::complex<double>(0.0, 0.0));
        }
}

TEST(InnerProduct, SelfProductMatchesBruteForce) {
    const AtomIndex atoms[] = {ShearletIndex{3, 1, {2, -1}, 1}, CurveletIndex{3, 2, {0, 1}},
                               ShearletIndex{2, 0, {0, 0}, 2}, WaveletIndex{3, 2, {1, 1}}};
    for (const AtomIndex& a : atoms) {
        const auto v = inner_product(a, a);
        EXPECT_GT(v.real(), 0.0);
        EXPECT_NEAR(v.imag(), 0.0, 1e-14);
        EXPECT_NEAR(v.real(), brute_inner(a, a, 18.0, 720).real(), 1e-9);
    }
}

TEST(InnerProduct, ConjugateSymmetricAndResolved) {
    std::mt19937_64 rng(34);
    std::uniform_int_distribution<int> jd(1, 4), dj(-1, 1), md(-3, 3);
    QuadratureSpec fine;
    fine.samples_per_oscillation = 16.0;
    fine.samples_per_feature = 32.0;
    fine.max_samples = 8192;
    int nonzero = 0;
    for (int t = 0; t < 20; ++t) {
        const int j = jd(rng), jt = std::max(0, j + dj(rng));
        std::uniform_int_distribution<int> kd(-shear_limit(j), shear_limit(j));
        const IntSet ls = l_set(j, jt, 0);
        const std::vector<int> ells = ls.values();
        std::uniform_int_distribution<std::size_t> ld(0, ells.size() - 1);
        const AtomIndex a = ShearletIndex{j, kd(rng) / 3, {md(rng), md(rng)}, 1};
        const AtomIndex b = CurveletIndex{jt, ells[ld(rng)], {md(rng), md(rng)}};
        const auto ab = inner_product(a, b), ba = inner_product(b, a);
        EXPECT_NEAR(std::abs(ab - std::conj(ba)), 0.0, 1e-12);
        const auto ref = inner_product(a, b, fine);
        EXPECT_NEAR(std::abs(ab - ref), 0.0, 1e-9);
        nonzero += std::abs(ab) > 1e-6;
    }
    EXPECT_GT(nonzero, 3);
}

TEST(InnerProduct, RefusesUnderResolvedGrid) {
    QuadratureSpec tiny;
    tiny.max_samples = 16;
    tiny.min_samples = 8;
    EXPECT_THROW(inner_product(ShearletIndex{4, 0, {40, 0}, 1}, CurveletIndex{4, 0, {-40, 0}}, tiny),
                 QuadratureRefused);
}

TEST(Prefilter, ExcludedPairsVanish) {
    std::mt19937_64 rng(35);
    std::uniform_int_distribution<int> jd(0, 4), jt_d(0, 6), md(-2, 2);
    int checked = 0;
    QuadratureSpec no_skip;
    no_skip.skip_disjoint = false;
    while (checked < 500) {
        const int j = jd(rng), jt = jt_d(rng), cone = 1 + checked % 2;
        std::uniform_int_distribution<int> kd(-shear_limit(j), shear_limit(j));
        std::uniform_int_distribution<int> ld(0, curvelet_orientation_count(jt) - 1);
        const int k = kd(rng), ell = ld(rng);
        if (passes_prefilter(j, k, cone, jt, ell)) continue;
        const auto v = inner_product(ShearletIndex{j, k, {md(rng), md(rng)}, cone}, CurveletIndex{jt, ell, {0, 0}},
                                     no_skip);
        EXPECT_LT(std::abs(v), 1e-15) << j << " " << k << " " << cone << " " << jt << " " << ell;
        ++checked;
    }
}

TEST(GramBlock, TableMatchesQuadrature) {
    const auto blocks = gram_blocks(3, 3);
    std::mt19937_64 rng(36);
    std::uniform_int_distribution<std::size_t> bd(0, blocks.size() - 1);
    std::uniform_int_distribution<int> md(-3, 3);
    for (int t = 0; t < 25; ++t) {
        const GramBlock g = blocks[bd(rng)];
        const GramBlockEvaluator ev(g, 3, 3);
        for (int s = 0; s < 4; ++s) {
            const IntPair m{md(rng), md(rng)}, mt{md(rng), md(rng)};
            const auto ref = inner_product(ShearletIndex{g.j, g.k, m, g.cone}, CurveletIndex{g.jt, g.ell, mt});
            EXPECT_NEAR(ev.entry(m, mt), ref.real(), 2e-5) << g.j << " " << g.k << " " << g.cone << " " << g.jt;
            EXPECT_NEAR(ref.imag(), 0.0, 1e-10);
        }
    }
}

TEST(CrossGram, RowsAndAbsentPairs) {
    const TruncationSpec t{2, 1, 1.0};
    const CrossGram g = assemble_cross_gram(t, t, 1e-10);
    std::size_t expect_rows = 0, expect_cols = 0;
    for (int j = 0; j <= 2; ++j) {
        expect_rows += std::size_t(2 * (2 * shear_limit(j) + 1)) * 9;
        expect_cols += std::size_t(curvelet_orientation_count(j)) * 9;
    }
    EXPECT_EQ(g.rows.size(), expect_rows);
    EXPECT_EQ(g.cols.size(), expect_cols);
    ASSERT_FALSE(g.entries.empty());
    for (const GramEntry& e : g.entries) {
        EXPECT_GE(std::abs(e.value), 1e-10);
        EXPECT_TRUE(supports_intersect(support_box(g.rows[e.row]), support_box(g.cols[e.col])));
    }
}

TEST(CrossGram, ThresholdInsensitive) {
    const TruncationSpec t{3, 2, 1.0};
    const CrossGram a = assemble_cross_gram(t, t, 0.0), b = assemble_cross_gram(t, t, 1e-14);
    EXPECT_GE(a.entries.size(), b.entries.size());
    EXPECT_NEAR(op_p_norm(a, 1.0), op_p_norm(b, 1.0), 1e-10);
}

TEST(CrossGram, SumsAgreeWithAssembly) {
    const TruncationSpec t{3, 2, 1.0};
    const CrossGram g = assemble_cross_gram(t, t, 1e-12);
    const GramSums s = accumulate_gram_sums(t, {1.0, 0.5}, 1e-12);
    EXPECT_NEAR(op_p_norm_from_sums(s, 0).value, op_p_norm(g, 1.0), 1e-10);
    EXPECT_NEAR(op_p_norm_from_sums(s, 1).value, op_p_norm(g, 0.5), 1e-8);
    EXPECT_EQ(s.stored, g.entries.size());
}

TEST(CrossGram, DeterministicAcrossWorkers) {
    const TruncationSpec t{3, 2, 1.0};
    const CrossGram a = assemble_cross_gram(t, t, 1e-12, 1), b = assemble_cross_gram(t, t, 1e-12, 3);
    ASSERT_EQ(a.entries.size(), b.entries.size());
    for (std::size_t i = 0; i < a.entries.size(); ++i) {
        EXPECT_EQ(a.entries[i].row, b.entries[i].row);
        EXPECT_EQ(a.entries[i].col, b.entries[i].col);
        EXPECT_EQ(a.entries[i].value, b.entries[i].value);
    }
}

TEST(Convergence, MonotoneInTruncation) {
    const ConvergenceTable tab = op_norm_convergence({1.0, 0.5}, {{1, 4}, {2, 4}, {3, 4}}, 1e-12);
    std::map<double, double> last;
    for (const ConvergenceRow& r : tab.rows) {
        if (last.count(r.p)) EXPECT_GE(r.norm.value, last[r.p] * (1 - 1e-12));
        last[r.p] = r.norm.value;
    }
    EXPECT_GT(last[0.5], last[1.0]);
}

}  // namespace
}  // namespace aniso
