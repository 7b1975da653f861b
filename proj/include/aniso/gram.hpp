// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 aniso contributors

#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "aniso/atoms.hpp"
#include "aniso/index_sets.hpp"

namespace aniso {

// ---------------------------------------------------------------------------
// Direct quadrature
// ---------------------------------------------------------------------------

struct QuadratureSpec {
    double samples_per_oscillation = 8.0;
    double samples_per_feature = 16.0;
    int min_samples = 64;
    int max_samples = 4096;
    bool skip_disjoint = true;  // return 0 without sampling when supports are disjoint
};

class QuadratureRefused : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Integral of a_hat * conj(b_hat) over the overlap of the two supports
// (trapezoid rule on each intersecting lobe bounding box).
std::complex<double> inner_product(const AtomIndex& a, const AtomIndex& b, const QuadratureSpec& quad = {});

// Same integral with explicit positions p in the phase exp(i <p, xi>); the m fields
// of the indices are ignored.
std::complex<double> inner_product_at(const AtomIndex& a, Vec2 pa, const AtomIndex& b, Vec2 pb,
                                      const QuadratureSpec& quad = {});

// Narrowest window feature of an atom in frequency units.
double feature_scale(const AtomIndex& a);

// ---------------------------------------------------------------------------
// Cross-Grammian between shearlet rows and curvelet columns
// ---------------------------------------------------------------------------

struct TruncationSpec {
    int j_max = 6;
    int m_radius = 16;
    double p = 1.0;
};

void validate(const TruncationSpec& t);

// Rows: shearlets ordered by (j, cone, k, m1, m2); columns: curvelets by (j, ell, m1, m2).
std::vector<AtomIndex> shearlet_family(const TruncationSpec& t);
std::vector<AtomIndex> curvelet_family(const TruncationSpec& t);

// One (j, k, cone) x (jt, ell) block of the Grammian that survives the prefilters.
struct GramBlock {
    int j = 0, k = 0, cone = 1;
    int jt = 0, ell = 0;
};

// Blocks passing |j - jt| <= 2, k in the shear candidates, ell in l_set and an exact
// support intersection test.
std::vector<GramBlock> gram_blocks(int j_max_rows, int j_max_cols);
bool passes_prefilter(int j, int k, int cone, int jt, int ell);

// Tabulated evaluator for every position pair of one block. Entries are
//   2^{-3(j+jt)/4} 2^{3j/2} T(m - C mt),  T(y) = int G(eta) exp(i <y, eta>) d eta,
// with eta the shearlet's normalised frequency coordinates; T is tabulated by FFT and
// interpolated. Cone-2 blocks reuse the cone-1 table of the mirrored wedge.
class GramBlockEvaluator {
public:
    GramBlockEvaluator(const GramBlock& block, int row_radius, int col_radius,
                       const WindowPair& w = default_windows());

    double entry(IntPair m, IntPair mt) const;

    // Visits (row position offset, column position offset, value) for all pairs with
    // |value| >= threshold; offsets index the (2R+1)^2 position boxes row-major.
    template <class Visitor>
    void for_each(double threshold, Visitor&& visit) const;

    const GramBlock& block() const { return block_; }

private:
    double table_at(double y1, double y2) const;
    IntPair map_column(IntPair mt) const;

    GramBlock block_;
    int row_radius_, col_radius_;
    int ell_table_;   // wedge used for the cone-1 table
    int mirror_;      // 0: none, 1: (m1, -m2), 2: (-m1, m2)
    Mat2 c_;          // column position map into eta-dual coordinates
    double scale_;
    int q_;           // table half-width in samples
    std::vector<double> table_;
};

struct GramEntry {
    std::size_t row = 0;
    std::size_t col = 0;
    std::complex<double> value;
    double b_norm = 0.0;
};

struct CrossGram {
    std::vector<AtomIndex> rows;
    std::vector<AtomIndex> cols;
    std::vector<GramEntry> entries;
    double threshold = 0.0;
};

CrossGram assemble_cross_gram(const TruncationSpec& rows, const TruncationSpec& cols, double threshold,
                              int workers = 1);

struct OpNorm {
    double value = 0.0;
    double row_sup = 0.0;  // (sup_i sum_j |m_ij|^p)^{1/p}
    double col_sup = 0.0;
};

OpNorm op_p_norm_detail(const CrossGram& m, double p);
double op_p_norm(const CrossGram& m, double p);
double op_p_norm(const std::vector<std::vector<double>>& dense, double p);
CrossGram transpose(const CrossGram& m);

// Row and column p-sums of the truncated Grammian without storing entries.
struct GramSums {
    std::vector<double> p;
    std::vector<std::vector<double>> row_sums;  // [p index][row]
    std::vector<std::vector<double>> col_sums;
    std::size_t blocks = 0;
    std::size_t stored = 0;  // entries at or above threshold
};

GramSums accumulate_gram_sums(const TruncationSpec& t, const std::vector<double>& p_list, double threshold,
                              int workers = 1);
OpNorm op_p_norm_from_sums(const GramSums& s, std::size_t p_index);

struct ConvergenceRow {
    int j_max = 0;
    int m_radius = 0;
    double p = 1.0;
    OpNorm norm;
};

struct ConvergenceTable {
    std::vector<ConvergenceRow> rows;
    // (last - previous) / last for the given p, 0 with fewer than two rows.
    double saturation_ratio(double p) const;
};

ConvergenceTable op_norm_convergence(const std::vector<double>& p_list,
                                     const std::vector<std::pair<int, int>>& sweep, double threshold = 1e-12,
                                     int workers = 1);

struct DecayFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
    double residual = 0.0;  // root-mean-square of the log residuals
    std::size_t count = 0;
};

// Least squares of log|v| against log<|b|> over (|b|, |v|) pairs.
DecayFit decay_fit(const std::vector<std::pair<double, double>>& entries);

}  // namespace aniso

#include "aniso/gram_impl.hpp"
