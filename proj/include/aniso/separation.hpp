// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 aniso contributors

#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "aniso/geometry.hpp"
#include "aniso/transform.hpp"

namespace aniso {

// Closed curve tau(t) = c + rho(2 pi t) (cos 2 pi t, sin 2 pi t), t in [0, 1), with
// rho(s) = r0 + sum_k (a_k cos ks + b_k sin ks). Coordinates in the unit square.
struct CurveSpec {
    Vec2 center{0.5, 0.5};
    double r0 = 0.3;
    std::vector<double> a{0.0, 0.0, 0.03};
    std::vector<double> b{0.0, 0.0, 0.0};

    Vec2 point(double t) const;
    Vec2 tangent(double t) const;  // d tau / dt
    double length(int samples = 8192) const;
    // rho <= 0 somewhere: the curve passes through or around its centre.
    bool self_intersects(int samples = 8192) const;
};

struct MixtureSpec {
    std::vector<Vec2> points{{0.5, 0.5}, {0.42, 0.6}, {0.6, 0.43}};
    bool with_curve = true;
    CurveSpec curve;
    double point_weight = 1.0;
    double curve_weight = 1.0;
    // |x - x_i|^{-3/2} is clipped inside clip_pixels and tapered smoothly to 0 on
    // [taper_inner, taper_outer] (unit-square distance, minimum image on the torus).
    double clip_pixels = 2.0;
    double taper_inner = 0.2;
    double taper_outer = 0.45;
};

MixtureSpec default_mixture();

// Sample p sits at unit-square coordinate p / N.
struct MixtureModel {
    MixtureSpec spec;
    int n = 0;
    std::vector<double> points;  // rendering of P
    std::vector<double> curve;   // rendering of C
    std::vector<double> total() const;
};

MixtureModel render_mixture(const MixtureSpec& spec, int n);

// Point-singularity profile r^{-3/2} with the clip and taper of spec, r in unit distance.
double point_profile(const MixtureSpec& spec, int n, double r);

// F_j(xi) = W(|xi|_inf / 2^j).
std::vector<double> scale_filter(const FrequencyGrid& grid, int j,
                                 const WindowPair& w = default_windows());

struct Corona {
    int j = 0;
    std::vector<double> f;
};
std::vector<Corona> corona_decompose(const std::vector<double>& f, int n, int j_lo, int j_hi,
                                     const WindowPair& w = default_windows());
// Sum_j F_j * f_j.
std::vector<double> corona_reconstruct(const std::vector<Corona>& parts, int n,
                                       const WindowPair& w = default_windows());

// Per-tile scaling of the analysis l1 terms. density: sqrt(|support| / lattice size),
// the l1 of a critically sampled tile. redundancy: density divided by
// sqrt(sum of tile supports / grid size), per frame.
enum class L1Weighting { none, density, redundancy };

struct SolverParams {
    L1Weighting weighting = L1Weighting::none;
    int max_iter = 2000;
    double tolerance = 1e-6;      // relative objective change over a 10-iteration window
    double huber_fraction = 1e-3; // Huber width relative to the largest analysis coefficient
};

struct SolverReport {
    int iterations = 0;
    bool converged = false;
    double objective = 0.0;           // analysis l1 objective
    double smoothed_objective = 0.0;  // Huber objective actually minimised
    double feasibility = 0.0;         // |W + S - f| / |f|
    bool monotone = true;
    std::vector<double> history;      // smoothed objective per iteration
};

// Spectra on the solve grid (unitary, W and S real in space).
struct SplitSpectra {
    std::vector<std::complex<double>> w;
    std::vector<std::complex<double>> s;
    SolverReport report;
};

// argmin |Phi_w^* W|_1 + |Phi_s^* S|_1 subject to W + S = f, with Huber smoothing,
// monotone FISTA on W (S = f - W, feasible at every iterate).
SplitSpectra csep_solve(const std::vector<std::complex<double>>& f, const DiscreteFrame& wavelets,
                        const DiscreteFrame& shearlets, const SolverParams& params = {});

// Per-coefficient l1 weights of a frame under a weighting.
std::vector<double> l1_weights(const DiscreteFrame& frame, L1Weighting weighting);

// Coefficient clusters (flat indices, ascending) on the solve grid of a scale j.
struct Clusters {
    std::vector<std::size_t> wavelet;
    std::vector<std::size_t> shearlet;
};
Clusters make_clusters(const MixtureSpec& spec, int j, const DiscreteFrame& wavelets,
                       const DiscreteFrame& shearlets);

// max{ max_eta sum_{nu in S1} |<psi_nu, sigma_eta>|, max_nu sum_{eta in S2} |<psi_nu, sigma_eta>| }.
double cluster_coherence(const std::vector<std::size_t>& s1, const std::vector<std::size_t>& s2,
                         const DiscreteFrame& wavelets, const DiscreteFrame& shearlets,
                         int workers = 1);

struct ScaleResult {
    int j = 0;
    int solve_grid = 0;
    double ratio = 0.0;
    double point_error = 0.0;   // |W_j - P_j|
    double curve_error = 0.0;   // |S_j - C_j|
    double point_norm = 0.0;    // |P_j|
    double curve_norm = 0.0;    // |C_j|
    double delta = 0.0;         // out-of-cluster l1 mass of P_j, C_j
    double coherence = 0.0;
    double bound = 0.0;         // 2 delta / (1 - 2 coherence), +inf if coherence >= 1/2
    std::size_t cluster_wavelet = 0;
    std::size_t cluster_shearlet = 0;
    SolverReport report;
    std::vector<double> w_grid, s_grid;  // on the full grid
};

struct SeparationOptions {
    SolverParams solver;
    bool coherence = true;
    bool keep_grids = false;
    int workers = 1;
};

// Solve grid for scale j: min(N, 2^{j+3}).
int solve_grid_size(int n, int j);

ScaleResult separate_scale(const MixtureModel& mix, int j, const SeparationOptions& options = {});
std::vector<ScaleResult> separation_ratio_curve(const MixtureModel& mix, const std::vector<int>& js,
                                                const SeparationOptions& options = {});

}  // namespace aniso
