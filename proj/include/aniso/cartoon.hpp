// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 aniso contributors

#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "aniso/geometry.hpp"
#include "aniso/transform.hpp"

namespace aniso {

// Separable bump A * s((x - x0) / (x1 - x0)) * s((y - y0) / (y1 - y0)) with
// s(t) = sin^4(pi t) on [0, 1] and 0 elsewhere (C^3, a cosine polynomial).
struct Bump {
    double amplitude = 0.0;
    double x0 = 0.0, x1 = 1.0, y0 = 0.0, y1 = 1.0;

    double value(double x, double y) const;
    // sum over |alpha| <= 2 of sup |D^alpha|, for unit amplitude.
    double unit_c2_norm() const;
    double c2_norm() const { return std::abs(amplitude) * unit_c2_norm(); }
};

// Star-shaped region {c + r (cos t, sin t) : r < rho(t)} with
// rho(t) = r0 + sum_k (a_k cos kt + b_k sin kt), k = 1..K.
struct StarRegion {
    Vec2 center{0.5, 0.5};
    double r0 = 0.25;
    std::vector<double> a, b;

    double rho(double t) const;
    double rho_d1(double t) const;
    double rho_d2(double t) const;
    double curvature(double t) const;
    double max_abs_curvature(int samples = 4096) const;
    double min_radius(int samples = 4096) const;
    double max_radius(int samples = 4096) const;
    bool contains(double x, double y) const;
};

struct CartoonOptions {
    double nu = 10.0;      // curvature bound, in units of the unit square
    int harmonics = 5;
    bool edge = true;      // false: f1 = 0
    int max_attempts = 1000;
    double c2_budget = 0.9;
};

struct CartoonImage {
    Bump f0, f1;
    StarRegion region;
    double nu = 0.0;
    std::uint64_t seed = 0;

    double value(double x, double y) const;
};

// Deterministic per seed; throws std::runtime_error after max_attempts rejections.
CartoonImage make_cartoon(std::uint64_t seed, const CartoonOptions& options = {});

// Pixel (p0, p1) covers [p0/n, (p0+1)/n) x [p1/n, (p1+1)/n); each pixel averages
// supersample^2 point samples.
std::vector<double> render(const CartoonImage& img, int n, int supersample = 4);

// Fixed coarse low-pass: F_low = (phi_hat(xi1/2^j0) phi_hat(xi2/2^j0))^2 F.
struct LowHighSplit {
    std::vector<double> low;
    std::vector<double> high;
};
LowHighSplit split_lowpass(const FrequencyGrid& grid, const std::vector<double>& f, int j0 = 2,
                           const WindowPair& w = default_windows());

struct RateFit {
    double slope = 0.0;         // exponent of N in the joint fit
    double log_exponent = 0.0;  // exponent of log N in the joint fit
    double plain_slope = 0.0;   // exponent of N with no log term
    double plain_r2 = 0.0;
};

// Least squares of log(error) on (1, log N, log log N), plus the plain power fit.
RateFit rate_fit(const std::vector<double>& n, const std::vector<double>& error);

struct RateCurve {
    std::vector<std::size_t> n_terms;
    std::vector<double> sq_error;       // on the high-pass part
    std::vector<double> tail_energy;    // sum of squared discarded coefficients
    RateFit fit;
};

std::vector<std::size_t> default_n_list();  // 2^4 .. 2^14

// Squared l2 error (pixel sum scaled by 1/N^2, i.e. the L2 norm on the unit
// square) of the n-term approximation of the high-pass part of image
// (split_lowpass at lowpass_scale; negative: the whole image).
RateCurve approximation_curve(const DiscreteFrame& frame, const std::vector<double>& image,
                              const std::vector<std::size_t>& n_list, int lowpass_scale = 2);

// Power fit of the sorted coefficient magnitudes |c|_(n) for n in [n_min, n_max].
RateFit magnitude_fit(const CoefficientSet& c, std::size_t n_min, std::size_t n_max);

}  // namespace aniso
