// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 aniso contributors

#pragma once

#include <array>
#include <complex>
#include <variant>

#include "aniso/geometry.hpp"
#include "aniso/windows.hpp"

namespace aniso {

using IntPair = std::array<int, 2>;

struct CurveletIndex {
    int j = 0;
    int ell = 0;
    IntPair m{0, 0};
};

struct ShearletIndex {
    int j = 0;
    int k = 0;
    IntPair m{0, 0};
    int cone = 1;
};

struct WaveletIndex {
    int h = 1;
    int j = 0;
    IntPair n{0, 0};
};

using AtomIndex = std::variant<CurveletIndex, ShearletIndex, WaveletIndex>;

// ---------------------------------------------------------------------------
// Orientation layout
// ---------------------------------------------------------------------------

// Curvelet wedges: L_j = 4*ceil(pi 2^{j/2} / 4) double wedges covering [0, pi),
// centred at theta = pi*ell/L_j with half-width pi/L_j <= 2^{-j/2}.
int curvelet_orientation_count(int j);
double curvelet_angle(int j, int ell);
double curvelet_half_width(int j);

// Cone partition: omega_1^2 + omega_2^2 = 1, blended over |angle - pi/4| <= kConeBlend.
constexpr double kConeBlend = kPi / 16.0;
double cone_slope_limit();  // tan(pi/4 + kConeBlend)
double cone_weight(int cone, Vec2 xi, const WindowPair& w);

// Largest shear present in the frame: ceil(cone_slope_limit() * 2^{j/2}).
int shear_limit(int j);
// ceil(2^{j/2}), the nominal shear range.
int nominal_shear_limit(int j);

// ---------------------------------------------------------------------------
// Windows (no normalisation, no phase)
// ---------------------------------------------------------------------------

double curvelet_window(const WindowPair& w, int j, int ell, Vec2 xi);
double shearlet_window(const WindowPair& w, int j, int k, int cone, Vec2 xi);
double wavelet_window(const WindowPair& w, int h, int j, Vec2 xi);

// Spatial positions p entering the phase exp(i <p, xi>).
Vec2 curvelet_position(int j, int ell, IntPair m);
Vec2 shearlet_position(int j, int k, int cone, IntPair m);
Vec2 wavelet_position(int j, IntPair n);

// ---------------------------------------------------------------------------
// Fourier transforms of atoms
// ---------------------------------------------------------------------------

std::complex<double> curvelet_hat(const CurveletIndex& mu, Vec2 xi,
                                  const WindowPair& w = default_windows());
std::complex<double> shearlet_hat(const ShearletIndex& eta, Vec2 xi,
                                  const WindowPair& w = default_windows());
std::complex<double> wavelet_hat(const WaveletIndex& nu, Vec2 xi,
                                 const WindowPair& w = default_windows());
std::complex<double> atom_hat(const AtomIndex& a, Vec2 xi,
                              const WindowPair& w = default_windows());

int atom_scale(const AtomIndex& a);
double atom_amplitude(const AtomIndex& a);
double atom_window(const AtomIndex& a, Vec2 xi, const WindowPair& w = default_windows());
Vec2 atom_position(const AtomIndex& a);

}  // namespace aniso
