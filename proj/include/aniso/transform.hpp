// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 aniso contributors

#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "aniso/atoms.hpp"
#include "aniso/windows.hpp"

namespace aniso {

enum class FrameKind { curvelet, shearlet, wavelet };

std::string frame_name(FrameKind kind);
FrameKind parse_frame(const std::string& name);

// N x N grid on the torus [0, 2pi)^2. Sample p = (p0, p1) sits at x = 2 pi p / N and
// is stored at p0 * N + p1. Spectra use the unshifted FFT layout: DC at (0, 0), index
// i holds frequency i for i < N/2 and i - N otherwise.
class FrequencyGrid {
public:
    explicit FrequencyGrid(int n);

    int size() const { return n_; }
    std::size_t count() const { return std::size_t(n_) * std::size_t(n_); }
    int frequency(int index) const { return index < n_ / 2 ? index : index - n_; }
    int index(int frequency) const { return ((frequency % n_) + n_) % n_; }
    // Largest scale whose band 2^{j+1} fits under N/2.
    int max_scale() const { return log2n_ - 2; }

    // Unitary DFT: F = fft(f) / N, f = ifft(F) / N.
    std::vector<std::complex<double>> forward(const std::vector<double>& f) const;
    std::vector<double> backward(const std::vector<std::complex<double>>& spectrum) const;

private:
    int n_ = 0;
    int log2n_ = 0;
};

bool is_power_of_two(long long n);

// A (scale, orientation) tile of a discrete frame. The window is sampled on the grid
// spectrum and its support is folded onto an n0 x n1 position lattice; coefficient
// (a, b) sits at pixel position (a N / n0, b N / n1).
struct Tile {
    AtomIndex key;  // m = (0, 0)
    int n0 = 1;
    int n1 = 1;
    std::vector<std::uint32_t> spectrum;  // flat grid spectrum index
    std::vector<std::uint32_t> wrapped;   // flat lattice index
    std::vector<double> weight;           // window value
    std::size_t offset = 0;               // first coefficient in the flat layout

    std::size_t size() const { return std::size_t(n0) * std::size_t(n1); }
};

struct FrameOptions {
    int max_scale = -1;  // -1: grid maximum
    int workers = 1;
};

class CoefficientSet;

// Parseval frame on the grid. Scales 0..J (J = top scale) with the top scale closed by
// W_top so that the window squares sum to 1 at every grid frequency; the DC term is a
// one-point low-pass tile keyed as WaveletIndex{h = 0, j = 0}.
class DiscreteFrame {
public:
    DiscreteFrame(FrameKind kind, int n, const FrameOptions& options = {},
                  const WindowPair& w = default_windows());

    FrameKind kind() const { return kind_; }
    const FrequencyGrid& grid() const { return grid_; }
    int top_scale() const { return top_; }
    const std::vector<int>& skipped_scales() const { return skipped_; }
    const std::vector<Tile>& tiles() const { return tiles_; }
    std::size_t coefficient_count() const { return total_; }
    int workers() const { return workers_; }

    CoefficientSet analyze(const std::vector<double>& f) const;
    std::vector<double> synthesize(const CoefficientSet& c) const;

    // Band-restricted variants working directly on the unitary spectrum.
    std::vector<double> analyze_spectrum(const std::vector<std::complex<double>>& spectrum) const;
    std::vector<std::complex<double>> synthesize_spectrum(const std::vector<double>& values) const;

    // Sum of squared window values per grid frequency (1 for a Parseval frame).
    std::vector<double> window_energy() const;

    std::size_t tile_of(std::size_t flat) const;
    AtomIndex index_of(std::size_t flat) const;
    // Pixel position of coefficient flat.
    std::pair<double, double> position_of(std::size_t flat) const;
    std::size_t flat_of(std::size_t tile, int a, int b) const;

    // Spatial atom for a single unit coefficient.
    std::vector<double> render_atom(std::size_t flat) const;

    // Unitary spectrum of a single unit coefficient as (grid spectrum index, value).
    std::vector<std::pair<std::uint32_t, std::complex<double>>> atom_spectrum(std::size_t flat) const;
    // Tiles whose support meets any of the given grid spectrum indices, ascending.
    std::vector<std::size_t> tiles_touching(const std::vector<std::uint32_t>& spectrum) const;
    // Coefficients of one tile; out must hold tiles()[t].size() values.
    void analyze_tile(std::size_t t, const std::vector<std::complex<double>>& spectrum,
                      double* out) const;

private:
    FrameKind kind_;
    FrequencyGrid grid_;
    int top_ = 0;
    int workers_ = 1;
    std::vector<int> skipped_;
    std::vector<Tile> tiles_;
    std::size_t total_ = 0;
    std::vector<std::uint32_t> touch_offset_;  // per grid frequency, into touch_tiles_
    std::vector<std::uint32_t> touch_tiles_;
};

// Coefficients in the flat layout of a DiscreteFrame: tiles in construction order,
// each tile row-major in (a, b). The window pairs +xi with -xi, so values are real.
class CoefficientSet {
public:
    CoefficientSet() = default;
    CoefficientSet(FrameKind kind, int grid, int top_scale, std::vector<int> skipped,
                   std::vector<double> values);

    FrameKind kind() const { return kind_; }
    int grid() const { return grid_; }
    int top_scale() const { return top_; }
    const std::vector<int>& skipped_scales() const { return skipped_; }
    std::size_t size() const { return values_.size(); }
    std::size_t nonzero_count() const;
    const std::vector<double>& values() const { return values_; }
    std::vector<double>& values() { return values_; }
    std::complex<double> value(std::size_t flat) const { return values_[flat]; }
    double energy() const;

private:
    FrameKind kind_ = FrameKind::curvelet;
    int grid_ = 0;
    int top_ = 0;
    std::vector<int> skipped_;
    std::vector<double> values_;
};

CoefficientSet operator+(const CoefficientSet& a, const CoefficientSet& b);

// Keeps the n largest magnitudes; ties go to the smaller flat index.
CoefficientSet n_term_truncate(const CoefficientSet& c, std::size_t n);

// Flat indices sorted by decreasing magnitude, ties by increasing index.
std::vector<std::size_t> magnitude_order(const CoefficientSet& c);

}  // namespace aniso
