// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 aniso contributors

#include "aniso/transform.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "aniso/fft.hpp"
#include "aniso/geometry.hpp"
#include "aniso/parallel.hpp"

namespace aniso {

namespace {

int positive_mod(int v, int n) { return ((v % n) + n) % n; }

bool is_smooth(int n) {
    for (int p : {2, 3, 5})
        while (n % p == 0) n /= p;
    return n == 1;
}

int smooth_ceil(int n, int cap) {
    for (int v = std::max(n, 1); v < cap; ++v)
        if (is_smooth(v)) return v;
    return cap;
}

int pow2_ceil(int n) {
    int v = 1;
    while (v < n) v *= 2;
    return v;
}

// Raw window of a tile at frequency xi; the top scale is closed by W_top.
double tile_window(const WindowPair& w, const AtomIndex& key, int top, Vec2 xi) {
    if (const auto* c = std::get_if<CurveletIndex>(&key)) {
        const double r = norm(xi);
        if (r == 0.0) return 0.0;
        const double x = std::ldexp(r, -c->j);
        const double radial = c->j == top ? w.W_top(x) : w.W(x);
        if (radial == 0.0) return 0.0;
        const double d = wrap_half_turn(std::atan2(xi.y, xi.x) - curvelet_angle(c->j, c->ell));
        return radial * w.V(d / curvelet_half_width(c->j));
    }
    if (const auto* s = std::get_if<ShearletIndex>(&key)) {
        if (s->j != top) return shearlet_window(w, s->j, s->k, s->cone, xi);
        const Vec2 z = s->cone == 2 ? swapped(xi) : xi;
        if (z.x == 0.0) return 0.0;
        const double radial = w.W_top(std::ldexp(z.x, -s->j));
        if (radial == 0.0) return 0.0;
        const double ang = w.V(s->k + half_power(s->j) * z.y / z.x);
        if (ang == 0.0) return 0.0;
        return radial * ang * cone_weight(1, z, w);
    }
    const auto& v = std::get<WaveletIndex>(key);
    if (v.h == 0) return w.phi_hat(xi.x) * w.phi_hat(xi.y);
    if (v.j != top) return wavelet_window(w, v.h, v.j, xi);
    const double u = std::ldexp(xi.x, -v.j), t = std::ldexp(xi.y, -v.j);
    switch (v.h) {
        case 1: return w.phi_hat(u) * w.W_top(t);
        case 2: return w.W_top(u) * w.phi_hat(t);
        case 3: return w.W_top(u) * w.W_top(t);
        default: return 0.0;
    }
}

// Shortest cyclic arc (length, crosses the Nyquist seam) covering frequencies v on
// a cycle of n.
std::pair<int, bool> cyclic_arc(std::vector<int>& v, int n) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    int gap = v.front() + n - v.back() - 1;
    std::size_t at = v.size();
    for (std::size_t i = 0; i + 1 < v.size(); ++i)
        if (v[i + 1] - v[i] - 1 > gap) {
            gap = v[i + 1] - v[i] - 1;
            at = i;
        }
    if (at == v.size()) return {v.back() - v.front() + 1, false};
    return {n - gap, true};
}

int tile_scale(const AtomIndex& key) {
    if (const auto* v = std::get_if<WaveletIndex>(&key); v && v->h == 0) return -1;
    return atom_scale(key);
}

}  // namespace

std::string frame_name(FrameKind kind) {
    switch (kind) {
        case FrameKind::curvelet: return "curvelet";
        case FrameKind::shearlet: return "shearlet";
        case FrameKind::wavelet: return "wavelet";
    }
    return "unknown";
}

FrameKind parse_frame(const std::string& name) {
    if (name == "curvelet") return FrameKind::curvelet;
    if (name == "shearlet") return FrameKind::shearlet;
    if (name == "wavelet") return FrameKind::wavelet;
    throw std::invalid_argument("unknown frame '" + name + "'");
}

bool is_power_of_two(long long n) { return n > 0 && (n & (n - 1)) == 0; }

FrequencyGrid::FrequencyGrid(int n) : n_(n) {
    if (!is_power_of_two(n)) throw std::invalid_argument("grid must be a power of 2");
    if (n < 4) throw std::invalid_argument("grid must be at least 4");
    while ((1 << log2n_) < n) ++log2n_;
}

std::vector<std::complex<double>> FrequencyGrid::forward(const std::vector<double>& f) const {
    if (f.size() != count()) throw std::invalid_argument("grid size mismatch");
    ComplexBuffer buf(f.begin(), f.end());
    fft2_forward(n_, n_, buf);
    const double s = 1.0 / n_;
    std::vector<std::complex<double>> out(count());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = buf[i] * s;
    return out;
}

std::vector<double> FrequencyGrid::backward(const std::vector<std::complex<double>>& spectrum) const {
    if (spectrum.size() != count()) throw std::invalid_argument("grid size mismatch");
    ComplexBuffer buf(spectrum.begin(), spectrum.end());
    fft2_backward(n_, n_, buf);
    const double s = 1.0 / n_;
    std::vector<double> out(count());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = buf[i].real() * s;
    return out;
}

// ---------------------------------------------------------------------------
// DiscreteFrame
// ---------------------------------------------------------------------------

DiscreteFrame::DiscreteFrame(FrameKind kind, int n, const FrameOptions& options,
                             const WindowPair& w)
    : kind_(kind), grid_(n), workers_(std::max(1, options.workers)) {
    const int gmax = grid_.max_scale();
    top_ = options.max_scale < 0 ? gmax : std::min(options.max_scale, gmax);
    for (int j = gmax + 1; j <= options.max_scale; ++j) skipped_.push_back(j);

    std::vector<AtomIndex> keys;
    keys.push_back(WaveletIndex{0, 0, {0, 0}});
    for (int j = 0; j <= top_; ++j) {
        switch (kind_) {
            case FrameKind::curvelet:
                for (int l = 0; l < curvelet_orientation_count(j); ++l)
                    keys.push_back(CurveletIndex{j, l, {0, 0}});
                break;
            case FrameKind::shearlet:
                for (int cone : {1, 2})
                    for (int k = -shear_limit(j); k <= shear_limit(j); ++k)
                        keys.push_back(ShearletIndex{j, k, {0, 0}, cone});
                break;
            case FrameKind::wavelet:
                for (int h : {1, 2, 3}) keys.push_back(WaveletIndex{h, j, {0, 0}});
                break;
        }
    }

    const int half = n / 2;
    std::vector<Tile> built(keys.size());
    parallel_for(keys.size(), workers_, [&](std::size_t t) {
        const AtomIndex& key = keys[t];
        const int j = tile_scale(key);
        const int reach = j < 0 ? 1 : (j >= top_ - 1 ? half : std::min(half, 1 << (j + 2)));
        Tile tile;
        tile.key = key;
        std::vector<std::array<int, 2>> pts;
        for (int a = -reach; a <= reach; ++a) {
            if (a < -half || a >= half) continue;
            for (int b = -reach; b <= reach; ++b) {
                if (b < -half || b >= half) continue;
                const int ma = a == -half ? -half : -a;
                const int mb = b == -half ? -half : -b;
                const double w1 = tile_window(w, key, top_, Vec2{double(a), double(b)});
                const double w2 = tile_window(w, key, top_, Vec2{double(ma), double(mb)});
                const double v = std::sqrt(0.5 * (w1 * w1 + w2 * w2));
                if (v == 0.0) continue;
                pts.push_back({a, b});
                tile.weight.push_back(v);
                tile.spectrum.push_back(std::uint32_t(grid_.index(a) * n + grid_.index(b)));
            }
        }
        if (pts.empty()) return;

        // Fold the support onto a lattice: shortest cyclic arc along one axis,
        // widest slice arc along the other. Arcs through the Nyquist seam need a
        // lattice size dividing N.
        auto fold = [&](int axis) {
            std::vector<std::vector<int>> slice(n);
            std::vector<int> line;
            for (const auto& p : pts) {
                line.push_back(p[axis]);
                slice[p[axis] + half].push_back(p[1 - axis]);
            }
            auto size_for = [&](std::vector<int>& v) {
                const auto [len, wraps] = cyclic_arc(v, n);
                return wraps ? std::min(n, pow2_ceil(len)) : smooth_ceil(len, n);
            };
            std::array<int, 2> dims{};
            dims[axis] = size_for(line);
            int width = 1;
            for (auto& s : slice)
                if (!s.empty()) width = std::max(width, size_for(s));
            dims[1 - axis] = width;
            return dims;
        };
        auto d0 = fold(0), d1 = fold(1);
        auto dims = (long long)d1[0] * d1[1] < (long long)d0[0] * d0[1] ? d1 : d0;
        for (int axis : {0, 1}) {
            const bool nyquist =
                std::any_of(pts.begin(), pts.end(), [&](const auto& p) { return p[axis] == -half; });
            if (nyquist && n % dims[axis] != 0) dims[axis] = std::min(n, pow2_ceil(dims[axis]));
        }
        tile.n0 = dims[0];
        tile.n1 = dims[1];
        tile.wrapped.reserve(pts.size());
        for (const auto& p : pts)
            tile.wrapped.push_back(
                std::uint32_t(positive_mod(p[0], tile.n0) * tile.n1 + positive_mod(p[1], tile.n1)));
        built[t] = std::move(tile);
    });

    for (auto& tile : built) {
        if (tile.spectrum.empty()) continue;
        tile.offset = total_;
        total_ += tile.size();
        tiles_.push_back(std::move(tile));
    }

    touch_offset_.assign(grid_.count() + 1, 0);
    for (const auto& tile : tiles_)
        for (auto s : tile.spectrum) ++touch_offset_[s + 1];
    for (std::size_t i = 0; i < grid_.count(); ++i) touch_offset_[i + 1] += touch_offset_[i];
    touch_tiles_.resize(touch_offset_.back());
    std::vector<std::uint32_t> fill(touch_offset_.begin(), touch_offset_.end() - 1);
    for (std::size_t t = 0; t < tiles_.size(); ++t)
        for (auto s : tiles_[t].spectrum) touch_tiles_[fill[s]++] = std::uint32_t(t);
}

std::vector<std::pair<std::uint32_t, std::complex<double>>> DiscreteFrame::atom_spectrum(
    std::size_t flat) const {
    const Tile& tile = tiles_[tile_of(flat)];
    const std::size_t local = flat - tile.offset;
    const double a = double(local / tile.n1), b = double(local % tile.n1);
    const double s = 1.0 / std::sqrt(double(tile.size()));
    std::vector<std::pair<std::uint32_t, cplx>> out(tile.spectrum.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        const double k0 = double(tile.wrapped[i] / tile.n1), k1 = double(tile.wrapped[i] % tile.n1);
        const double phase = -2.0 * kPi * (a * k0 / tile.n0 + b * k1 / tile.n1);
        out[i] = {tile.spectrum[i], std::polar(tile.weight[i] * s, phase)};
    }
    return out;
}

std::vector<std::size_t> DiscreteFrame::tiles_touching(
    const std::vector<std::uint32_t>& spectrum) const {
    std::vector<std::size_t> out;
    for (auto s : spectrum)
        for (auto i = touch_offset_.at(s); i < touch_offset_[s + 1]; ++i) out.push_back(touch_tiles_[i]);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

void DiscreteFrame::analyze_tile(std::size_t t, const std::vector<std::complex<double>>& spectrum,
                                 double* out) const {
    const Tile& tile = tiles_.at(t);
    ComplexBuffer buf(tile.size(), cplx(0.0, 0.0));
    for (std::size_t i = 0; i < tile.spectrum.size(); ++i)
        buf[tile.wrapped[i]] = spectrum[tile.spectrum[i]] * tile.weight[i];
    fft2_backward(tile.n0, tile.n1, buf);
    const double s = 1.0 / std::sqrt(double(tile.size()));
    for (std::size_t i = 0; i < tile.size(); ++i) out[i] = buf[i].real() * s;
}

std::vector<double> DiscreteFrame::analyze_spectrum(
    const std::vector<std::complex<double>>& spectrum) const {
    if (spectrum.size() != grid_.count()) throw std::invalid_argument("grid size mismatch");
    std::vector<double> out(total_, 0.0);
    parallel_for(tiles_.size(), workers_,
                 [&](std::size_t t) { analyze_tile(t, spectrum, out.data() + tiles_[t].offset); });
    return out;
}

std::vector<std::complex<double>> DiscreteFrame::synthesize_spectrum(
    const std::vector<double>& values) const {
    if (values.size() != total_) throw std::invalid_argument("coefficient layout mismatch");
    std::vector<std::vector<cplx>> parts(tiles_.size());
    parallel_for(tiles_.size(), workers_, [&](std::size_t t) {
        const Tile& tile = tiles_[t];
        ComplexBuffer buf(tile.size());
        bool any = false;
        for (std::size_t i = 0; i < tile.size(); ++i) {
            buf[i] = values[tile.offset + i];
            any = any || values[tile.offset + i] != 0.0;
        }
        if (!any) return;
        fft2_forward(tile.n0, tile.n1, buf);
        const double s = 1.0 / std::sqrt(double(tile.size()));
        auto& part = parts[t];
        part.resize(tile.spectrum.size());
        for (std::size_t i = 0; i < part.size(); ++i) part[i] = buf[tile.wrapped[i]] * (tile.weight[i] * s);
    });
    std::vector<std::complex<double>> spectrum(grid_.count(), cplx(0.0, 0.0));
    for (std::size_t t = 0; t < tiles_.size(); ++t) {
        const auto& part = parts[t];
        for (std::size_t i = 0; i < part.size(); ++i) spectrum[tiles_[t].spectrum[i]] += part[i];
    }
    return spectrum;
}

CoefficientSet DiscreteFrame::analyze(const std::vector<double>& f) const {
    return CoefficientSet(kind_, grid_.size(), top_, skipped_, analyze_spectrum(grid_.forward(f)));
}

std::vector<double> DiscreteFrame::synthesize(const CoefficientSet& c) const {
    if (c.kind() != kind_ || c.grid() != grid_.size() || c.top_scale() != top_ ||
        c.size() != total_)
        throw std::invalid_argument("coefficient set does not match frame");
    return grid_.backward(synthesize_spectrum(c.values()));
}

std::vector<double> DiscreteFrame::window_energy() const {
    std::vector<double> e(grid_.count(), 0.0);
    for (const auto& tile : tiles_)
        for (std::size_t i = 0; i < tile.spectrum.size(); ++i)
            e[tile.spectrum[i]] += tile.weight[i] * tile.weight[i];
    return e;
}

std::size_t DiscreteFrame::tile_of(std::size_t flat) const {
    if (flat >= total_) throw std::out_of_range("coefficient index out of range");
    auto it = std::upper_bound(tiles_.begin(), tiles_.end(), flat,
                               [](std::size_t f, const Tile& t) { return f < t.offset; });
    return std::size_t(it - tiles_.begin()) - 1;
}

AtomIndex DiscreteFrame::index_of(std::size_t flat) const {
    const Tile& tile = tiles_[tile_of(flat)];
    const std::size_t local = flat - tile.offset;
    const IntPair m{int(local / tile.n1), int(local % tile.n1)};
    AtomIndex key = tile.key;
    std::visit(
        [&](auto& idx) {
            using T = std::decay_t<decltype(idx)>;
            if constexpr (std::is_same_v<T, WaveletIndex>) idx.n = m;
            else idx.m = m;
        },
        key);
    return key;
}

std::pair<double, double> DiscreteFrame::position_of(std::size_t flat) const {
    const Tile& tile = tiles_[tile_of(flat)];
    const std::size_t local = flat - tile.offset;
    const double n = grid_.size();
    return {double(local / tile.n1) * n / tile.n0, double(local % tile.n1) * n / tile.n1};
}

std::size_t DiscreteFrame::flat_of(std::size_t tile, int a, int b) const {
    const Tile& t = tiles_.at(tile);
    return t.offset + std::size_t(positive_mod(a, t.n0)) * t.n1 + std::size_t(positive_mod(b, t.n1));
}

std::vector<double> DiscreteFrame::render_atom(std::size_t flat) const {
    std::vector<double> v(total_, 0.0);
    v.at(flat) = 1.0;
    return grid_.backward(synthesize_spectrum(v));
}

// ---------------------------------------------------------------------------
// CoefficientSet
// ---------------------------------------------------------------------------

CoefficientSet::CoefficientSet(FrameKind kind, int grid, int top_scale, std::vector<int> skipped,
                               std::vector<double> values)
    : kind_(kind), grid_(grid), top_(top_scale), skipped_(std::move(skipped)),
      values_(std::move(values)) {
    for (double v : values_)
        if (!std::isfinite(v)) throw std::invalid_argument("non-finite coefficient");
}

std::size_t CoefficientSet::nonzero_count() const {
    return std::size_t(std::count_if(values_.begin(), values_.end(), [](double v) { return v != 0.0; }));
}

double CoefficientSet::energy() const {
    double e = 0.0;
    for (double v : values_) e += v * v;
    return e;
}

CoefficientSet operator+(const CoefficientSet& a, const CoefficientSet& b) {
    if (a.kind() != b.kind() || a.grid() != b.grid() || a.top_scale() != b.top_scale() ||
        a.size() != b.size())
        throw std::invalid_argument("coefficient sets do not match");
    std::vector<double> v(a.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.values()[i] + b.values()[i];
    return CoefficientSet(a.kind(), a.grid(), a.top_scale(), a.skipped_scales(), std::move(v));
}

namespace {

bool magnitude_before(const std::vector<double>& v, std::size_t x, std::size_t y) {
    const double ax = std::fabs(v[x]), ay = std::fabs(v[y]);
    return ax != ay ? ax > ay : x < y;
}

}  // namespace

std::vector<std::size_t> magnitude_order(const CoefficientSet& c) {
    std::vector<std::size_t> idx(c.size());
    std::iota(idx.begin(), idx.end(), std::size_t(0));
    const auto& v = c.values();
    std::sort(idx.begin(), idx.end(),
              [&](std::size_t x, std::size_t y) { return magnitude_before(v, x, y); });
    return idx;
}

CoefficientSet n_term_truncate(const CoefficientSet& c, std::size_t n) {
    if (n >= c.size()) return c;
    std::vector<std::size_t> idx(c.size());
    std::iota(idx.begin(), idx.end(), std::size_t(0));
    const auto& v = c.values();
    std::vector<double> kept(c.size(), 0.0);
    if (n > 0) {
        std::nth_element(idx.begin(), idx.begin() + std::ptrdiff_t(n - 1), idx.end(),
                         [&](std::size_t x, std::size_t y) { return magnitude_before(v, x, y); });
        for (std::size_t i = 0; i < n; ++i) kept[idx[i]] = v[idx[i]];
    }
    return CoefficientSet(c.kind(), c.grid(), c.top_scale(), c.skipped_scales(), std::move(kept));
}

}  // namespace aniso
