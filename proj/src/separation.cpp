// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 aniso contributors

#include "aniso/separation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>

#include "aniso/fft.hpp"
#include "aniso/parallel.hpp"

namespace aniso {

namespace {

using Spectrum = std::vector<std::complex<double>>;

double periodic_delta(double d) { return d - std::round(d); }

double torus_distance(Vec2 a, Vec2 b) {
    return std::hypot(periodic_delta(a.x - b.x), periodic_delta(a.y - b.y));
}

double l2(const Spectrum& v) {
    double s = 0.0;
    for (const auto& z : v) s += std::norm(z);
    return std::sqrt(s);
}

double l1(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += std::fabs(x);
    return s;
}

double weighted_l1(const std::vector<double>& c, const std::vector<double>& w) {
    double s = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) s += w[i] * std::fabs(c[i]);
    return s;
}

double huber(const std::vector<double>& c, const std::vector<double>& w, double mu) {
    double s = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) {
        const double a = std::fabs(c[i]);
        s += w[i] * (a <= mu ? 0.5 * a * a / mu : a - 0.5 * mu);
    }
    return s;
}

void huber_grad(std::vector<double>& c, const std::vector<double>& w, double mu) {
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = w[i] * std::clamp(c[i] / mu, -1.0, 1.0);
}

// Copies the band |xi|_inf < m/2 of an n-grid spectrum onto an m-grid spectrum,
// rescaled so both are unitary spectra of the same function.
Spectrum restrict_spectrum(const Spectrum& s, int n, int m) {
    if (m == n) return s;
    Spectrum out(std::size_t(m) * m);
    const double scale = double(m) / n;
    for (int a = 0; a < m; ++a) {
        const int fa = a < m / 2 ? a : a - m;
        for (int b = 0; b < m; ++b) {
            const int fb = b < m / 2 ? b : b - m;
            out[std::size_t(a) * m + b] =
                s[std::size_t((fa + n) % n) * n + std::size_t((fb + n) % n)] * scale;
        }
    }
    return out;
}

Spectrum extend_spectrum(const Spectrum& s, int m, int n) {
    if (m == n) return s;
    Spectrum out(std::size_t(n) * n, {0.0, 0.0});
    const double scale = double(n) / m;
    for (int a = 0; a < m; ++a) {
        const int fa = a < m / 2 ? a : a - m;
        for (int b = 0; b < m; ++b) {
            const int fb = b < m / 2 ? b : b - m;
            out[std::size_t((fa + n) % n) * n + std::size_t((fb + n) % n)] =
                s[std::size_t(a) * m + b] * scale;
        }
    }
    return out;
}

Spectrum difference(const Spectrum& a, const Spectrum& b) {
    Spectrum d(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
    return d;
}

int positive_mod(int v, int n) { return ((v % n) + n) % n; }

// Sum over source atoms of |analysis coefficient| in every destination coefficient.
// For one (source tile, destination tile) pair every source atom is a lattice translate
// of one kernel H on the common lattice lcm(n0, n0') x lcm(n1, n1'), so the sums are a
// cyclic convolution of |H| with the atom indicator. Parallel over destination tiles,
// each visiting source tiles in a fixed order.
std::vector<double> cross_abs_sums(const DiscreteFrame& src, const std::vector<std::size_t>& atoms,
                                   const DiscreteFrame& dst, int workers) {
    std::vector<double> acc(dst.coefficient_count(), 0.0);
    if (atoms.empty()) return acc;
    std::map<std::size_t, std::vector<std::size_t>> by_tile;
    for (std::size_t a : atoms) by_tile[src.tile_of(a)].push_back(a);
    const FrequencyGrid& grid = src.grid();
    const int m = grid.size();

    const auto& dtiles = dst.tiles();
    parallel_for(dtiles.size(), workers, [&](std::size_t t) {
        const Tile& T = dtiles[t];
        std::vector<std::int32_t> where(grid.count(), -1);
        for (std::size_t i = 0; i < T.spectrum.size(); ++i) where[T.spectrum[i]] = std::int32_t(i);
        ComplexBuffer buf(T.size());
        const double sT = 1.0 / std::sqrt(double(T.size()));
        for (const auto& [st, members] : by_tile) {
            const Tile& S = src.tiles()[st];
            std::vector<std::pair<std::uint32_t, std::uint32_t>> overlap;
            for (std::size_t i = 0; i < S.spectrum.size(); ++i)
                if (where[S.spectrum[i]] >= 0) overlap.push_back({std::uint32_t(i), std::uint32_t(where[S.spectrum[i]])});
            if (overlap.empty()) continue;
            const double scale = 1.0 / std::sqrt(double(S.size()) * double(T.size()));
            const int l0 = std::lcm(S.n0, T.n0), l1 = std::lcm(S.n1, T.n1);
            const double lsize = double(l0) * l1, tsize = double(T.size());
            const double conv_cost = 3.0 * lsize * std::log2(lsize + 1.0);
            const double direct_cost = double(members.size()) * (tsize * std::log2(tsize + 1.0) + double(overlap.size()));
            if (lsize <= 4.0 * double(grid.count()) && conv_cost < direct_cost) {
                ComplexBuffer h(std::size_t(l0) * l1, cplx(0.0, 0.0));
                for (const auto& [i, k] : overlap) {
                    const int f0 = grid.frequency(int(S.spectrum[i] / std::uint32_t(m)));
                    const int f1 = grid.frequency(int(S.spectrum[i] % std::uint32_t(m)));
                    h[std::size_t(positive_mod(f0, l0)) * l1 + std::size_t(positive_mod(f1, l1))] +=
                        S.weight[i] * T.weight[k];
                }
                fft2_backward(l0, l1, h);
                for (auto& v : h) v = cplx(std::fabs(v.real()) * scale, 0.0);
                ComplexBuffer ind(h.size(), cplx(0.0, 0.0));
                const int s0 = l0 / S.n0, s1 = l1 / S.n1;
                for (std::size_t atom : members) {
                    const std::size_t local = atom - S.offset;
                    const int a = int(local / std::size_t(S.n1)), b = int(local % std::size_t(S.n1));
                    ind[std::size_t(a * s0) * l1 + std::size_t(b * s1)] += 1.0;
                }
                fft2_forward(l0, l1, h);
                fft2_forward(l0, l1, ind);
                for (std::size_t i = 0; i < h.size(); ++i) h[i] *= ind[i];
                fft2_backward(l0, l1, h);
                const double norm = 1.0 / lsize;
                const int d0 = l0 / T.n0, d1 = l1 / T.n1;
                for (int c = 0; c < T.n0; ++c)
                    for (int d = 0; d < T.n1; ++d)
                        acc[T.offset + std::size_t(c) * T.n1 + std::size_t(d)] +=
                            std::max(0.0, h[std::size_t(c * d0) * l1 + std::size_t(d * d1)].real() * norm);
                continue;
            }
            std::vector<cplx> tw0(std::size_t(S.n0)), tw1(std::size_t(S.n1));
            for (int r = 0; r < S.n0; ++r) tw0[std::size_t(r)] = std::polar(1.0, -2.0 * kPi * r / S.n0);
            for (int r = 0; r < S.n1; ++r) tw1[std::size_t(r)] = std::polar(1.0, -2.0 * kPi * r / S.n1);
            for (std::size_t atom : members) {
                const std::size_t local = atom - S.offset;
                const std::size_t a = local / std::size_t(S.n1), b = local % std::size_t(S.n1);
                std::fill(buf.begin(), buf.end(), cplx(0.0, 0.0));
                for (const auto& [i, k] : overlap) {
                    const std::size_t k0 = S.wrapped[i] / std::uint32_t(S.n1), k1 = S.wrapped[i] % std::uint32_t(S.n1);
                    buf[T.wrapped[k]] += (S.weight[i] * T.weight[k] * scale / sT) *
                                         tw0[(a * k0) % std::size_t(S.n0)] * tw1[(b * k1) % std::size_t(S.n1)];
                }
                fft2_backward(T.n0, T.n1, buf);
                for (std::size_t i = 0; i < T.size(); ++i) acc[T.offset + i] += std::fabs(buf[i].real() * sT);
            }
        }
    });
    return acc;
}

int tile_level(const AtomIndex& key) {
    if (const auto* v = std::get_if<WaveletIndex>(&key); v && v->h == 0) return -1;
    return atom_scale(key);
}

}  // namespace

// ---------------------------------------------------------------------------
// Mixture model
// ---------------------------------------------------------------------------

Vec2 CurveSpec::point(double t) const {
    const double s = 2.0 * kPi * t;
    double r = r0;
    for (std::size_t k = 0; k < a.size(); ++k) r += a[k] * std::cos((k + 1) * s);
    for (std::size_t k = 0; k < b.size(); ++k) r += b[k] * std::sin((k + 1) * s);
    return {center.x + r * std::cos(s), center.y + r * std::sin(s)};
}

Vec2 CurveSpec::tangent(double t) const {
    const double s = 2.0 * kPi * t;
    double r = r0, dr = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        r += a[k] * std::cos((k + 1) * s);
        dr -= a[k] * (k + 1) * std::sin((k + 1) * s);
    }
    for (std::size_t k = 0; k < b.size(); ++k) {
        r += b[k] * std::sin((k + 1) * s);
        dr += b[k] * (k + 1) * std::cos((k + 1) * s);
    }
    const double c = std::cos(s), sn = std::sin(s);
    return {2.0 * kPi * (dr * c - r * sn), 2.0 * kPi * (dr * sn + r * c)};
}

double CurveSpec::length(int samples) const {
    double len = 0.0;
    for (int i = 0; i < samples; ++i) len += norm(tangent((i + 0.5) / samples));
    return len / samples;
}

bool CurveSpec::self_intersects(int samples) const {
    for (int i = 0; i < samples; ++i) {
        const Vec2 p = point(double(i) / samples);
        const double s = 2.0 * kPi * i / samples;
        if ((p.x - center.x) * std::cos(s) + (p.y - center.y) * std::sin(s) <= 0.0) return true;
    }
    return false;
}

MixtureSpec default_mixture() { return MixtureSpec{}; }

std::vector<double> MixtureModel::total() const {
    std::vector<double> t(points.size());
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = points[i] + curve[i];
    return t;
}

double point_profile(const MixtureSpec& spec, int n, double r) {
    if (r >= spec.taper_outer) return 0.0;
    const double rc = std::max(r, spec.clip_pixels / n);
    double v = std::pow(rc, -1.5);
    if (r > spec.taper_inner)
        v *= default_windows().V((r - spec.taper_inner) / (spec.taper_outer - spec.taper_inner));
    return v;
}

MixtureModel render_mixture(const MixtureSpec& spec, int n) {
    if (!is_power_of_two(n)) throw std::invalid_argument("grid must be a power of 2");
    MixtureModel mix;
    mix.spec = spec;
    mix.n = n;
    mix.points.assign(std::size_t(n) * n, 0.0);
    mix.curve.assign(std::size_t(n) * n, 0.0);
    for (const auto& x : spec.points) {
        if (x.x < 0.0 || x.x >= 1.0 || x.y < 0.0 || x.y >= 1.0)
            throw std::invalid_argument("mixture point outside the unit square");
        for (int p0 = 0; p0 < n; ++p0)
            for (int p1 = 0; p1 < n; ++p1) {
                const double r = torus_distance(Vec2{double(p0) / n, double(p1) / n}, x);
                mix.points[std::size_t(p0) * n + p1] += spec.point_weight * point_profile(spec, n, r);
            }
    }
    if (spec.with_curve) {
        const double len = spec.curve.length();
        const std::size_t samples = std::size_t(std::ceil(len * n * 8.0));
        const double dt = 1.0 / double(samples);
        for (std::size_t i = 0; i < samples; ++i) {
            const double t = (double(i) + 0.5) * dt;
            const Vec2 p = spec.curve.point(t);
            const double mass = spec.curve_weight * norm(spec.curve.tangent(t)) * dt * double(n) * n;
            const double u = p.x * n, v = p.y * n;
            const double fu = std::floor(u), fv = std::floor(v);
            const double du = u - fu, dv = v - fv;
            const int iu = int(fu), iv = int(fv);
            auto at = [&](int a, int b) -> double& {
                return mix.curve[std::size_t(((a % n) + n) % n) * n + std::size_t(((b % n) + n) % n)];
            };
            at(iu, iv) += mass * (1 - du) * (1 - dv);
            at(iu + 1, iv) += mass * du * (1 - dv);
            at(iu, iv + 1) += mass * (1 - du) * dv;
            at(iu + 1, iv + 1) += mass * du * dv;
        }
    }
    return mix;
}

// ---------------------------------------------------------------------------
// Coronae
// ---------------------------------------------------------------------------

std::vector<double> scale_filter(const FrequencyGrid& grid, int j, const WindowPair& w) {
    const int n = grid.size();
    std::vector<double> f(grid.count());
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            const double r = std::max(std::abs(grid.frequency(a)), std::abs(grid.frequency(b)));
            f[std::size_t(a) * n + b] = w.W(std::ldexp(r, -j));
        }
    return f;
}

std::vector<Corona> corona_decompose(const std::vector<double>& f, int n, int j_lo, int j_hi,
                                     const WindowPair& w) {
    FrequencyGrid grid(n);
    if (j_hi > grid.max_scale()) throw std::invalid_argument("scale exceeds the grid band");
    const auto spec = grid.forward(f);
    std::vector<Corona> out;
    for (int j = j_lo; j <= j_hi; ++j) {
        const auto filt = scale_filter(grid, j, w);
        Spectrum s(spec.size());
        for (std::size_t i = 0; i < s.size(); ++i) s[i] = spec[i] * filt[i];
        out.push_back({j, grid.backward(s)});
    }
    return out;
}

std::vector<double> corona_reconstruct(const std::vector<Corona>& parts, int n, const WindowPair& w) {
    FrequencyGrid grid(n);
    Spectrum acc(grid.count(), {0.0, 0.0});
    for (const auto& part : parts) {
        const auto filt = scale_filter(grid, part.j, w);
        const auto s = grid.forward(part.f);
        for (std::size_t i = 0; i < s.size(); ++i) acc[i] += s[i] * filt[i];
    }
    return grid.backward(acc);
}

// ---------------------------------------------------------------------------
// Solver
// ---------------------------------------------------------------------------

std::vector<double> l1_weights(const DiscreteFrame& frame, L1Weighting weighting) {
    std::vector<double> w(frame.coefficient_count(), 1.0);
    if (weighting == L1Weighting::none) return w;
    double global = 1.0;
    if (weighting == L1Weighting::redundancy) {
        double support = 0.0;
        for (const auto& t : frame.tiles()) support += double(t.spectrum.size());
        global = 1.0 / std::sqrt(support / double(frame.grid().count()));
    }
    for (const auto& t : frame.tiles()) {
        const double v = global * std::sqrt(double(t.spectrum.size()) / double(t.size()));
        std::fill(w.begin() + std::ptrdiff_t(t.offset), w.begin() + std::ptrdiff_t(t.offset + t.size()), v);
    }
    return w;
}

SplitSpectra csep_solve(const Spectrum& f, const DiscreteFrame& wavelets,
                        const DiscreteFrame& shearlets, const SolverParams& params) {
    if (wavelets.grid().size() != shearlets.grid().size() || f.size() != wavelets.grid().count())
        throw std::invalid_argument("csep_solve: grid mismatch");
    SplitSpectra out;
    const std::size_t size = f.size();
    auto af = wavelets.analyze_spectrum(f);
    auto bf = shearlets.analyze_spectrum(f);
    double peak = 0.0;
    for (double v : af) peak = std::max(peak, std::fabs(v));
    for (double v : bf) peak = std::max(peak, std::fabs(v));
    if (peak == 0.0) {
        out.w.assign(size, {0.0, 0.0});
        out.s.assign(size, {0.0, 0.0});
        out.report.converged = true;
        return out;
    }
    const double mu = params.huber_fraction * peak;
    const auto wa = l1_weights(wavelets, params.weighting);
    const auto wb = l1_weights(shearlets, params.weighting);
    const double wmax = std::max(*std::max_element(wa.begin(), wa.end()), *std::max_element(wb.begin(), wb.end()));
    const double step = 0.5 * mu / wmax;  // 1 / L, L = wmax (|A|^2 + |B|^2) / mu

    auto objective = [&](const Spectrum& x, double* plain) {
        auto a = wavelets.analyze_spectrum(x);
        auto b = shearlets.analyze_spectrum(difference(f, x));
        if (plain) *plain = weighted_l1(a, wa) + weighted_l1(b, wb);
        return huber(a, wa, mu) + huber(b, wb, mu);
    };

    Spectrum x(size), y, z(size);
    for (std::size_t i = 0; i < size; ++i) x[i] = 0.5 * f[i];
    y = x;
    double gx = objective(x, nullptr);
    double t = 1.0;
    auto& rep = out.report;
    rep.history.push_back(gx);
    for (int k = 1; k <= params.max_iter; ++k) {
        auto a = wavelets.analyze_spectrum(y);
        auto b = shearlets.analyze_spectrum(difference(f, y));
        huber_grad(a, wa, mu);
        huber_grad(b, wb, mu);
        const auto ga = wavelets.synthesize_spectrum(a);
        const auto gb = shearlets.synthesize_spectrum(b);
        for (std::size_t i = 0; i < size; ++i) z[i] = y[i] - step * (ga[i] - gb[i]);
        const double gz = objective(z, nullptr);
        const bool accept = gz <= gx;
        const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
        Spectrum x_next = accept ? z : x;
        for (std::size_t i = 0; i < size; ++i)
            y[i] = x_next[i] + (t / t_next) * (z[i] - x_next[i]) + ((t - 1.0) / t_next) * (x_next[i] - x[i]);
        x = std::move(x_next);
        if (accept) gx = gz;
        t = t_next;
        rep.history.push_back(gx);
        rep.iterations = k;
        if (rep.history[k] > rep.history[k - 1]) rep.monotone = false;
        if (k >= 10 && rep.history[k - 10] - rep.history[k] <= params.tolerance * std::fabs(rep.history[k])) {
            rep.converged = true;
            break;
        }
    }
    double plain = 0.0;
    rep.smoothed_objective = objective(x, &plain);
    rep.objective = plain;
    out.s = difference(f, x);
    out.w = std::move(x);
    Spectrum sum(size);
    for (std::size_t i = 0; i < size; ++i) sum[i] = out.w[i] + out.s[i] - f[i];
    const double nf = l2(f);
    rep.feasibility = nf > 0.0 ? l2(sum) / nf : 0.0;
    return out;
}

// ---------------------------------------------------------------------------
// Clusters and coherence
// ---------------------------------------------------------------------------

Clusters make_clusters(const MixtureSpec& spec, int j, const DiscreteFrame& wavelets,
                       const DiscreteFrame& shearlets) {
    const double radius = 2.0 * std::ldexp(1.0, -j);
    const double angle_tol = 2.0 * std::pow(2.0, -0.5 * j);
    const double m = wavelets.grid().size();
    Clusters c;

    for (std::size_t t = 0; t < wavelets.tiles().size(); ++t) {
        const Tile& tile = wavelets.tiles()[t];
        const int level = tile_level(tile.key);
        if (level < j - 1 || level > j + 1) continue;
        for (std::size_t i = 0; i < tile.size(); ++i) {
            const auto [p0, p1] = wavelets.position_of(tile.offset + i);
            const Vec2 x{p0 / m, p1 / m};
            for (const auto& pt : spec.points)
                if (torus_distance(x, pt) <= radius) {
                    c.wavelet.push_back(tile.offset + i);
                    break;
                }
        }
    }

    if (!spec.with_curve) return c;
    // Curve samples bucketed on cells of side radius.
    const int cells = std::max(1, int(std::floor(1.0 / radius)));
    std::vector<std::vector<std::pair<Vec2, Vec2>>> bucket(std::size_t(cells) * cells);
    const int samples = std::max(4096, int(spec.curve.length() / radius * 64.0));
    auto cell = [&](double u) { return std::min(cells - 1, int(std::floor((u - std::floor(u)) * cells))); };
    for (int i = 0; i < samples; ++i) {
        const double t = (i + 0.5) / samples;
        const Vec2 p = spec.curve.point(t);
        const Vec2 tg = spec.curve.tangent(t);
        const Vec2 normal{tg.y, -tg.x};
        bucket[std::size_t(cell(p.x)) * cells + cell(p.y)].push_back({p, normal});
    }
    for (std::size_t t = 0; t < shearlets.tiles().size(); ++t) {
        const Tile& tile = shearlets.tiles()[t];
        const int level = tile_level(tile.key);
        if (level < j - 1 || level > j + 1) continue;
        const auto& key = std::get<ShearletIndex>(tile.key);
        const double s = -key.k * std::pow(2.0, -0.5 * key.j);
        const double direction = key.cone == 1 ? std::atan(s) : std::atan2(1.0, s);
        for (std::size_t i = 0; i < tile.size(); ++i) {
            const auto [p0, p1] = shearlets.position_of(tile.offset + i);
            const Vec2 x{p0 / m, p1 / m};
            const int cx = cell(x.x), cy = cell(x.y);
            double best = std::numeric_limits<double>::infinity();
            Vec2 best_normal{1.0, 0.0};
            for (int dx = -1; dx <= 1; ++dx)
                for (int dy = -1; dy <= 1; ++dy) {
                    const auto& b = bucket[std::size_t(((cx + dx) % cells + cells) % cells) * cells +
                                           std::size_t(((cy + dy) % cells + cells) % cells)];
                    for (const auto& [p, nrm] : b) {
                        const double d = torus_distance(x, p);
                        if (d < best) {
                            best = d;
                            best_normal = nrm;
                        }
                    }
                }
            if (best > radius) continue;
            const double normal_angle = std::atan2(best_normal.y, best_normal.x);
            if (std::fabs(wrap_half_turn(direction - normal_angle)) <= angle_tol)
                c.shearlet.push_back(tile.offset + i);
        }
    }
    return c;
}

double cluster_coherence(const std::vector<std::size_t>& s1, const std::vector<std::size_t>& s2,
                         const DiscreteFrame& wavelets, const DiscreteFrame& shearlets, int workers) {
    double mu = 0.0;
    if (!s1.empty()) {
        const auto acc = cross_abs_sums(wavelets, s1, shearlets, workers);
        mu = std::max(mu, *std::max_element(acc.begin(), acc.end()));
    }
    if (!s2.empty()) {
        const auto acc = cross_abs_sums(shearlets, s2, wavelets, workers);
        mu = std::max(mu, *std::max_element(acc.begin(), acc.end()));
    }
    return mu;
}

// ---------------------------------------------------------------------------
// Pipeline
// ---------------------------------------------------------------------------

int solve_grid_size(int n, int j) { return std::min(n, 1 << (j + 3)); }

ScaleResult separate_scale(const MixtureModel& mix, int j, const SeparationOptions& options) {
    const int n = mix.n;
    FrequencyGrid grid(n);
    if (j < 1 || (1 << (j + 1)) > n / 4) throw std::invalid_argument("scale exceeds the grid band");
    const int m = solve_grid_size(n, j);

    const auto filt = scale_filter(grid, j);
    auto band = [&](const std::vector<double>& g) {
        auto s = grid.forward(g);
        for (std::size_t i = 0; i < s.size(); ++i) s[i] *= filt[i];
        return restrict_spectrum(s, n, m);
    };
    const Spectrum pj = band(mix.points), cj = band(mix.curve);
    Spectrum fj(pj.size());
    for (std::size_t i = 0; i < fj.size(); ++i) fj[i] = pj[i] + cj[i];

    FrameOptions fo;
    fo.workers = options.workers;
    const DiscreteFrame wav(FrameKind::wavelet, m, fo), she(FrameKind::shearlet, m, fo);

    auto split = csep_solve(fj, wav, she, options.solver);

    ScaleResult r;
    r.j = j;
    r.solve_grid = m;
    r.point_error = l2(difference(split.w, pj));
    r.curve_error = l2(difference(split.s, cj));
    r.point_norm = l2(pj);
    r.curve_norm = l2(cj);
    const double denom = r.point_norm + r.curve_norm;
    r.ratio = denom > 0.0 ? (r.point_error + r.curve_error) / denom : 0.0;
    r.report = std::move(split.report);

    const Clusters cl = make_clusters(mix.spec, j, wav, she);
    r.cluster_wavelet = cl.wavelet.size();
    r.cluster_shearlet = cl.shearlet.size();
    {
        auto a = wav.analyze_spectrum(pj);
        auto b = she.analyze_spectrum(cj);
        for (std::size_t i : cl.wavelet) a[i] = 0.0;
        for (std::size_t i : cl.shearlet) b[i] = 0.0;
        r.delta = l1(a) + l1(b);
    }
    if (options.coherence) {
        r.coherence = cluster_coherence(cl.wavelet, cl.shearlet, wav, she, options.workers);
        r.bound = r.coherence < 0.5 ? 2.0 * r.delta / (1.0 - 2.0 * r.coherence)
                                    : std::numeric_limits<double>::infinity();
    }
    if (options.keep_grids) {
        r.w_grid = grid.backward(extend_spectrum(split.w, m, n));
        r.s_grid = grid.backward(extend_spectrum(split.s, m, n));
    }
    return r;
}

std::vector<ScaleResult> separation_ratio_curve(const MixtureModel& mix, const std::vector<int>& js,
                                                const SeparationOptions& options) {
    std::vector<ScaleResult> out;
    for (int j : js) out.push_back(separate_scale(mix, j, options));
    return out;
}

}  // namespace aniso
