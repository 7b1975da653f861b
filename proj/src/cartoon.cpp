// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 aniso contributors

#include "aniso/cartoon.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace aniso {

namespace {

double profile(double t) {
    if (t <= 0.0 || t >= 1.0) return 0.0;
    const double s = std::sin(kPi * t);
    return s * s * s * s;
}

// Sup norms of s, s', s'' for s(t) = sin^4(pi t), in t units.
std::array<double, 3> profile_sups() {
    static const std::array<double, 3> sups = [] {
        std::array<double, 3> r{0.0, 0.0, 0.0};
        const int n = 20000;
        for (int i = 0; i <= n; ++i) {
            const double u = kPi * i / n;
            const double s = std::sin(u), c = std::cos(u);
            r[0] = std::max(r[0], std::fabs(s * s * s * s));
            r[1] = std::max(r[1], std::fabs(4.0 * kPi * s * s * s * c));
            r[2] = std::max(r[2], std::fabs(kPi * kPi * (12.0 * s * s * c * c - 4.0 * s * s * s * s)));
        }
        return r;
    }();
    return sups;
}

struct LinearFit {
    std::vector<double> beta;
    double r2 = 0.0;
};

// Ordinary least squares with an intercept on the given regressors.
LinearFit least_squares(const std::vector<std::vector<double>>& x, const std::vector<double>& y) {
    const std::size_t p = x.size() + 1, n = y.size();
    std::vector<double> a(p * p, 0.0), rhs(p, 0.0);
    auto reg = [&](std::size_t k, std::size_t i) { return k == 0 ? 1.0 : x[k - 1][i]; };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t r = 0; r < p; ++r) {
            rhs[r] += reg(r, i) * y[i];
            for (std::size_t c = 0; c < p; ++c) a[r * p + c] += reg(r, i) * reg(c, i);
        }
    // Gaussian elimination with partial pivoting.
    for (std::size_t col = 0; col < p; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < p; ++r)
            if (std::fabs(a[r * p + col]) > std::fabs(a[piv * p + col])) piv = r;
        if (std::fabs(a[piv * p + col]) < 1e-12 * (1.0 + std::fabs(a[0])))
            throw std::invalid_argument("degenerate spread");
        for (std::size_t c = 0; c < p; ++c) std::swap(a[col * p + c], a[piv * p + c]);
        std::swap(rhs[col], rhs[piv]);
        for (std::size_t r = 0; r < p; ++r) {
            if (r == col) continue;
            const double f = a[r * p + col] / a[col * p + col];
            for (std::size_t c = 0; c < p; ++c) a[r * p + c] -= f * a[col * p + c];
            rhs[r] -= f * rhs[col];
        }
    }
    LinearFit fit;
    fit.beta.resize(p);
    for (std::size_t r = 0; r < p; ++r) fit.beta[r] = rhs[r] / a[r * p + r];
    double my = 0.0;
    for (double v : y) my += v;
    my /= double(n);
    double ss = 0.0, st = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double pred = 0.0;
        for (std::size_t k = 0; k < p; ++k) pred += fit.beta[k] * reg(k, i);
        ss += (y[i] - pred) * (y[i] - pred);
        st += (y[i] - my) * (y[i] - my);
    }
    fit.r2 = st > 0.0 ? 1.0 - ss / st : 1.0;
    return fit;
}

}  // namespace

double Bump::value(double x, double y) const {
    return amplitude * profile((x - x0) / (x1 - x0)) * profile((y - y0) / (y1 - y0));
}

double Bump::unit_c2_norm() const {
    const auto s = profile_sups();
    const double wx = x1 - x0, wy = y1 - y0;
    const double dx[3] = {s[0], s[1] / wx, s[2] / (wx * wx)};
    const double dy[3] = {s[0], s[1] / wy, s[2] / (wy * wy)};
    return dx[0] * dy[0] + dx[1] * dy[0] + dx[0] * dy[1] + dx[2] * dy[0] + dx[1] * dy[1] +
           dx[0] * dy[2];
}

double StarRegion::rho(double t) const {
    double r = r0;
    for (std::size_t k = 0; k < a.size(); ++k)
        r += a[k] * std::cos((k + 1) * t) + b[k] * std::sin((k + 1) * t);
    return r;
}

double StarRegion::rho_d1(double t) const {
    double r = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        const double m = double(k + 1);
        r += m * (-a[k] * std::sin(m * t) + b[k] * std::cos(m * t));
    }
    return r;
}

double StarRegion::rho_d2(double t) const {
    double r = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        const double m = double(k + 1);
        r -= m * m * (a[k] * std::cos(m * t) + b[k] * std::sin(m * t));
    }
    return r;
}

double StarRegion::curvature(double t) const {
    const double r = rho(t), d1 = rho_d1(t), d2 = rho_d2(t);
    return (r * r + 2.0 * d1 * d1 - r * d2) / std::pow(r * r + d1 * d1, 1.5);
}

double StarRegion::max_abs_curvature(int samples) const {
    double m = 0.0;
    for (int i = 0; i < samples; ++i) m = std::max(m, std::fabs(curvature(2.0 * kPi * i / samples)));
    return m;
}

double StarRegion::min_radius(int samples) const {
    double m = rho(0.0);
    for (int i = 1; i < samples; ++i) m = std::min(m, rho(2.0 * kPi * i / samples));
    return m;
}

double StarRegion::max_radius(int samples) const {
    double m = rho(0.0);
    for (int i = 1; i < samples; ++i) m = std::max(m, rho(2.0 * kPi * i / samples));
    return m;
}

bool StarRegion::contains(double x, double y) const {
    const double dx = x - center.x, dy = y - center.y;
    const double r = std::hypot(dx, dy);
    if (r == 0.0) return true;
    return r < rho(std::atan2(dy, dx));
}

double CartoonImage::value(double x, double y) const {
    double v = f0.value(x, y);
    if (f1.amplitude != 0.0 && region.contains(x, y)) v += f1.value(x, y);
    return v;
}

CartoonImage make_cartoon(std::uint64_t seed, const CartoonOptions& options) {
    if (!(options.nu > 0.0)) throw std::invalid_argument("curvature bound must be positive");
    std::mt19937_64 rng(seed);
    auto uni = [&](double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); };

    CartoonImage img;
    img.nu = options.nu;
    img.seed = seed;
    img.f0 = Bump{0.0, uni(0.02, 0.2), uni(0.8, 0.98), uni(0.02, 0.2), uni(0.8, 0.98)};
    img.f0.amplitude = (uni(0.0, 1.0) < 0.5 ? -1.0 : 1.0) * uni(0.5, 1.0) * options.c2_budget /
                       img.f0.unit_c2_norm();

    if (!options.edge) return img;

    for (int attempt = 0; attempt < options.max_attempts; ++attempt) {
        StarRegion reg;
        reg.center = Vec2{uni(0.45, 0.55), uni(0.45, 0.55)};
        reg.r0 = uni(0.18, 0.28);
        reg.a.resize(options.harmonics);
        reg.b.resize(options.harmonics);
        for (int k = 0; k < options.harmonics; ++k) {
            const double amp = 0.3 * reg.r0 / double((k + 1) * (k + 1));
            reg.a[k] = uni(-amp, amp);
            reg.b[k] = uni(-amp, amp);
        }
        if (reg.min_radius() < 0.5 * reg.r0) continue;
        if (reg.max_abs_curvature() > options.nu) continue;
        const double R = reg.max_radius() + 0.08;
        img.region = reg;
        img.f1 = Bump{0.0, std::max(0.01, reg.center.x - R), std::min(0.99, reg.center.x + R),
                      std::max(0.01, reg.center.y - R), std::min(0.99, reg.center.y + R)};
        img.f1.amplitude = uni(0.5, 1.0) * options.c2_budget / img.f1.unit_c2_norm();
        return img;
    }
    throw std::runtime_error("make_cartoon: no region met the curvature bound " +
                             std::to_string(options.nu) + " after " +
                             std::to_string(options.max_attempts) + " attempts (seed " +
                             std::to_string(seed) + ")");
}

std::vector<double> render(const CartoonImage& img, int n, int supersample) {
    if (n <= 0 || supersample <= 0) throw std::invalid_argument("render: bad size");
    std::vector<double> out(std::size_t(n) * std::size_t(n));
    const double inv = 1.0 / (double(n) * supersample);
    for (int p0 = 0; p0 < n; ++p0)
        for (int p1 = 0; p1 < n; ++p1) {
            double acc = 0.0;
            for (int q0 = 0; q0 < supersample; ++q0)
                for (int q1 = 0; q1 < supersample; ++q1)
                    acc += img.value((p0 * supersample + q0 + 0.5) * inv,
                                     (p1 * supersample + q1 + 0.5) * inv);
            out[std::size_t(p0) * n + p1] = acc / (supersample * supersample);
        }
    return out;
}

LowHighSplit split_lowpass(const FrequencyGrid& grid, const std::vector<double>& f, int j0,
                           const WindowPair& w) {
    auto spec = grid.forward(f);
    const int n = grid.size();
    for (int a = 0; a < n; ++a) {
        const double la = w.phi_hat(std::ldexp(double(grid.frequency(a)), -j0));
        for (int b = 0; b < n; ++b) {
            const double l = la * w.phi_hat(std::ldexp(double(grid.frequency(b)), -j0));
            spec[std::size_t(a) * n + b] *= l * l;
        }
    }
    LowHighSplit s;
    s.low = grid.backward(spec);
    s.high.resize(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) s.high[i] = f[i] - s.low[i];
    return s;
}

RateFit rate_fit(const std::vector<double>& n, const std::vector<double>& error) {
    if (n.size() != error.size()) throw std::invalid_argument("rate_fit: size mismatch");
    if (n.size() < 6) throw std::invalid_argument("degenerate spread: need at least 6 points");
    const auto [lo, hi] = std::minmax_element(n.begin(), n.end());
    if (!(*lo > 1.0) || *hi / *lo < 100.0)
        throw std::invalid_argument("degenerate spread: need N > 1 spanning two decades");
    std::vector<double> ln, lln, le;
    for (std::size_t i = 0; i < n.size(); ++i) {
        if (!(error[i] > 0.0)) throw std::invalid_argument("rate_fit: errors must be positive");
        ln.push_back(std::log(n[i]));
        lln.push_back(std::log(std::log(n[i])));
        le.push_back(std::log(error[i]));
    }
    RateFit r;
    const auto joint = least_squares({ln, lln}, le);
    r.slope = joint.beta[1];
    r.log_exponent = joint.beta[2];
    const auto plain = least_squares({ln}, le);
    r.plain_slope = plain.beta[1];
    r.plain_r2 = plain.r2;
    return r;
}

std::vector<std::size_t> default_n_list() {
    std::vector<std::size_t> v;
    for (int e = 4; e <= 14; ++e) v.push_back(std::size_t(1) << e);
    return v;
}

RateCurve approximation_curve(const DiscreteFrame& frame, const std::vector<double>& image,
                              const std::vector<std::size_t>& n_list, int lowpass_scale) {
    const auto& grid = frame.grid();
    const double scale = 1.0 / double(grid.count());
    const std::vector<double> f =
        lowpass_scale >= 0 ? split_lowpass(grid, image, lowpass_scale).high : image;
    const auto c = frame.analyze(f);
    const auto order = magnitude_order(c);
    std::vector<double> tail(order.size() + 1, 0.0);
    for (std::size_t i = order.size(); i-- > 0;)
        tail[i] = tail[i + 1] + c.values()[order[i]] * c.values()[order[i]];

    RateCurve curve;
    for (std::size_t n : n_list) {
        const std::size_t keep = std::min(n, order.size());
        std::vector<double> kept(c.size(), 0.0);
        for (std::size_t i = 0; i < keep; ++i) kept[order[i]] = c.values()[order[i]];
        const auto approx = grid.backward(frame.synthesize_spectrum(kept));
        double e = 0.0;
        for (std::size_t i = 0; i < f.size(); ++i) e += (f[i] - approx[i]) * (f[i] - approx[i]);
        curve.n_terms.push_back(n);
        curve.sq_error.push_back(e * scale);
        curve.tail_energy.push_back(tail[keep] * scale);
    }
    std::vector<double> nd(n_list.begin(), n_list.end());
    if (nd.size() >= 6) curve.fit = rate_fit(nd, curve.sq_error);
    return curve;
}

RateFit magnitude_fit(const CoefficientSet& c, std::size_t n_min, std::size_t n_max) {
    const auto order = magnitude_order(c);
    n_max = std::min(n_max, order.size());
    if (n_min < 2 || n_max < 100 * n_min) throw std::invalid_argument("degenerate spread");
    std::vector<double> n, v;
    const int samples = 64;
    std::size_t last = 0;
    for (int i = 0; i < samples; ++i) {
        const double t = double(i) / (samples - 1);
        const auto k = std::size_t(std::llround(double(n_min) * std::pow(double(n_max) / n_min, t)));
        if (k == last) continue;
        last = k;
        const double mag = std::fabs(c.values()[order[k - 1]]);
        if (mag == 0.0) break;
        n.push_back(double(k));
        v.push_back(mag);
    }
    return rate_fit(n, v);
}

}  // namespace aniso
