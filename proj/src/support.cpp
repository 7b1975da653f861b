// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 aniso contributors

#include "aniso/support.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace aniso {

Interval intersect(Interval a, Interval b) {
    return {std::max(a.lo, b.lo), std::min(a.hi, b.hi)};
}

Box intersect(const Box& a, const Box& b) { return {intersect(a.x, b.x), intersect(a.y, b.y)}; }

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Angular description shared by curvelets and shearlets: angles alpha (mod pi)
// in `angle`, and r * g(alpha) in `radial`, with g = 1, |cos| or |sin|.
enum class Gauge { Radius, Cos, Sin };

struct Sector {
    Interval angle;  // representative with lo in [-pi/2, pi/2)
    Interval radial;
    Gauge gauge;
};

double gauge_value(Gauge g, double a) {
    switch (g) {
        case Gauge::Radius: return 1.0;
        case Gauge::Cos: return std::fabs(std::cos(a));
        case Gauge::Sin: return std::fabs(std::sin(a));
    }
    return 1.0;
}

Interval normalise(Interval a) {
    const double shift = std::floor((a.lo + kPi / 2) / kPi) * kPi;
    return {a.lo - shift, a.hi - shift};
}

Sector sector_of(const SupportRegion& s) {
    if (s.kind == SupportRegion::Kind::Curvelet) return {normalise(s.angle), s.radial, Gauge::Radius};
    Interval a{std::atan(s.slope.lo), std::atan(s.slope.hi)};
    if (s.cone == 1) return {a, s.radial, Gauge::Cos};
    return {normalise({kPi / 2 - a.hi, kPi / 2 - a.lo}), s.radial, Gauge::Sin};
}

// Pieces of the intersection of two angle sets modulo pi.
std::vector<Interval> angle_overlap(Interval a, Interval b) {
    std::vector<Interval> out;
    for (int shift = -1; shift <= 1; ++shift) {
        Interval bs{b.lo + shift * kPi, b.hi + shift * kPi};
        Interval c = intersect(a, bs);
        if (!c.empty()) out.push_back(c);
    }
    return out;
}

// Critical angles inside a piece: endpoints and multiples of pi/2.
std::vector<double> critical_angles(Interval piece) {
    std::vector<double> pts{piece.lo, piece.hi};
    for (int q = static_cast<int>(std::ceil(piece.lo / (kPi / 2))); q * (kPi / 2) <= piece.hi; ++q)
        pts.push_back(q * (kPi / 2));
    return pts;
}

bool sectors_intersect(const Sector& s, const Sector& t) {
    if (s.radial.empty() || t.radial.empty()) return false;
    for (const Interval& piece : angle_overlap(s.angle, t.angle)) {
        // Need rho = g_t / g_s in [t.lo / s.hi, t.hi / s.lo] somewhere on the piece;
        // rho is monotone between critical angles.
        double rmin = kInf, rmax = -kInf;
        for (double a : critical_angles(piece)) {
            const double gs = gauge_value(s.gauge, a), gt = gauge_value(t.gauge, a);
            const double rho = gs > 0.0 ? gt / gs : (gt > 0.0 ? kInf : 1.0);
            rmin = std::min(rmin, rho);
            rmax = std::max(rmax, rho);
        }
        const double need_lo = s.radial.hi > 0.0 ? t.radial.lo / s.radial.hi : kInf;
        const double need_hi = s.radial.lo > 0.0 ? t.radial.hi / s.radial.lo : kInf;
        if (rmax >= need_lo && rmin <= need_hi) return true;
    }
    return false;
}

Box abs_to_lobe(const Box& abs, bool upper) {
    // Used for wavelets: lobe split by the sign of xi_2 (h = 1, 3) or xi_1 (h = 2).
    return upper ? Box{{-abs.x.hi, abs.x.hi}, abs.y} : Box{abs.x, {-abs.y.hi, abs.y.hi}};
}

Box negate(const Box& b) { return {{-b.x.hi, -b.x.lo}, {-b.y.hi, -b.y.lo}}; }

}  // namespace

bool SupportRegion::contains(Vec2 xi) const {
    switch (kind) {
        case Kind::Curvelet: {
            const double r = norm(xi);
            if (!radial.contains(r) || r == 0.0) return false;
            const double centre = 0.5 * (angle.lo + angle.hi);
            const double half = 0.5 * (angle.hi - angle.lo);
            return std::fabs(wrap_half_turn(std::atan2(xi.y, xi.x) - centre)) <= half * (1 + 1e-12);
        }
        case Kind::Shearlet: {
            if (cone == 2) xi = swapped(xi);
            if (xi.x == 0.0 || !radial.contains(std::fabs(xi.x))) return false;
            return slope.contains(xi.y / xi.x);
        }
        case Kind::Wavelet:
            return abs_box.x.contains(std::fabs(xi.x)) && abs_box.y.contains(std::fabs(xi.y));
    }
    return false;
}

std::array<Box, 2> SupportRegion::lobe_boxes() const {
    Box plus;
    switch (kind) {
        case Kind::Curvelet: {
            const Interval a = normalise(angle);
            double xl = kInf, xh = -kInf, yl = kInf, yh = -kInf;
            for (double t : critical_angles(a)) {
                for (double r : {radial.lo, radial.hi}) {
                    xl = std::min(xl, r * std::cos(t));
                    xh = std::max(xh, r * std::cos(t));
                    yl = std::min(yl, r * std::sin(t));
                    yh = std::max(yh, r * std::sin(t));
                }
            }
            plus = {{xl, xh}, {yl, yh}};
            break;
        }
        case Kind::Shearlet: {
            const double a = radial.lo, b = radial.hi;
            Interval t{std::min(a * slope.lo, b * slope.lo), std::max(a * slope.hi, b * slope.hi)};
            plus = cone == 1 ? Box{radial, t} : Box{t, radial};
            break;
        }
        case Kind::Wavelet:
            plus = abs_box.x.lo > 0.0 && abs_box.y.lo == 0.0 ? Box{abs_box.x, {-abs_box.y.hi, abs_box.y.hi}}
                                                             : abs_to_lobe(abs_box, true);
            break;
    }
    return {plus, negate(plus)};
}

SupportRegion support_box(const AtomIndex& index) {
    SupportRegion s;
    if (const auto* c = std::get_if<CurveletIndex>(&index)) {
        s.kind = SupportRegion::Kind::Curvelet;
        s.radial = {std::ldexp(1.0, c->j - 1), std::ldexp(1.0, c->j + 1)};
        const double th = curvelet_angle(c->j, c->ell), d = curvelet_half_width(c->j);
        s.angle = {th - d, th + d};
    } else if (const auto* h = std::get_if<ShearletIndex>(&index)) {
        s.kind = SupportRegion::Kind::Shearlet;
        s.cone = h->cone;
        s.radial = {std::ldexp(1.0, h->j - 1), std::ldexp(1.0, h->j + 1)};
        const double q = 1.0 / half_power(h->j);
        s.slope = intersect(Interval{q * (-1.0 - h->k), q * (1.0 - h->k)},
                            Interval{-cone_slope_limit(), cone_slope_limit()});
        if (s.slope.empty()) s.radial = {1.0, 0.0};
    } else {
        const auto& w = std::get<WaveletIndex>(index);
        s.kind = SupportRegion::Kind::Wavelet;
        const Interval low{0.0, std::ldexp(1.0, w.j)};
        const Interval band{std::ldexp(1.0, w.j - 1), std::ldexp(1.0, w.j + 1)};
        s.abs_box = w.h == 1 ? Box{low, band} : (w.h == 2 ? Box{band, low} : Box{band, band});
        s.radial = {std::ldexp(1.0, w.j - 1), std::ldexp(1.0, w.j + 1)};
    }
    return s;
}

bool supports_intersect(const SupportRegion& a, const SupportRegion& b) {
    using K = SupportRegion::Kind;
    if (a.kind != K::Wavelet && b.kind != K::Wavelet) {
        if (a.kind == K::Shearlet && a.slope.empty()) return false;
        if (b.kind == K::Shearlet && b.slope.empty()) return false;
        return sectors_intersect(sector_of(a), sector_of(b));
    }
    const auto la = a.lobe_boxes(), lb = b.lobe_boxes();
    for (const Box& p : la)
        for (const Box& q : lb)
            if (!intersect(p, q).empty()) return true;
    return false;
}

}  // namespace aniso
