// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 aniso contributors

#include "aniso/index_sets.hpp"

#include <algorithm>
#include <climits>
#include <cmath>

#include "aniso/atoms.hpp"

namespace aniso {

IntSet::IntSet(std::vector<IntRange> ranges) {
    ranges.erase(std::remove_if(ranges.begin(), ranges.end(), [](const IntRange& r) { return r.count() == 0; }),
                 ranges.end());
    std::sort(ranges.begin(), ranges.end(), [](const IntRange& a, const IntRange& b) { return a.lo < b.lo; });
    for (const IntRange& r : ranges) {
        if (!ranges_.empty() && r.lo <= ranges_.back().hi + 1)
            ranges_.back().hi = std::max(ranges_.back().hi, r.hi);
        else
            ranges_.push_back(r);
    }
}

int IntSet::count() const {
    int n = 0;
    for (const IntRange& r : ranges_) n += r.count();
    return n;
}

bool IntSet::contains(int v) const {
    return std::any_of(ranges_.begin(), ranges_.end(), [v](const IntRange& r) { return r.contains(v); });
}

std::vector<int> IntSet::values() const {
    std::vector<int> out;
    for (const IntRange& r : ranges_)
        for (int v = r.lo; v <= r.hi; ++v) out.push_back(v);
    return out;
}

IntSet IntSet::clipped(int lo, int hi) const {
    std::vector<IntRange> out;
    for (const IntRange& r : ranges_) out.push_back({std::max(r.lo, lo), std::min(r.hi, hi)});
    return IntSet(out);
}

namespace {

constexpr int kUnbounded = INT_MAX / 4;

int floor_int(double v) { return v <= -kUnbounded ? -kUnbounded : static_cast<int>(std::floor(v)); }
int ceil_int(double v) { return v >= kUnbounded ? kUnbounded : static_cast<int>(std::ceil(v)); }

// Shear range for wedge angles [lo, hi] expressed in the cone's own coordinates.
IntSet shears_for_angles(int j, double lo, double hi) {
    const double s = half_power(j);
    const double shift = std::floor((lo + kPi / 2) / kPi) * kPi;
    lo -= shift;
    hi -= shift;
    if (hi < kPi / 2)
        return IntSet({{floor_int(-s * std::tan(hi) - 1.0), ceil_int(-s * std::tan(lo) + 1.0)}});
    // Wedge crosses the vertical: slopes [tan lo, inf) and (-inf, tan(hi - pi)].
    return IntSet({{-kUnbounded, ceil_int(-s * std::tan(lo) + 1.0)},
                   {floor_int(-s * std::tan(hi - kPi) - 1.0), kUnbounded}});
}

IntSet modulo(int lo, int hi, int period) {
    if (hi - lo + 1 >= period) return IntSet({{0, period - 1}});
    const int a = ((lo % period) + period) % period;
    const int b = a + (hi - lo);
    if (b < period) return IntSet({{a, b}});
    return IntSet({{a, period - 1}, {0, b - period}});
}

}  // namespace

IntSet shear_candidates(int j, int jt, int ell, int cone) {
    const double th = curvelet_angle(jt, ell), d = curvelet_half_width(jt);
    if (cone == 1) return shears_for_angles(j, th - d, th + d);
    return shears_for_angles(j, kPi / 2 - th - d, kPi / 2 - th + d);
}

IntSet k_set(int j, int jt, int ell, int cone) {
    const int kmax = nominal_shear_limit(j);
    return shear_candidates(j, jt, ell, cone).clipped(-kmax, kmax);
}

IntSet l_set(int j, int jt, int k, int cone) {
    const double q = 1.0 / half_power(j);
    double a = std::atan(q * (-1.0 - k)), b = std::atan(q * (1.0 - k));
    if (cone == 2) {
        const double na = kPi / 2 - b, nb = kPi / 2 - a;
        a = na;
        b = nb;
    }
    const double d = curvelet_half_width(jt);
    return modulo(floor_int(a / d - 1.0), ceil_int(b / d + 1.0), curvelet_orientation_count(jt));
}

IntSet k_set_literal(int j, int jt, int ell) {
    const double s = half_power(j), d = 1.0 / half_power(jt);
    const double hi = d * (1.0 + 2.0 * kPi * ell), lo = d * (-1.0 + 2.0 * kPi * ell);
    if (hi >= kPi / 2 || lo <= -kPi / 2) return IntSet();
    const int kmax = nominal_shear_limit(j);
    return IntSet({{floor_int(-s * std::tan(hi) - 1.0), ceil_int(-s * std::tan(lo) + 1.0)}}).clipped(-kmax, kmax);
}

IntSet l_set_literal(int j, int jt, int k) {
    const double q = 1.0 / half_power(j), st = half_power(jt);
    const double lo = std::floor(st * std::atan(q * (-1.0 - k)) - 1.0);
    const double hi = std::ceil(st * std::atan(q * (1.0 - k)) + 1.0);
    const int count = nominal_shear_limit(jt);
    return IntSet({{ceil_int(lo / (2.0 * kPi)), floor_int(hi / (2.0 * kPi))}}).clipped(0, count - 1);
}

int corner_orientation_literal(int j) {
    return static_cast<int>(std::lround((half_power(j) * kPi / 4.0 - 1.0) / (2.0 * kPi)));
}

int corner_orientation(int j) { return curvelet_orientation_count(j) / 4 - 1; }

Vec2 b_vector(int j, int k, Vec2 m, int jt, int ell, Vec2 mt) {
    const Mat2 a_j = parabolic_scaling(std::ldexp(1.0, j));
    const Mat2 a_inv = parabolic_scaling(std::ldexp(1.0, -j));
    const Mat2 at_inv = parabolic_scaling(std::ldexp(1.0, -jt));
    const Vec2 first = shear(k).transpose() * (a_inv * m);
    const Vec2 second = rotation(curvelet_angle(jt, ell)) * (at_inv * mt);
    return a_j * (first - second);
}

}  // namespace aniso
