// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 aniso contributors

#pragma once

#include <array>
#include <vector>

#include "aniso/atoms.hpp"

namespace aniso {

struct Interval {
    double lo = 0.0;
    double hi = -1.0;

    bool empty() const { return lo > hi; }
    bool contains(double v) const { return v >= lo && v <= hi; }
    double length() const { return empty() ? 0.0 : hi - lo; }
};

Interval intersect(Interval a, Interval b);

struct Box {
    Interval x;
    Interval y;

    bool empty() const { return x.empty() || y.empty(); }
};

Box intersect(const Box& a, const Box& b);

// Closed frequency support of one atom.
//   Curvelet: r in radial, angle in [angle.lo, angle.hi] modulo pi.
//   Shearlet: |xi_axis| in radial, xi_transverse / xi_axis in slope (axis = xi_1 for cone 1).
//   Wavelet:  |xi_1| in box.x, |xi_2| in box.y.
struct SupportRegion {
    enum class Kind { Curvelet, Shearlet, Wavelet };

    Kind kind = Kind::Curvelet;
    int cone = 1;
    Interval radial;
    Interval angle;
    Interval slope;
    Box abs_box;

    bool contains(Vec2 xi) const;

    // Bounding boxes of the two mirrored lobes; their interiors are disjoint.
    std::array<Box, 2> lobe_boxes() const;
};

SupportRegion support_box(const AtomIndex& index);

// Exact for curvelet/shearlet pairs; conservative (bounding boxes) when a wavelet is involved.
bool supports_intersect(const SupportRegion& a, const SupportRegion& b);

}  // namespace aniso
