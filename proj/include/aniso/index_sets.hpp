// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 aniso contributors

#pragma once

#include <vector>

#include "aniso/geometry.hpp"

namespace aniso {

struct IntRange {
    int lo = 0;
    int hi = -1;

    int count() const { return hi >= lo ? hi - lo + 1 : 0; }
    bool contains(int v) const { return v >= lo && v <= hi; }
};

// Sorted, disjoint union of integer ranges.
class IntSet {
public:
    IntSet() = default;
    explicit IntSet(std::vector<IntRange> ranges);

    int count() const;
    bool contains(int v) const;
    bool empty() const { return ranges_.empty(); }
    const std::vector<IntRange>& ranges() const { return ranges_; }
    std::vector<int> values() const;

    IntSet clipped(int lo, int hi) const;

private:
    std::vector<IntRange> ranges_;
};

// Shears k whose support slopes can meet the curvelet wedge (jt, ell):
// floor(-2^{j/2} tan(theta + Delta) - 1) <= k <= ceil(-2^{j/2} tan(theta - Delta) + 1),
// with theta, Delta the wedge centre and half-width. Unclipped.
IntSet shear_candidates(int j, int jt, int ell, int cone = 1);

// shear_candidates intersected with the nominal range |k| <= ceil(2^{j/2}).
IntSet k_set(int j, int jt, int ell, int cone = 1);

// Wedges ell meeting the shearlet (j, k, cone):
// floor(atan(2^{-j/2}(-1-k)) / Delta - 1) <= ell <= ceil(atan(2^{-j/2}(1-k)) / Delta + 1),
// reduced modulo the orientation count of scale jt.
IntSet l_set(int j, int jt, int k, int cone = 1);

// Literal integer-ell readings of the two formulas, with theta = 2 pi ell 2^{-jt/2}
// and half-width 2^{-jt/2}; used only for reporting.
IntSet k_set_literal(int j, int jt, int ell);
IntSet l_set_literal(int j, int jt, int k);
int corner_orientation_literal(int j);  // round((2 pi)^{-1} (2^{j/2} pi / 4 - 1))
int corner_orientation(int j);          // wedge whose upper edge sits on the diagonal

// b = A_{2^j}(S_k^T A_{2^{-j}} m - R_theta A_{2^{-jt}} mt), R_theta the rotation by -theta.
Vec2 b_vector(int j, int k, Vec2 m, int jt, int ell, Vec2 mt);

}  // namespace aniso
