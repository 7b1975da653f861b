// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 aniso contributors

#pragma once

#include <vector>

namespace aniso {

// Band-limited profiles generating every atom. W is the radial/wavelet window
// (support [1/2, 2] in |x|), V the angular bump (support [-1, 1]) and phi_hat the
// Meyer scaling window paired with W.
class WindowPair {
public:
    explicit WindowPair(int smoothness_order = 3);

    // Polynomial Meyer ramp: 0 for t <= 0, 1 for t >= 1, nu(t) + nu(1-t) = 1.
    double ramp(double t) const;

    double W(double x) const;
    double V(double t) const;
    double phi_hat(double x) const;

    // W below 1 and identically 1 above; completes the partition at the finest grid scale.
    double W_top(double x) const;

    int smoothness_order() const { return order_; }

private:
    int order_;
    std::vector<double> poly_;  // ramp coefficients in powers of t on [0, 1]
};

WindowPair make_meyer_windows(int smoothness_order);

// Shared default instance (order 3: nu(t) = t^4 (35 - 84t + 70t^2 - 20t^3)).
const WindowPair& default_windows();

}  // namespace aniso
