#pragma once

#include <cmath>
#include <stdexcept>

namespace specsense {

/// Gaussian tail probability Q(x) = P(Z > x) = erfc(x / sqrt(2)) / 2.
inline double qfunc(double x) {
    return 0.5 * std::erfc(x * 0.70710678118654752440);
}

/// Inverse of qfunc by bisection (Q is strictly decreasing). Converges to an
/// interval below 1e-13, which keeps the Q round-trip well under 1e-10.
inline double qfunc_inv(double p) {
    if (!(p > 0.0 && p < 1.0)) {
        throw std::invalid_argument("qfunc_inv: probability must be in (0,1)");
    }
    double lo = -40.0, hi = 40.0;
    while (hi - lo > 1e-13) {
        const double mid = 0.5 * (lo + hi);
        if (qfunc(mid) > p) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace specsense
