#ifndef KEPLERTOP_HYPERGEOMETRIC_HPP
#define KEPLERTOP_HYPERGEOMETRIC_HPP

#include <cmath>

#include "keplertop/errors.hpp"

namespace keplertop {

/// Terminating Gauss hypergeometric polynomial F(-k, b; c; x).
///
/// Sums exactly k+1 terms of the series sum_j (-k)_j (b)_j / ((c)_j j!) x^j
/// by the forward recurrence
///   term_{j+1} = term_j * (-k + j)(b + j) x / ((c + j)(j + 1)),
/// accumulating left to right. Termination is exact: the factor (-k + j)
/// vanishes for j = k, so no truncation decision is ever made.
///
/// Throws PochhammerPole if c is zero or a negative integer close enough to
/// zero that (c)_j vanishes for some j <= k.
inline double gauss_2f1_polynomial(int k, double b, double c, double x)
{
    if (k < 0) throw DomainError("gauss_2f1_polynomial: k must be >= 0");
    if (c <= 0.0 && c == std::floor(c)) {
        // (c)_j = c (c+1) ... (c+j-1) first vanishes at j = -c + 1.
        const int pole_term = static_cast<int>(-c) + 1;
        if (pole_term <= k) throw PochhammerPole(c, pole_term);
    }
    double term = 1.0;
    double sum = 1.0;
    for (int j = 0; j < k; ++j) {
        term *= (static_cast<double>(-k + j) * (b + j) * x) / ((c + j) * (j + 1));
        sum += term;
    }
    return sum;
}

} // namespace keplertop

#endif
