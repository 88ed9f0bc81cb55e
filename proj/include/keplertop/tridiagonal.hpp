#ifndef KEPLERTOP_TRIDIAGONAL_HPP
#define KEPLERTOP_TRIDIAGONAL_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "keplertop/errors.hpp"

namespace keplertop {

namespace detail {

inline double tridiagonal_inf_norm(const std::vector<double>& diag,
                                   const std::vector<double>& offdiag)
{
    double nrm = 0.0;
    for (std::size_t i = 0; i < diag.size(); ++i) {
        double row = std::abs(diag[i]);
        if (i > 0) row += std::abs(offdiag[i - 1]);
        if (i < offdiag.size()) row += std::abs(offdiag[i]);
        nrm = std::max(nrm, row);
    }
    return nrm;
}

inline double sturm_pivmin(const std::vector<double>& offdiag)
{
    double max_b2 = 1.0;
    for (double b : offdiag) max_b2 = std::max(max_b2, b * b);
    return std::numeric_limits<double>::min() * max_b2;
}

} // namespace detail

/// Number of eigenvalues of the symmetric tridiagonal (diag, offdiag) that lie
/// strictly below sigma, counted as the negative pivots of the LDL^T
/// factorization of T - sigma I (the Sturm sequence). Pivots too close to
/// zero are replaced by -pivmin, which counts a boundary hit as "below".
inline int sturm_count(const std::vector<double>& diag, const std::vector<double>& offdiag,
                       double sigma)
{
    const double pivmin = detail::sturm_pivmin(offdiag);
    int count = 0;
    double d = 1.0;
    for (std::size_t i = 0; i < diag.size(); ++i) {
        const double b2 = (i > 0) ? offdiag[i - 1] * offdiag[i - 1] : 0.0;
        d = diag[i] - sigma - b2 / d;
        if (std::abs(d) <= pivmin) d = -pivmin;
        if (d < 0.0) ++count;
    }
    return count;
}

struct TridiagonalEigenvalues {
    std::vector<double> values;
    /// Set when two adjacent returned values could not be separated at the
    /// bisection tolerance and are reported equal.
    bool cluster_warning = false;
};

/// The count smallest eigenvalues, ascending, by Sturm-sequence bisection.
/// Each interval is split until its width drops below
/// max(1e-12 * |endpoint|, 1e-14) and the midpoint is reported. Identical
/// inputs give identical outputs.
inline TridiagonalEigenvalues eigen_tridiagonal_full(const std::vector<double>& diag,
                                                     const std::vector<double>& offdiag,
                                                     int count)
{
    const std::size_t m = diag.size();
    if (m == 0) throw CountOutOfRange("empty matrix");
    if (offdiag.size() + 1 != m)
        throw LengthMismatch("offdiag must be one entry shorter than diag");
    if (count < 1 || static_cast<std::size_t>(count) > m)
        throw CountOutOfRange("count must lie in [1, matrix size]");

    // Gershgorin enclosure of the whole spectrum.
    double lo = std::numeric_limits<double>::max();
    double hi = std::numeric_limits<double>::lowest();
    for (std::size_t i = 0; i < m; ++i) {
        double r = 0.0;
        if (i > 0) r += std::abs(offdiag[i - 1]);
        if (i < offdiag.size()) r += std::abs(offdiag[i]);
        lo = std::min(lo, diag[i] - r);
        hi = std::max(hi, diag[i] + r);
    }
    const double pad = 1e-10 * std::max({1.0, std::abs(lo), std::abs(hi)});
    lo -= pad;
    hi += pad;

    const auto tol_at = [](double a, double b) {
        return std::max(1e-12 * std::max(std::abs(a), std::abs(b)), 1e-14);
    };

    TridiagonalEigenvalues out;
    out.values.resize(static_cast<std::size_t>(count));
    for (int j = 0; j < count; ++j) {
        double a = lo;
        double b = hi;
        // invariant: sturm_count(a) <= j < sturm_count(b)
        while (b - a > tol_at(a, b)) {
            const double mid = 0.5 * (a + b);
            if (mid <= a || mid >= b) break; // interval at rounding limit
            if (sturm_count(diag, offdiag, mid) > j)
                b = mid;
            else
                a = mid;
        }
        out.values[static_cast<std::size_t>(j)] = 0.5 * (a + b);
        lo = a; // later eigenvalues cannot lie below this interval
        if (j > 0) {
            const double prev = out.values[static_cast<std::size_t>(j) - 1];
            const double cur = out.values[static_cast<std::size_t>(j)];
            // values the bisection cannot separate are reported equal
            if (cur - prev <= tol_at(prev, cur)) {
                out.values[static_cast<std::size_t>(j)] = prev;
                out.cluster_warning = true;
            }
        }
    }
    return out;
}

inline std::vector<double> eigen_tridiagonal(const std::vector<double>& diag,
                                             const std::vector<double>& offdiag, int count)
{
    return eigen_tridiagonal_full(diag, offdiag, count).values;
}

/// Unit eigenvector for an eigenvalue estimate lambda, by inverse iteration
/// with a partially pivoted tridiagonal LU of T - lambda I. Converged when
/// ||(T - lambda I) v||_2 <= 1e-9 ||T||_inf; throws NoConvergence after 50
/// iterations. The sign is fixed so the first nonzero component is positive.
inline std::vector<double> eigenvector_inverse_iteration(const std::vector<double>& diag,
                                                         const std::vector<double>& offdiag,
                                                         double lambda)
{
    const std::size_t m = diag.size();
    if (m == 0) throw CountOutOfRange("empty matrix");
    if (offdiag.size() + 1 != m)
        throw LengthMismatch("offdiag must be one entry shorter than diag");

    const double tnorm = detail::tridiagonal_inf_norm(diag, offdiag);
    const double perturb = std::numeric_limits<double>::epsilon() * std::max(tnorm, 1.0);

    // LU with partial pivoting of the shifted matrix; fill-in appears on a
    // second superdiagonal.
    std::vector<double> dl(m > 1 ? m - 1 : 0), d(m), du(m > 1 ? m - 1 : 0), du2(m > 2 ? m - 2 : 0);
    std::vector<bool> swapped(m > 1 ? m - 1 : 0, false);
    for (std::size_t i = 0; i < m; ++i) d[i] = diag[i] - lambda;
    for (std::size_t i = 0; i + 1 < m; ++i) {
        dl[i] = offdiag[i];
        du[i] = offdiag[i];
    }
    for (std::size_t i = 0; i + 1 < m; ++i) {
        if (std::abs(d[i]) >= std::abs(dl[i])) {
            if (d[i] == 0.0) d[i] = perturb;
            const double mult = dl[i] / d[i];
            dl[i] = mult; // store the multiplier
            d[i + 1] -= mult * du[i];
            if (i + 2 < m) du2[i] = 0.0;
        } else {
            swapped[i] = true;
            const double mult = d[i] / dl[i];
            d[i] = dl[i];
            dl[i] = mult;
            const double tmp = d[i + 1];
            d[i + 1] = du[i] - mult * tmp;
            du[i] = tmp;
            if (i + 2 < m) {
                du2[i] = du[i + 1];
                du[i + 1] = -mult * du2[i];
            }
        }
    }
    if (d[m - 1] == 0.0) d[m - 1] = perturb;

    const auto solve = [&](std::vector<double>& x) {
        for (std::size_t i = 0; i + 1 < m; ++i) {
            if (swapped[i]) std::swap(x[i], x[i + 1]);
            x[i + 1] -= dl[i] * x[i];
        }
        x[m - 1] /= d[m - 1];
        if (m > 1) x[m - 2] = (x[m - 2] - du[m - 2] * x[m - 1]) / d[m - 2];
        if (m > 2) {
            for (std::size_t i = m - 2; i-- > 0;)
                x[i] = (x[i] - du[i] * x[i + 1] - du2[i] * x[i + 2]) / d[i];
        }
    };

    const auto normalize = [&](std::vector<double>& x) {
        double s = 0.0;
        for (double v : x) s += v * v;
        s = std::sqrt(s);
        for (double& v : x) v /= s;
        return s;
    };

    const auto residual = [&](const std::vector<double>& x) {
        double s = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            double r = (diag[i] - lambda) * x[i];
            if (i > 0) r += offdiag[i - 1] * x[i - 1];
            if (i + 1 < m) r += offdiag[i] * x[i + 1];
            s += r * r;
        }
        return std::sqrt(s);
    };

    std::vector<double> v(m, 1.0 / std::sqrt(static_cast<double>(m)));
    const int max_iter = 50;
    bool converged = false;
    for (int it = 0; it < max_iter; ++it) {
        solve(v);
        normalize(v);
        if (residual(v) <= 1e-9 * std::max(tnorm, 1.0)) {
            converged = true;
            break;
        }
    }
    if (!converged) throw NoConvergence(max_iter);
    for (std::size_t i = 0; i < m; ++i) {
        if (v[i] != 0.0) {
            if (v[i] < 0.0)
                for (double& x : v) x = -x;
            break;
        }
    }
    return v;
}

} // namespace keplertop

#endif
