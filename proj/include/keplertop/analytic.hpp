#ifndef KEPLERTOP_ANALYTIC_HPP
#define KEPLERTOP_ANALYTIC_HPP

#include <cmath>
#include <vector>

#include "keplertop/errors.hpp"
#include "keplertop/hypergeometric.hpp"
#include "keplertop/model.hpp"

namespace keplertop {

/// One closed-form level: quantum numbers, energy, and the derived
/// kappa/nu pair of the generating (n, l).
struct AnalyticLevel {
    QuantumNumbers qn;
    double energy = 0.0;
    KappaNu kappa_nu;
};

namespace detail {

inline double ipow(double x, int e)
{
    double r = 1.0;
    for (int i = 0; i < e; ++i) r *= x;
    return r;
}

} // namespace detail

/// Closed-form energy level, implemented exactly as the model's printed
/// formulas state it:
///
///   sphere:       E = -s [ (k + kappa*nu) - ((m/I)R^2 + 1) n^2 + 4 n l + 2 at ]
///   pseudosphere: E = -s [ (k + kappa*nu) + (+-(m/I)R^2 + 1) n^2 - 4 n l - 2 at ]
///
/// with s = hbar^2/(2 m R^2), kappa = |n+l|, nu = |n-l| and at the
/// dimensionless coupling (reduced_coupling). The formula is linear in k and
/// uses the product kappa*nu as printed; whether it actually solves the
/// radial eigenproblem is checked against the numeric oracle by the
/// comparison report, never assumed.
inline double closed_form_energy(const ManifoldKind& kind, const ModelParams& p,
                                 const QuantumNumbers& qn)
{
    validate_params(p);
    if (qn.k < 0) throw DomainError("closed_form_energy: k must be >= 0");
    const KappaNu kn = kappa_nu(qn.n, qn.l);
    const double kpart = static_cast<double>(qn.k) + static_cast<double>(kn.kappa) * kn.nu;
    const double n2 = static_cast<double>(qn.n) * qn.n;
    const double nl = static_cast<double>(qn.n) * qn.l;
    const double inner = (kind.sign_factor() * p.inertia_ratio() + 1.0) * n2 - 4.0 * nl -
                         2.0 * p.reduced_coupling();
    const double bracket = kind.is_sphere() ? kpart - inner : kpart + inner;
    return -p.energy_scale() * bracket;
}

/// Unnormalized closed-form radial wavefunction
///   (sin theta)^kappa (cos theta)^nu F(-k, k+kappa+nu; 1+kappa; sin theta)
/// on the sphere (sinh/cosh on the pseudosphere). The hypergeometric argument
/// is sin(theta) itself, so sphere evaluation is restricted to (0, pi/2]
/// where the argument is a bijection; no continuation past pi/2 is attempted.
inline double radial_wavefunction_value(const ManifoldKind& kind, const ModelParams& p,
                                        const QuantumNumbers& qn, double theta)
{
    validate_params(p);
    if (qn.k < 0) throw DomainError("radial_wavefunction_value: k must be >= 0");
    if (kind.is_sphere()) {
        if (!(theta > 0.0) || !(theta <= kPi / 2.0))
            throw DomainError("sphere wavefunction is evaluated on (0, pi/2] only");
    } else {
        if (!(theta > 0.0)) throw DomainError("theta must be positive on the pseudosphere");
    }
    const KappaNu kn = kappa_nu(qn.n, qn.l);
    const double x = kind.is_sphere() ? std::sin(theta) : std::sinh(theta);
    const double y = kind.is_sphere() ? std::cos(theta) : std::cosh(theta);
    const double prefactor = detail::ipow(x, kn.kappa) * detail::ipow(y, kn.nu);
    const double b = static_cast<double>(qn.k) + kn.kappa + kn.nu;
    const double c = 1.0 + kn.kappa;
    return prefactor * gauss_2f1_polynomial(qn.k, b, c, x);
}

/// Closed-form levels for fixed (n, l) and k = 0 .. k_max, ascending in k.
inline std::vector<AnalyticLevel> analytic_spectrum(const ManifoldKind& kind,
                                                    const ModelParams& p, int n, int l,
                                                    int k_max)
{
    validate_params(p);
    if (k_max < 0) throw DomainError("analytic_spectrum: k_max must be >= 0");
    std::vector<AnalyticLevel> levels;
    levels.reserve(static_cast<std::size_t>(k_max) + 1);
    for (int k = 0; k <= k_max; ++k) {
        QuantumNumbers qn{n, l, k};
        levels.push_back({qn, closed_form_energy(kind, p, qn), kappa_nu(n, l)});
    }
    return levels;
}

} // namespace keplertop

#endif
