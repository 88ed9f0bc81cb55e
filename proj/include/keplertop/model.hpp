#ifndef KEPLERTOP_MODEL_HPP
#define KEPLERTOP_MODEL_HPP

#include <cmath>
#include <cstdlib>
#include <string>
#include <vector>

#include "keplertop/errors.hpp"

namespace keplertop {

inline constexpr const char* kVersion = "keplertop 0.1.0";

inline constexpr double kPi = 3.14159265358979323846;

enum class Manifold { Sphere, Pseudosphere };

/// Sign of the (m/I)R^2 term in the pseudosphere radial operator. The model
/// leaves the selection open, so it is plain configuration here.
enum class PseudoSign { Plus, Minus };

/// Manifold selector. pseudo_sign is ignored on the sphere.
struct ManifoldKind {
    Manifold manifold = Manifold::Sphere;
    PseudoSign pseudo_sign = PseudoSign::Plus;

    static ManifoldKind sphere() { return {Manifold::Sphere, PseudoSign::Plus}; }
    static ManifoldKind pseudosphere(PseudoSign s = PseudoSign::Plus)
    {
        return {Manifold::Pseudosphere, s};
    }

    bool is_sphere() const { return manifold == Manifold::Sphere; }

    /// +1 or -1 on the pseudosphere, +1 on the sphere (where it never enters).
    double sign_factor() const
    {
        return (manifold == Manifold::Pseudosphere && pseudo_sign == PseudoSign::Minus) ? -1.0
                                                                                         : 1.0;
    }
};

/// Physical constants of the model. Defaults are the natural-units
/// reference configuration hbar = mass = radius = inertia = coupling = 1.
struct ModelParams {
    double mass = 1.0;     ///< mass of the body
    double inertia = 1.0;  ///< moment of inertia about its center
    double radius = 1.0;   ///< curvature radius of the manifold
    double coupling = 1.0; ///< strength of the attractive potential (energy * length)
    double hbar = 1.0;

    /// (m/I) R^2, the coefficient coupling translation and rotation.
    double inertia_ratio() const { return mass / inertia * radius * radius; }

    /// hbar^2 / (2 m R^2): converts dimensionless radial eigenvalues to energies.
    double energy_scale() const { return hbar * hbar / (2.0 * mass * radius * radius); }

    /// 2 m R^2 / hbar^2, the inverse of energy_scale().
    double lambda_scale() const { return 1.0 / energy_scale(); }

    /// Dimensionless coupling m R alpha / hbar^2. This is the combination the
    /// radial equation produces when 2 m R^2 / hbar^2 multiplies the potential
    /// -(alpha/R) cot(theta); in natural units it equals the bare coupling.
    double reduced_coupling() const { return mass * radius * coupling / (hbar * hbar); }
};

/// State labels (n, l, k). n and l are the two angular integers, k >= 0 counts
/// the polynomial degree of the radial solution.
struct QuantumNumbers {
    int n = 0;
    int l = 0;
    int k = 0;
};

/// kappa = |n+l|, nu = |n-l|.
struct KappaNu {
    int kappa = 0;
    int nu = 0;
};

inline KappaNu kappa_nu(int n, int l) { return {std::abs(n + l), std::abs(n - l)}; }

inline std::vector<std::string> invalid_param_fields(const ModelParams& p)
{
    std::vector<std::string> bad;
    if (!(p.mass > 0.0)) bad.push_back("mass");
    if (!(p.inertia > 0.0)) bad.push_back("inertia");
    if (!(p.radius > 0.0)) bad.push_back("radius");
    if (!(p.coupling > 0.0)) bad.push_back("coupling");
    if (!(p.hbar > 0.0)) bad.push_back("hbar");
    return bad;
}

/// Returns p unchanged if every field is strictly positive, otherwise throws
/// ValidationError naming each violated field.
inline ModelParams validate_params(const ModelParams& p)
{
    auto bad = invalid_param_fields(p);
    if (!bad.empty()) throw ValidationError(std::move(bad));
    return p;
}

namespace detail {

inline void check_theta_domain(const ManifoldKind& kind, double theta)
{
    if (kind.is_sphere()) {
        if (!(theta > 0.0) || !(theta < kPi))
            throw DomainError("theta must lie in (0, pi) on the sphere");
    } else {
        if (!(theta > 0.0)) throw DomainError("theta must be positive on the pseudosphere");
    }
}

} // namespace detail

/// Kepler-Coulomb potential V(theta): -(alpha/R) cot(theta) on the sphere,
/// -(alpha/R) coth(theta) on the pseudosphere. theta is the scaled radial
/// coordinate r/R; the endpoints are singular and excluded.
inline double potential_value(const ManifoldKind& kind, const ModelParams& p, double theta)
{
    detail::check_theta_domain(kind, theta);
    const double strength = p.coupling / p.radius;
    return kind.is_sphere() ? -strength / std::tan(theta) : -strength / std::tanh(theta);
}

/// Centrifugal coefficient W(theta) of the radial eigenequation:
///   sphere:       [((m/I)R^2 sin^2 + cos^2) n^2 + l^2 - 2 n l cos] / sin^2
///   pseudosphere: [(+-(m/I)R^2 sinh^2 + cosh^2) n^2 + l^2 - 2 n l cosh] / sinh^2
/// Every term is even under (n, l) -> (-n, -l); the implementation uses n*n,
/// l*l and n*l so that symmetry holds bit for bit.
inline double centrifugal_coefficient(const ManifoldKind& kind, const ModelParams& p, int n,
                                      int l, double theta)
{
    detail::check_theta_domain(kind, theta);
    const double n2 = static_cast<double>(n) * n;
    const double l2 = static_cast<double>(l) * l;
    const double nl = static_cast<double>(n) * l;
    const double mir2 = p.inertia_ratio();
    if (kind.is_sphere()) {
        const double s = std::sin(theta);
        const double c = std::cos(theta);
        return ((mir2 * s * s + c * c) * n2 + l2 - 2.0 * nl * c) / (s * s);
    }
    const double s = std::sinh(theta);
    const double c = std::cosh(theta);
    return ((kind.sign_factor() * mir2 * s * s + c * c) * n2 + l2 - 2.0 * nl * c) / (s * s);
}

} // namespace keplertop

#endif
