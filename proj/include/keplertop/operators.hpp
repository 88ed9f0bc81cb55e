#ifndef KEPLERTOP_OPERATORS_HPP
#define KEPLERTOP_OPERATORS_HPP

#include <cmath>
#include <vector>

#include "keplertop/errors.hpp"
#include "keplertop/grid.hpp"
#include "keplertop/model.hpp"

namespace keplertop {

/// A stationary mode f(theta) e^{i n phi} e^{i l psi} reduced to its radial
/// samples on a grid.
struct SeparableMode {
    std::vector<double> radial;
    int n = 0;
    int l = 0;
};

/// Symmetric tridiagonal discretization of the radial operator together with
/// the measure weight that defines the inner product. Eigenvalues lambda of
/// the matrix map to energies E = scale * lambda.
struct SturmLiouvilleForm {
    std::vector<double> diag;
    std::vector<double> offdiag; ///< one entry shorter than diag, all <= 0
    std::vector<double> weight;  ///< rho at the nodes, strictly positive
    double scale = 0.0;          ///< hbar^2 / (2 m R^2)
};

namespace detail {

inline void require_stencil(const RadialGrid& grid)
{
    if (grid.size() < 5) throw GridTooSmall("central differences need at least 5 nodes");
}

inline void require_same_manifold(const ManifoldKind& kind, const RadialGrid& grid,
                                  const char* where)
{
    if (kind.manifold != grid.kind.manifold)
        throw BadGridSpec(std::string(where) + ": grid was built for the other manifold");
}

inline void require_length(std::size_t got, std::size_t want, const char* where)
{
    if (got != want)
        throw LengthMismatch(std::string(where) + ": expected " + std::to_string(want) +
                             " samples, got " + std::to_string(got));
}

/// Integral of (2mR^2/hbar^2) V(theta) rho(theta) over [a, b]. The integrand
/// is -2 at cos(theta) (sphere) or -2 at cosh(theta) (pseudosphere) with
/// at = reduced_coupling, so the antiderivative is elementary.
inline double potential_flux_integral(const ManifoldKind& kind, const ModelParams& p, double a,
                                      double b)
{
    const double at = p.reduced_coupling();
    return kind.is_sphere() ? -2.0 * at * (std::sin(b) - std::sin(a))
                            : -2.0 * at * (std::sinh(b) - std::sinh(a));
}

} // namespace detail

/// Applies the full Laplace-Beltrami operator (times R^2) to a separable mode
/// and strips the angular phase. The angular derivatives are carried out
/// analytically (each second derivative contributes -n^2, -l^2, the mixed one
/// -n*l, so the result is real by construction); the radial part is evaluated
/// in the divergence form (1/rho) d/dtheta (rho d/dtheta) that defines the
/// operator, differenced with half-node weights. The inertia-weighted angular
/// coefficient multiplies n^2, which is what makes the separable reduction
/// agree with radial_operator_apply.
///
/// Returns one value per node with a full interior stencil, i.e. grid nodes
/// 2 .. size-1; the two outermost nodes are skipped.
inline std::vector<double> apply_full_laplacian_mode(const ManifoldKind& kind,
                                                     const ModelParams& p,
                                                     const std::vector<double>& f, int n, int l,
                                                     const RadialGrid& grid)
{
    detail::require_same_manifold(kind, grid, "apply_full_laplacian_mode");
    detail::require_stencil(grid);
    detail::require_length(f.size(), grid.size(), "apply_full_laplacian_mode");
    const double h = grid.step;
    const double n2 = static_cast<double>(n) * n;
    const double l2 = static_cast<double>(l) * l;
    const double nl = static_cast<double>(n) * l;
    const double mir2 = p.inertia_ratio();
    const double sgn = kind.sign_factor();
    std::vector<double> out(grid.size() - 2);
    for (std::size_t j = 1; j + 1 < grid.size(); ++j) {
        const double theta = grid.nodes[j];
        const double rho_p = measure_weight(kind, theta + 0.5 * h);
        const double rho_m = measure_weight(kind, theta - 0.5 * h);
        const double rho_0 = measure_weight(kind, theta);
        const double lap =
            (rho_p * (f[j + 1] - f[j]) - rho_m * (f[j] - f[j - 1])) / (h * h * rho_0);
        double azimuthal;
        if (kind.is_sphere()) {
            const double s = std::sin(theta);
            const double c = std::cos(theta);
            azimuthal = 2.0 * nl * c / (s * s) - n2 * (mir2 * s * s + c * c) / (s * s) -
                        l2 / (s * s);
        } else {
            const double s = std::sinh(theta);
            const double c = std::cosh(theta);
            azimuthal = 2.0 * nl * c / (s * s) - n2 * (sgn * mir2 * s * s + c * c) / (s * s) -
                        l2 / (s * s);
        }
        out[j - 1] = lap + azimuthal * f[j];
    }
    return out;
}

inline std::vector<double> apply_full_laplacian_mode(const ManifoldKind& kind,
                                                     const ModelParams& p,
                                                     const SeparableMode& mode,
                                                     const RadialGrid& grid)
{
    return apply_full_laplacian_mode(kind, p, mode.radial, mode.n, mode.l, grid);
}

/// The one-dimensional radial operator f'' + cot(theta) f' - W(theta) f
/// (coth on the pseudosphere), term by term with second-order central
/// stencils. Same output convention as apply_full_laplacian_mode: one value
/// per full-stencil node.
inline std::vector<double> radial_operator_apply(const ManifoldKind& kind,
                                                 const ModelParams& p, int n, int l,
                                                 const std::vector<double>& f,
                                                 const RadialGrid& grid)
{
    detail::require_same_manifold(kind, grid, "radial_operator_apply");
    detail::require_stencil(grid);
    detail::require_length(f.size(), grid.size(), "radial_operator_apply");
    const double h = grid.step;
    std::vector<double> out(grid.size() - 2);
    for (std::size_t j = 1; j + 1 < grid.size(); ++j) {
        const double theta = grid.nodes[j];
        const double w =
            kind.is_sphere() ? 1.0 / std::tan(theta) : 1.0 / std::tanh(theta);
        const double second = (f[j + 1] - 2.0 * f[j] + f[j - 1]) / (h * h);
        const double first = (f[j + 1] - f[j - 1]) / (2.0 * h);
        out[j - 1] =
            second + w * first - centrifugal_coefficient(kind, p, n, l, theta) * f[j];
    }
    return out;
}

/// Self-adjoint discretization of
///   M f = -f'' - w f' + W f + (2mR^2/hbar^2) V f,   w = cot or coth,
/// on the grid's interior nodes, as a symmetric tridiagonal matrix.
///
/// Construction: flux form with half-node weights rho(theta_i +- h/2),
/// then a similarity transform by diag(sqrt(rho_i)). The faces touching the
/// singular endpoints (theta = 0, and theta = pi on the sphere) carry zero
/// flux; the flux the exact solution pushes through those faces is dominated
/// by the potential term and is restored as a diagonal correction equal to
/// the integral of (2mR^2/hbar^2) V rho over the outermost half cells. Without
/// that correction the lowest eigenvalues of cusped states converge only at
/// first order. At the pseudosphere truncation point theta_max a homogeneous
/// Dirichlet ghost is imposed with the ordinary half-node weight.
///
/// include_potential = false drops both V and the boundary correction,
/// leaving the bare weighted Laplacian plus W; the tests use it.
inline SturmLiouvilleForm sturm_liouville_form(const ManifoldKind& kind, const ModelParams& p,
                                               int n, int l, const RadialGrid& grid,
                                               bool include_potential = true)
{
    validate_params(p);
    detail::require_same_manifold(kind, grid, "sturm_liouville_form");
    detail::require_stencil(grid);
    const std::size_t m = grid.size();
    const double h = grid.step;
    const double lambda_scale = p.lambda_scale();

    SturmLiouvilleForm form;
    form.scale = p.energy_scale();
    form.diag.resize(m);
    form.offdiag.resize(m - 1);
    form.weight.resize(m);

    std::vector<double> face(m - 1); // weight of the face between nodes i and i+1
    for (std::size_t i = 0; i + 1 < m; ++i)
        face[i] = measure_weight(kind, grid.nodes[i] + 0.5 * h);
    const double face_left = 0.0;
    const double face_right =
        kind.is_sphere() ? 0.0 : measure_weight(kind, grid.span() - 0.5 * h);

    for (std::size_t i = 0; i < m; ++i) {
        const double theta = grid.nodes[i];
        const double rho = measure_weight(kind, theta);
        form.weight[i] = rho;
        const double a_minus = (i == 0) ? face_left : face[i - 1];
        const double a_plus = (i + 1 == m) ? face_right : face[i];
        double d = (a_minus + a_plus) / (h * h * rho) +
                   centrifugal_coefficient(kind, p, n, l, theta);
        if (include_potential) d += lambda_scale * potential_value(kind, p, theta);
        form.diag[i] = d;
    }
    if (include_potential) {
        form.diag[0] +=
            detail::potential_flux_integral(kind, p, 0.0, 0.5 * h) / (h * form.weight[0]);
        if (kind.is_sphere())
            form.diag[m - 1] +=
                detail::potential_flux_integral(kind, p, kPi - 0.5 * h, kPi) /
                (h * form.weight[m - 1]);
    }
    for (std::size_t i = 0; i + 1 < m; ++i)
        form.offdiag[i] = -face[i] / (h * h * std::sqrt(form.weight[i] * form.weight[i + 1]));
    return form;
}

} // namespace keplertop

#endif
