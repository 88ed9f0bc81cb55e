#ifndef KEPLERTOP_ORACLE_HPP
#define KEPLERTOP_ORACLE_HPP

#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include "keplertop/errors.hpp"
#include "keplertop/grid.hpp"
#include "keplertop/model.hpp"
#include "keplertop/operators.hpp"
#include "keplertop/tridiagonal.hpp"

namespace keplertop {

/// One eigenpair of the discrete radial problem, ascending by index.
struct NumericLevel {
    int index = 0;
    double energy = 0.0;
    WavefunctionSamples eigenvector;
    double residual = 0.0;
};

struct ConvergenceReport {
    std::vector<int> grid_sizes;
    std::vector<double> estimates;
    double estimated_order = 0.0;
    double extrapolated = 0.0;
};

/// Trapezoidal approximation of the weighted product integral
/// int f g rho dtheta over the grid span. The excluded endpoints carry zero
/// boundary values, so every interior node enters with full weight h.
inline double quadrature_weighted(const std::vector<double>& f, const std::vector<double>& g,
                                  const RadialGrid& grid, const std::vector<double>& rho)
{
    if (f.size() != g.size() || f.size() != rho.size() || f.size() != grid.size())
        throw LengthMismatch("quadrature_weighted: sample lengths differ");
    double s = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) s += f[i] * g[i] * rho[i];
    return s * grid.step;
}

namespace detail {

/// rho-weighted 2-norm of the radial-equation residual over the interior
/// stencil of the first `count` grid nodes. f holds samples on those nodes.
inline double ode_residual_prefix(const ManifoldKind& kind, const ModelParams& p, int n, int l,
                                  double energy, const std::vector<double>& f,
                                  const RadialGrid& grid, std::size_t count)
{
    if (count > grid.size() || f.size() != count)
        throw LengthMismatch("ode_residual: sample count does not match grid prefix");
    if (count < 5) throw GridTooSmall("residual needs at least 5 nodes");
    const double h = grid.step;
    const double lambda_scale = p.lambda_scale();
    double s = 0.0;
    for (std::size_t j = 1; j + 1 < count; ++j) {
        const double theta = grid.nodes[j];
        const double w = kind.is_sphere() ? 1.0 / std::tan(theta) : 1.0 / std::tanh(theta);
        double r = (f[j + 1] - 2.0 * f[j] + f[j - 1]) / (h * h) +
                   w * (f[j + 1] - f[j - 1]) / (2.0 * h) -
                   centrifugal_coefficient(kind, p, n, l, theta) * f[j] +
                   lambda_scale * (energy - potential_value(kind, p, theta)) * f[j];
        s += measure_weight(kind, theta) * r * r;
    }
    return std::sqrt(s * h);
}

} // namespace detail

/// rho-weighted 2-norm of f'' + w f' - W f + (2mR^2/hbar^2)(E - V) f over the
/// nodes with a full interior stencil; zero for an exact discrete eigenpair of
/// the term-form operator, O(h^2) for eigenpairs of the flux form.
inline double ode_residual(const ManifoldKind& kind, const ModelParams& p, int n, int l,
                           double energy, const std::vector<double>& f, const RadialGrid& grid)
{
    detail::require_same_manifold(kind, grid, "ode_residual");
    return detail::ode_residual_prefix(kind, p, n, l, energy, f, grid, grid.size());
}

/// The count lowest levels of the discrete radial eigenproblem: builds the
/// Sturm-Liouville form, solves it by bisection, recovers eigenvectors by
/// inverse iteration, maps them back through the similarity transform
/// (f_i = g_i / sqrt(rho_i)), normalizes against the weighted quadrature and
/// attaches the term-form ODE residual.
inline std::vector<NumericLevel> numeric_spectrum(const ManifoldKind& kind,
                                                  const ModelParams& p, int n, int l, int count,
                                                  int subdivisions,
                                                  std::optional<double> theta_max = std::nullopt)
{
    validate_params(p);
    if (count < 0) throw CountOutOfRange("count must be >= 0");
    if (count == 0) return {};
    const RadialGrid grid = build_grid(kind, subdivisions, theta_max);
    const SturmLiouvilleForm form = sturm_liouville_form(kind, p, n, l, grid);
    const std::vector<double> values = eigen_tridiagonal(form.diag, form.offdiag, count);

    std::vector<NumericLevel> levels;
    levels.reserve(values.size());
    for (std::size_t j = 0; j < values.size(); ++j) {
        std::vector<double> f = eigenvector_inverse_iteration(form.diag, form.offdiag, values[j]);
        for (std::size_t i = 0; i < f.size(); ++i) f[i] /= std::sqrt(form.weight[i]);
        const double nrm = std::sqrt(quadrature_weighted(f, f, grid, form.weight));
        for (double& x : f) x /= nrm;
        NumericLevel lvl;
        lvl.index = static_cast<int>(j);
        lvl.energy = form.scale * values[j];
        lvl.residual = ode_residual(kind, p, n, l, lvl.energy, f, grid);
        lvl.eigenvector = WavefunctionSamples{std::move(f), Normalization::UnitNorm};
        levels.push_back(std::move(lvl));
    }
    return levels;
}

/// Eigenvalue refinement study at N0, 2 N0, 4 N0 for one level: reports the
/// three energy estimates, the Richardson order log2(|E_h - E_{h/2}| /
/// |E_{h/2} - E_{h/4}|) and the h -> 0 extrapolation assuming second order.
inline ConvergenceReport convergence_study(const ManifoldKind& kind, const ModelParams& p,
                                           int n, int l, int level_index, int base_subdivisions,
                                           std::optional<double> theta_max = std::nullopt)
{
    validate_params(p);
    if (level_index < 0) throw CountOutOfRange("level index must be >= 0");
    if (base_subdivisions < 250) throw BadGridSpec("convergence study needs N0 >= 250");
    ConvergenceReport rep;
    for (int mult : {1, 2, 4}) {
        const int n_sub = base_subdivisions * mult;
        const RadialGrid grid = build_grid(kind, n_sub, theta_max);
        const SturmLiouvilleForm form = sturm_liouville_form(kind, p, n, l, grid);
        const std::vector<double> values =
            eigen_tridiagonal(form.diag, form.offdiag, level_index + 1);
        rep.grid_sizes.push_back(n_sub);
        rep.estimates.push_back(form.scale * values[static_cast<std::size_t>(level_index)]);
    }
    const double d1 = std::abs(rep.estimates[0] - rep.estimates[1]);
    const double d2 = std::abs(rep.estimates[1] - rep.estimates[2]);
    rep.estimated_order =
        d2 > 0.0 ? std::log2(d1 / d2) : std::numeric_limits<double>::quiet_NaN();
    rep.extrapolated = rep.estimates[2] + (rep.estimates[2] - rep.estimates[1]) / 3.0;
    return rep;
}

} // namespace keplertop

#endif
