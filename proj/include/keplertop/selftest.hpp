#ifndef KEPLERTOP_SELFTEST_HPP
#define KEPLERTOP_SELFTEST_HPP

#include <cmath>
#include <cstdint>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "keplertop/analytic.hpp"
#include "keplertop/grid.hpp"
#include "keplertop/hypergeometric.hpp"
#include "keplertop/model.hpp"
#include "keplertop/operators.hpp"
#include "keplertop/oracle.hpp"

namespace keplertop {

/// Deterministic 64-bit generator (splitmix64); integer-only state so the
/// same seed gives the same stream on every platform.
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next()
    {
        state += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; } // [0, 1)
    double symmetric() { return 2.0 * uniform() - 1.0; }                        // [-1, 1)
};

namespace selftest {

/// Term-by-term reference for F(-k, b; c; x): each term's Pochhammer products
/// are rebuilt from scratch, no recurrence shared with the production path.
/// term_scale, when given, receives sum_j |term_j|, the natural magnitude of
/// the alternating series (the value itself can be many orders smaller).
inline double naive_2f1_reference(int k, double b, double c, double x,
                                  double* term_scale = nullptr)
{
    double sum = 0.0;
    double scale = 0.0;
    for (int j = 0; j <= k; ++j) {
        double term = 1.0;
        for (int i = 0; i < j; ++i) term *= static_cast<double>(-k + i);
        for (int i = 0; i < j; ++i) term *= b + i;
        for (int i = 0; i < j; ++i) term /= c + i;
        for (int i = 1; i <= j; ++i) term /= static_cast<double>(i);
        for (int i = 0; i < j; ++i) term *= x;
        sum += term;
        scale += std::abs(term);
    }
    if (term_scale) *term_scale = scale;
    return sum;
}

/// Smooth radial test profile theta^2 (L - theta)^2 * cubic(theta/L). The
/// squared end factors keep the profile and its slope zero at the endpoints,
/// which keeps the finite-difference comparison clean near the coordinate
/// singularities.
inline std::vector<double> random_radial_profile(SplitMix64& rng, const RadialGrid& grid)
{
    const double span = grid.span();
    double c0 = rng.symmetric(), c1 = rng.symmetric(), c2 = rng.symmetric(),
           c3 = rng.symmetric();
    std::vector<double> f(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double t = grid.nodes[i];
        const double u = t / span;
        const double end = t * t * (span - t) * (span - t);
        f[i] = end * (c0 + u * (c1 + u * (c2 + u * c3)));
    }
    return f;
}

/// Largest pointwise gap between the full-Laplacian route and the radial
/// operator over random profiles and |n|, |l| <= nl_max.
inline double transcription_discrepancy(const ManifoldKind& kind, const ModelParams& p,
                                        int subdivisions, int profiles, int nl_max,
                                        std::uint64_t seed)
{
    SplitMix64 rng(seed);
    const RadialGrid grid =
        build_grid(kind, subdivisions,
                   kind.is_sphere() ? std::nullopt : std::optional<double>(20.0));
    double worst = 0.0;
    for (int trial = 0; trial < profiles; ++trial) {
        const std::vector<double> f = random_radial_profile(rng, grid);
        for (int n = -nl_max; n <= nl_max; ++n) {
            for (int l = -nl_max; l <= nl_max; ++l) {
                const auto full = apply_full_laplacian_mode(kind, p, f, n, l, grid);
                const auto radial = radial_operator_apply(kind, p, n, l, f, grid);
                for (std::size_t i = 0; i < full.size(); ++i)
                    worst = std::max(worst, std::abs(full[i] - radial[i]));
            }
        }
    }
    return worst;
}

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

inline CheckResult check_hypergeometric_termination()
{
    SplitMix64 rng(0xfeedULL);
    double worst = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
        const int k = static_cast<int>(rng.next() % 11);
        const double b = 4.0 * rng.symmetric();
        const double c = 0.75 + 6.0 * rng.uniform();
        const double x = rng.symmetric();
        double scale = 0.0;
        const double got = gauss_2f1_polynomial(k, b, c, x);
        const double want = naive_2f1_reference(k, b, c, x, &scale);
        // relative to the term-magnitude sum: the alternating series can
        // cancel by many orders, where value-relative comparison only
        // measures floating-point conditioning
        worst = std::max(worst, std::abs(got - want) / scale);
    }
    std::ostringstream os;
    os << "max gap vs naive summation, relative to term scale: " << worst;
    return {"hypergeometric-termination", worst <= 1e-12, os.str()};
}

inline CheckResult check_reference_energies()
{
    const ModelParams p;
    const bool ok = closed_form_energy(ManifoldKind::sphere(), p, {0, 0, 0}) == -1.0 &&
                    closed_form_energy(ManifoldKind::sphere(), p, {0, 0, 1}) == -1.5 &&
                    closed_form_energy(ManifoldKind::sphere(), p, {1, 1, 0}) == -2.0 &&
                    closed_form_energy(ManifoldKind::pseudosphere(), p, {0, 0, 0}) == 1.0;
    return {"closed-form-reference-energies", ok,
            ok ? "all four natural-unit values exact" : "a reference value drifted"};
}

inline CheckResult check_transcription()
{
    const ModelParams p;
    std::ostringstream os;
    bool ok = true;
    for (const ManifoldKind kind : {ManifoldKind::sphere(), ManifoldKind::pseudosphere()}) {
        const double c200 = transcription_discrepancy(kind, p, 200, 5, 2, 0x5eedULL);
        const double c400 = transcription_discrepancy(kind, p, 400, 5, 2, 0x5eedULL);
        const double ratio = c200 / c400;
        ok = ok && ratio >= 3.0 && ratio <= 5.0;
        os << (kind.is_sphere() ? "sphere" : "pseudosphere") << " ratio " << ratio << "  ";
    }
    return {"operator-transcription", ok, os.str()};
}

inline CheckResult check_convergence_order()
{
    const ModelParams p;
    const auto rep = convergence_study(ManifoldKind::sphere(), p, 0, 0, 0, 250);
    std::ostringstream os;
    os << "sphere ground order " << rep.estimated_order;
    return {"oracle-convergence-order", rep.estimated_order > 1.7 && rep.estimated_order < 2.3,
            os.str()};
}

inline CheckResult check_orthogonality()
{
    const ModelParams p;
    const auto levels = numeric_spectrum(ManifoldKind::sphere(), p, 0, 0, 4, 800);
    const RadialGrid grid = build_grid(ManifoldKind::sphere(), 800);
    std::vector<double> rho(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i)
        rho[i] = measure_weight(ManifoldKind::sphere(), grid.nodes[i]);
    double worst_cross = 0.0, worst_self = 0.0;
    for (std::size_t a = 0; a < levels.size(); ++a) {
        for (std::size_t b = a; b < levels.size(); ++b) {
            const double ip = quadrature_weighted(levels[a].eigenvector.values,
                                                  levels[b].eigenvector.values, grid, rho);
            if (a == b)
                worst_self = std::max(worst_self, std::abs(ip - 1.0));
            else
                worst_cross = std::max(worst_cross, std::abs(ip));
        }
    }
    std::ostringstream os;
    os << "max cross " << worst_cross << ", max self deviation " << worst_self;
    return {"eigenfunction-orthogonality", worst_cross < 1e-6 && worst_self < 1e-8, os.str()};
}

inline CheckResult check_mode_sign_symmetry()
{
    SplitMix64 rng(0xabcdULL);
    bool ok = true;
    for (int trial = 0; trial < 3 && ok; ++trial) {
        ModelParams p;
        p.mass = 0.5 + rng.uniform();
        p.inertia = 0.5 + rng.uniform();
        p.radius = 0.5 + rng.uniform();
        p.coupling = 0.5 + rng.uniform();
        p.hbar = 0.5 + rng.uniform();
        const int n = 1 + static_cast<int>(rng.next() % 3);
        const int l = 1 + static_cast<int>(rng.next() % 3);
        for (const ManifoldKind kind :
             {ManifoldKind::sphere(), ManifoldKind::pseudosphere()}) {
            const std::optional<double> tm =
                kind.is_sphere() ? std::nullopt : std::optional<double>(20.0);
            ok = ok && closed_form_energy(kind, p, {n, l, 2}) ==
                           closed_form_energy(kind, p, {-n, -l, 2});
            const auto plus = numeric_spectrum(kind, p, n, l, 1, 300, tm);
            const auto minus = numeric_spectrum(kind, p, -n, -l, 1, 300, tm);
            ok = ok && plus[0].energy == minus[0].energy;
        }
    }
    return {"mode-sign-symmetry", ok,
            ok ? "(n,l) -> (-n,-l) leaves spectra unchanged" : "symmetry violated"};
}

/// Runs every check, printing one pass/fail line per check. Returns the
/// number of failures.
inline int run_check_suite(std::ostream& out)
{
    const CheckResult results[] = {
        check_hypergeometric_termination(), check_reference_energies(),
        check_transcription(),              check_convergence_order(),
        check_orthogonality(),              check_mode_sign_symmetry(),
    };
    int failures = 0;
    for (const CheckResult& r : results) {
        out << (r.passed ? "[PASS] " : "[FAIL] ") << r.name << ": " << r.detail << "\n";
        if (!r.passed) ++failures;
    }
    return failures;
}

} // namespace selftest
} // namespace keplertop

#endif
