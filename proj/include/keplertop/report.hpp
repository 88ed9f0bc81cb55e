#ifndef KEPLERTOP_REPORT_HPP
#define KEPLERTOP_REPORT_HPP

#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "keplertop/analytic.hpp"
#include "keplertop/errors.hpp"
#include "keplertop/grid.hpp"
#include "keplertop/model.hpp"
#include "keplertop/oracle.hpp"

namespace keplertop {

/// One spectrum row. Absent fields stay empty in CSV and null in JSON.
struct LevelRow {
    int level = 0;
    std::optional<double> e_analytic;
    std::optional<double> e_numeric;
    std::optional<double> rel_diff;
    std::optional<double> residual;
};

/// Aggregated spectrum output: resolved configuration, per-level values and
/// grid metadata. Level index k aligns the k-th analytic level with the k-th
/// ascending numeric level; that pairing is a reporting convention, so an
/// ordering disagreement between the two routes shows up as a large rel_diff
/// instead of being silently reshuffled.
struct SpectrumReport {
    ManifoldKind kind;
    ModelParams params;
    int n = 0;
    int l = 0;
    std::optional<int> grid_subdivisions;
    std::optional<double> theta_max;
    /// Pseudosphere only: ground-level energy change when the truncation is
    /// re-run at 1.5 theta_max (signed, E_wide - E_base).
    std::optional<double> theta_max_shift;
    std::vector<LevelRow> levels;
    std::string generated_by = kVersion;
};

enum class ReportFormat { Csv, Json };

/// |a - b| / max(|a|, |b|, 1e-300).
inline double relative_difference(double a, double b)
{
    return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300});
}

namespace detail {

/// Shortest %.17g rendering: 17 significant digits round-trip a double
/// exactly through text.
inline std::string format17(double x)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

inline std::string manifold_name(const ManifoldKind& kind)
{
    return kind.is_sphere() ? "sphere" : "pseudosphere";
}

inline std::string sign_name(const ManifoldKind& kind)
{
    return kind.pseudo_sign == PseudoSign::Minus ? "minus" : "plus";
}

inline std::string csv_cell(const std::optional<double>& v)
{
    return v ? format17(*v) : std::string();
}

inline std::string json_value(const std::optional<double>& v)
{
    return v ? format17(*v) : std::string("null");
}

} // namespace detail

/// Fixed-order, fixed-format serialization; identical reports produce
/// identical bytes, so golden-file comparison is meaningful.
inline std::string serialize_report(const SpectrumReport& rep, ReportFormat format)
{
    std::string out;
    if (format == ReportFormat::Csv) {
        out += "manifold,n,l,level,E_analytic,E_numeric,rel_diff,residual\n";
        const std::string manifold = detail::manifold_name(rep.kind);
        for (const LevelRow& row : rep.levels) {
            out += manifold;
            out += ',' + std::to_string(rep.n);
            out += ',' + std::to_string(rep.l);
            out += ',' + std::to_string(row.level);
            out += ',' + detail::csv_cell(row.e_analytic);
            out += ',' + detail::csv_cell(row.e_numeric);
            out += ',' + detail::csv_cell(row.rel_diff);
            out += ',' + detail::csv_cell(row.residual);
            out += '\n';
        }
        return out;
    }
    out += "{\n";
    out += "  \"manifold\": \"" + detail::manifold_name(rep.kind) + "\",\n";
    out += "  \"sign\": \"" + detail::sign_name(rep.kind) + "\",\n";
    out += "  \"params\": {\"mass\": " + detail::format17(rep.params.mass) +
           ", \"inertia\": " + detail::format17(rep.params.inertia) +
           ", \"radius\": " + detail::format17(rep.params.radius) +
           ", \"alpha\": " + detail::format17(rep.params.coupling) +
           ", \"hbar\": " + detail::format17(rep.params.hbar) + "},\n";
    out += "  \"mode\": {\"n\": " + std::to_string(rep.n) + ", \"l\": " + std::to_string(rep.l) +
           "},\n";
    out += "  \"grid\": {\"N\": " +
           (rep.grid_subdivisions ? std::to_string(*rep.grid_subdivisions)
                                  : std::string("null")) +
           ", \"theta_max\": " + detail::json_value(rep.theta_max) + "},\n";
    if (rep.theta_max_shift)
        out += "  \"theta_max_shift\": " + detail::format17(*rep.theta_max_shift) + ",\n";
    out += "  \"levels\": [";
    for (std::size_t i = 0; i < rep.levels.size(); ++i) {
        const LevelRow& row = rep.levels[i];
        out += (i == 0) ? "\n" : ",\n";
        out += "    {\"n\": " + std::to_string(rep.n) + ", \"l\": " + std::to_string(rep.l) +
               ", \"level\": " + std::to_string(row.level) +
               ", \"E_analytic\": " + detail::json_value(row.e_analytic) +
               ", \"E_numeric\": " + detail::json_value(row.e_numeric) +
               ", \"rel_diff\": " + detail::json_value(row.rel_diff) +
               ", \"residual\": " + detail::json_value(row.residual) + "}";
    }
    out += rep.levels.empty() ? "],\n" : "\n  ],\n";
    out += "  \"generated_by\": \"" + rep.generated_by + "\"\n";
    out += "}\n";
    return out;
}

namespace detail {

/// Residual of the closed-form pair (wavefunction, energy) against the radial
/// equation, evaluated on the portion of the grid where the wavefunction is
/// defined (theta <= pi/2 on the sphere, everything on the pseudosphere) and
/// unit-normalized over that range first.
inline std::optional<double>
analytic_pair_residual(const ManifoldKind& kind, const ModelParams& p, const QuantumNumbers& qn,
                       double energy, const RadialGrid& grid)
{
    std::size_t count = grid.size();
    if (kind.is_sphere()) {
        count = 0;
        while (count < grid.size() && grid.nodes[count] <= kPi / 2.0) ++count;
    }
    if (count < 5) return std::nullopt;
    std::vector<double> f(count);
    for (std::size_t i = 0; i < count; ++i)
        f[i] = radial_wavefunction_value(kind, p, qn, grid.nodes[i]);
    double nrm2 = 0.0;
    for (std::size_t i = 0; i < count; ++i)
        nrm2 += f[i] * f[i] * measure_weight(kind, grid.nodes[i]);
    nrm2 *= grid.step;
    if (!(nrm2 > 0.0)) return std::nullopt;
    const double nrm = std::sqrt(nrm2);
    for (double& x : f) x /= nrm;
    return ode_residual_prefix(kind, p, qn.n, qn.l, energy, f, grid, count);
}

} // namespace detail

/// Closed-form and numeric spectra side by side for k = 0 .. k_max, with the
/// relative difference and the closed-form pair's ODE residual per row. On
/// the pseudosphere a truncation sensitivity entry (ground level re-run at
/// 1.5 theta_max) is attached.
inline SpectrumReport compare_report(const ManifoldKind& kind, const ModelParams& p, int n,
                                     int l, int k_max, int subdivisions,
                                     std::optional<double> theta_max = std::nullopt)
{
    validate_params(p);
    if (k_max < 0) throw DomainError("compare_report: k_max must be >= 0");
    SpectrumReport rep;
    rep.kind = kind;
    rep.params = p;
    rep.n = n;
    rep.l = l;
    rep.grid_subdivisions = subdivisions;
    rep.theta_max = theta_max;

    const auto analytic = analytic_spectrum(kind, p, n, l, k_max);
    const auto numeric = numeric_spectrum(kind, p, n, l, k_max + 1, subdivisions, theta_max);
    const RadialGrid grid = build_grid(kind, subdivisions, theta_max);

    for (int k = 0; k <= k_max; ++k) {
        const auto idx = static_cast<std::size_t>(k);
        LevelRow row;
        row.level = k;
        row.e_analytic = analytic[idx].energy;
        row.e_numeric = numeric[idx].energy;
        row.rel_diff = relative_difference(*row.e_analytic, *row.e_numeric);
        row.residual =
            detail::analytic_pair_residual(kind, p, analytic[idx].qn, analytic[idx].energy, grid);
        rep.levels.push_back(row);
    }
    if (!kind.is_sphere() && theta_max) {
        const auto wide = numeric_spectrum(kind, p, n, l, 1, subdivisions, *theta_max * 1.5);
        rep.theta_max_shift = wide[0].energy - numeric[0].energy;
    }
    return rep;
}

/// Writes content to path through a temp file plus rename, so readers never
/// observe a half-written report.
inline void write_file_atomic(const std::string& path, const std::string& content)
{
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot open " + tmp + " for writing");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) throw Error("short write to " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw Error("cannot rename " + tmp + " to " + path);
}

} // namespace keplertop

#endif
