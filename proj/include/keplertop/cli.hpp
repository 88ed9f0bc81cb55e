#ifndef KEPLERTOP_CLI_HPP
#define KEPLERTOP_CLI_HPP

#include <algorithm>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "keplertop/analytic.hpp"
#include "keplertop/errors.hpp"
#include "keplertop/grid.hpp"
#include "keplertop/model.hpp"
#include "keplertop/oracle.hpp"
#include "keplertop/report.hpp"
#include "keplertop/selftest.hpp"

namespace keplertop {

namespace cli_detail {

struct Options {
    std::string manifold;
    std::string sign = "plus";
    int n = 0;
    int l = 0;
    int kmax = 0;
    int count = 1;
    int grid = 2000;
    std::optional<double> theta_max;
    double mass = 1.0;
    double inertia = 1.0;
    double radius = 1.0;
    double alpha = 1.0;
    double hbar = 1.0;
    std::string format = "csv";
    std::string output;
    std::string source = "analytic";
    int k = 0;
    int level = 0;
    bool normalize = false;
};

inline void add_common_flags(CLI::App* cmd, Options& o)
{
    cmd->add_option("--manifold", o.manifold, "Configuration manifold")
        ->required()
        ->check(CLI::IsMember({"sphere", "pseudosphere"}));
    cmd->add_option("--sign", o.sign, "Sign branch of the pseudosphere operator")
        ->check(CLI::IsMember({"plus", "minus"}));
    cmd->add_option("--n", o.n, "First angular quantum number");
    cmd->add_option("--l", o.l, "Second angular quantum number");
    cmd->add_option("--theta-max", o.theta_max,
                    "Pseudosphere truncation radius (default 20)");
    cmd->add_option("--mass", o.mass)->check(CLI::PositiveNumber);
    cmd->add_option("--inertia", o.inertia)->check(CLI::PositiveNumber);
    cmd->add_option("--radius", o.radius)->check(CLI::PositiveNumber);
    cmd->add_option("--alpha", o.alpha)->check(CLI::PositiveNumber);
    cmd->add_option("--hbar", o.hbar)->check(CLI::PositiveNumber);
    cmd->add_option("--format", o.format)->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--output", o.output, "Write to this path (atomically) instead of stdout");
}

inline void add_grid_flag(CLI::App* cmd, Options& o)
{
    cmd->add_option("--grid", o.grid, "Grid subdivisions N")->check(CLI::Range(8, 10000000));
}

inline ManifoldKind kind_of(const Options& o)
{
    ManifoldKind kind;
    kind.manifold = o.manifold == "sphere" ? Manifold::Sphere : Manifold::Pseudosphere;
    kind.pseudo_sign = o.sign == "minus" ? PseudoSign::Minus : PseudoSign::Plus;
    return kind;
}

inline ModelParams params_of(const Options& o)
{
    ModelParams p;
    p.mass = o.mass;
    p.inertia = o.inertia;
    p.radius = o.radius;
    p.coupling = o.alpha;
    p.hbar = o.hbar;
    return p;
}

inline std::optional<double> resolved_theta_max(const Options& o)
{
    if (o.manifold == "sphere") return std::nullopt;
    return o.theta_max.value_or(20.0);
}

inline ReportFormat format_of(const Options& o)
{
    return o.format == "json" ? ReportFormat::Json : ReportFormat::Csv;
}

inline void emit(const Options& o, const std::string& payload, std::ostream& out)
{
    if (o.output.empty())
        out << payload;
    else
        write_file_atomic(o.output, payload);
}

inline std::string run_spectrum(const Options& o)
{
    SpectrumReport rep;
    rep.kind = kind_of(o);
    rep.params = validate_params(params_of(o));
    rep.n = o.n;
    rep.l = o.l;
    for (const AnalyticLevel& lvl : analytic_spectrum(rep.kind, rep.params, o.n, o.l, o.kmax)) {
        LevelRow row;
        row.level = lvl.qn.k;
        row.e_analytic = lvl.energy;
        rep.levels.push_back(row);
    }
    return serialize_report(rep, format_of(o));
}

inline std::string run_oracle(const Options& o)
{
    SpectrumReport rep;
    rep.kind = kind_of(o);
    rep.params = validate_params(params_of(o));
    rep.n = o.n;
    rep.l = o.l;
    rep.grid_subdivisions = o.grid;
    rep.theta_max = resolved_theta_max(o);
    for (const NumericLevel& lvl : numeric_spectrum(rep.kind, rep.params, o.n, o.l, o.count,
                                                    o.grid, resolved_theta_max(o))) {
        LevelRow row;
        row.level = lvl.index;
        row.e_numeric = lvl.energy;
        row.residual = lvl.residual;
        rep.levels.push_back(row);
    }
    return serialize_report(rep, format_of(o));
}

inline std::string run_compare(const Options& o)
{
    const SpectrumReport rep = compare_report(kind_of(o), validate_params(params_of(o)), o.n,
                                              o.l, o.kmax, o.grid, resolved_theta_max(o));
    return serialize_report(rep, format_of(o));
}

inline std::string run_wavefunction(const Options& o)
{
    const ManifoldKind kind = kind_of(o);
    const ModelParams p = validate_params(params_of(o));
    const RadialGrid grid = build_grid(kind, o.grid, resolved_theta_max(o));

    std::vector<double> theta;
    std::vector<double> value;
    std::string normalization = "unit";
    if (o.source == "analytic") {
        std::size_t count = grid.size();
        if (kind.is_sphere()) {
            count = 0;
            while (count < grid.size() && grid.nodes[count] <= kPi / 2.0) ++count;
        }
        const QuantumNumbers qn{o.n, o.l, o.k};
        theta.assign(grid.nodes.begin(), grid.nodes.begin() + static_cast<long>(count));
        value.resize(count);
        for (std::size_t i = 0; i < count; ++i)
            value[i] = radial_wavefunction_value(kind, p, qn, theta[i]);
        if (o.normalize) {
            double nrm2 = 0.0;
            for (std::size_t i = 0; i < count; ++i)
                nrm2 += value[i] * value[i] * measure_weight(kind, theta[i]);
            nrm2 *= grid.step;
            const double nrm = std::sqrt(nrm2);
            for (double& v : value) v /= nrm;
        } else {
            normalization = "raw";
        }
    } else {
        const auto levels =
            numeric_spectrum(kind, p, o.n, o.l, o.level + 1, o.grid, resolved_theta_max(o));
        theta = grid.nodes;
        value = levels[static_cast<std::size_t>(o.level)].eigenvector.values;
    }

    if (format_of(o) == ReportFormat::Csv) {
        std::string out = "theta,value\n";
        for (std::size_t i = 0; i < theta.size(); ++i)
            out += detail::format17(theta[i]) + "," + detail::format17(value[i]) + "\n";
        return out;
    }
    std::string out = "{\n";
    out += "  \"manifold\": \"" + detail::manifold_name(kind) + "\",\n";
    out += "  \"sign\": \"" + detail::sign_name(kind) + "\",\n";
    out += "  \"params\": {\"mass\": " + detail::format17(p.mass) +
           ", \"inertia\": " + detail::format17(p.inertia) +
           ", \"radius\": " + detail::format17(p.radius) +
           ", \"alpha\": " + detail::format17(p.coupling) +
           ", \"hbar\": " + detail::format17(p.hbar) + "},\n";
    out += "  \"mode\": {\"n\": " + std::to_string(o.n) + ", \"l\": " + std::to_string(o.l) +
           "},\n";
    out += "  \"grid\": {\"N\": " + std::to_string(o.grid) + ", \"theta_max\": " +
           detail::json_value(resolved_theta_max(o)) + "},\n";
    out += "  \"source\": \"" + o.source + "\",\n";
    out += o.source == "analytic" ? "  \"k\": " + std::to_string(o.k) + ",\n"
                                  : "  \"level\": " + std::to_string(o.level) + ",\n";
    out += "  \"normalization\": \"" + normalization + "\",\n";
    out += "  \"samples\": [";
    for (std::size_t i = 0; i < theta.size(); ++i) {
        out += (i == 0) ? "\n" : ",\n";
        out += "    {\"theta\": " + detail::format17(theta[i]) +
               ", \"value\": " + detail::format17(value[i]) + "}";
    }
    out += theta.empty() ? "],\n" : "\n  ],\n";
    out += "  \"generated_by\": \"" + std::string(kVersion) + "\"\n";
    out += "}\n";
    return out;
}

} // namespace cli_detail

/// Command-line entry point. Subcommands: spectrum (closed-form levels),
/// oracle (numeric levels), compare (both, with rel_diff and the closed-form
/// pair's ODE residual), wavefunction (radial samples), check (invariant
/// suite). Returns 0 on success, 2 on usage errors, 1 on numerical failure.
inline int run_cli(std::vector<std::string> args, std::ostream& out = std::cout,
                   std::ostream& err = std::cerr)
{
    CLI::App app{"Spectra of the curved-space Kepler problem for a small rigid body"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    cli_detail::Options o;
    CLI::App* spectrum = app.add_subcommand("spectrum", "Closed-form energy levels");
    cli_detail::add_common_flags(spectrum, o);
    spectrum->add_option("--kmax", o.kmax, "Largest k")->check(CLI::NonNegativeNumber);

    CLI::App* oracle = app.add_subcommand("oracle", "Finite-difference energy levels");
    cli_detail::add_common_flags(oracle, o);
    cli_detail::add_grid_flag(oracle, o);
    oracle->add_option("--count", o.count, "Number of levels")->check(CLI::NonNegativeNumber);

    CLI::App* compare = app.add_subcommand("compare", "Closed-form vs numeric comparison");
    cli_detail::add_common_flags(compare, o);
    cli_detail::add_grid_flag(compare, o);
    compare->add_option("--kmax", o.kmax, "Largest k")->check(CLI::NonNegativeNumber);

    CLI::App* wavefunction =
        app.add_subcommand("wavefunction", "Radial wavefunction samples");
    cli_detail::add_common_flags(wavefunction, o);
    cli_detail::add_grid_flag(wavefunction, o);
    wavefunction->add_option("--source", o.source, "analytic or numeric")
        ->check(CLI::IsMember({"analytic", "numeric"}));
    wavefunction->add_option("--k", o.k, "k of the analytic state")
        ->check(CLI::NonNegativeNumber);
    wavefunction->add_option("--level", o.level, "Index of the numeric level")
        ->check(CLI::NonNegativeNumber);
    wavefunction->add_flag("--normalize", o.normalize,
                           "Unit-normalize analytic samples over the sampled range");

    CLI::App* check = app.add_subcommand("check", "Run the invariant and convergence suite");

    std::reverse(args.begin(), args.end());
    try {
        app.parse(std::move(args));
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForVersion&) {
        out << kVersion << "\n";
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (check->parsed()) return selftest::run_check_suite(out) == 0 ? 0 : 1;
        if (o.manifold == "sphere" && o.theta_max.has_value()) {
            err << "error: --theta-max requires --manifold pseudosphere\n";
            return 2;
        }
        std::string payload;
        if (spectrum->parsed())
            payload = cli_detail::run_spectrum(o);
        else if (oracle->parsed())
            payload = cli_detail::run_oracle(o);
        else if (compare->parsed())
            payload = cli_detail::run_compare(o);
        else if (wavefunction->parsed())
            payload = cli_detail::run_wavefunction(o);
        cli_detail::emit(o, payload, out);
        return 0;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace keplertop

#endif
