#ifndef KEPLERTOP_GRID_HPP
#define KEPLERTOP_GRID_HPP

#include <cmath>
#include <optional>
#include <vector>

#include "keplertop/errors.hpp"
#include "keplertop/model.hpp"

namespace keplertop {

/// Uniform interior grid for the radial coordinate theta: nodes i*h for
/// i = 1 .. N-1 with h = pi/N (sphere) or h = theta_max/N (pseudosphere).
/// The singular endpoints theta = 0 and theta = pi (and the pseudosphere
/// truncation point theta_max) are never nodes.
struct RadialGrid {
    ManifoldKind kind;
    int subdivisions = 0; ///< N; the grid holds N-1 interior nodes
    double step = 0.0;
    std::vector<double> nodes;
    std::optional<double> theta_max; ///< pseudosphere truncation, absent on the sphere

    std::size_t size() const { return nodes.size(); }
    double span() const { return step * subdivisions; }
};

inline RadialGrid build_grid(const ManifoldKind& kind, int subdivisions,
                             std::optional<double> theta_max = std::nullopt)
{
    if (subdivisions < 8) throw BadGridSpec("grid needs N >= 8 subdivisions");
    RadialGrid g;
    g.kind = kind;
    g.subdivisions = subdivisions;
    if (kind.is_sphere()) {
        if (theta_max.has_value())
            throw BadGridSpec("theta_max is not accepted for a sphere grid");
        g.step = kPi / subdivisions;
    } else {
        if (!theta_max.has_value() || !(*theta_max > 0.0))
            throw BadGridSpec("pseudosphere grid requires theta_max > 0");
        g.theta_max = *theta_max;
        g.step = *theta_max / subdivisions;
    }
    g.nodes.resize(static_cast<std::size_t>(subdivisions) - 1);
    for (int i = 1; i < subdivisions; ++i)
        g.nodes[static_cast<std::size_t>(i) - 1] = g.step * i;
    return g;
}

/// Measure weight rho(theta) entering the invariant inner product:
/// sin(theta) on the sphere, sinh(theta) on the pseudosphere.
inline double measure_weight(const ManifoldKind& kind, double theta)
{
    return kind.is_sphere() ? std::sin(theta) : std::sinh(theta);
}

enum class Normalization { Raw, UnitNorm };

/// Radial function sampled on a grid, one value per node.
struct WavefunctionSamples {
    std::vector<double> values;
    Normalization normalization = Normalization::Raw;
};

} // namespace keplertop

#endif
