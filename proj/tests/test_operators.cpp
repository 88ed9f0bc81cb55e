#include "doctest.h"

#include <cmath>
#include <vector>

#include "keplertop/operators.hpp"
#include "keplertop/oracle.hpp"
#include "keplertop/selftest.hpp"

using namespace keplertop;

namespace {

std::vector<double> sample(const RadialGrid& grid, double (*fn)(double))
{
    std::vector<double> f(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) f[i] = fn(grid.nodes[i]);
    return f;
}

double max_abs(const std::vector<double>& v)
{
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

} // namespace

TEST_CASE("both operators annihilate constants for n = l = 0")
{
    const ModelParams p;
    for (const ManifoldKind kind : {ManifoldKind::sphere(), ManifoldKind::pseudosphere()}) {
        const auto tm = kind.is_sphere() ? std::nullopt : std::optional<double>(20.0);
        const RadialGrid grid = build_grid(kind, 64, tm);
        const std::vector<double> ones(grid.size(), 1.0);
        CHECK(max_abs(apply_full_laplacian_mode(kind, p, ones, 0, 0, grid)) < 1e-12);
        CHECK(max_abs(radial_operator_apply(kind, p, 0, 0, ones, grid)) < 1e-12);
    }
}

TEST_CASE("full laplacian on theta^2 approximates 2 + 2 theta cot theta")
{
    const ModelParams p;
    const auto sphere = ManifoldKind::sphere();
    double err_at[2];
    int idx = 0;
    for (int n_sub : {200, 400}) {
        const RadialGrid grid = build_grid(sphere, n_sub);
        const auto f = sample(grid, [](double t) { return t * t; });
        const auto out = apply_full_laplacian_mode(sphere, p, f, 0, 0, grid);
        // fixed interior window: near the poles the image 2 + 2 theta cot
        // theta is itself singular and the error constant grows
        double worst = 0.0;
        for (std::size_t j = 1; j + 1 < grid.size(); ++j) {
            const double theta = grid.nodes[j];
            if (theta < 0.3 || theta > kPi - 0.3) continue;
            const double exact = 2.0 + 2.0 * theta / std::tan(theta);
            worst = std::max(worst, std::abs(out[j - 1] - exact));
        }
        err_at[idx++] = worst;
    }
    CHECK(err_at[1] < 1e-4);
    CHECK(err_at[0] / err_at[1] > 3.0);
    CHECK(err_at[0] / err_at[1] < 5.0);
}

TEST_CASE("radial operator on sin theta matches its symbolic image")
{
    const ModelParams p;
    const auto sphere = ManifoldKind::sphere();
    const RadialGrid grid = build_grid(sphere, 500);
    const auto f = sample(grid, [](double t) { return std::sin(t); });
    const auto out = radial_operator_apply(sphere, p, 0, 0, f, grid);
    double worst = 0.0;
    for (std::size_t j = 1; j + 1 < grid.size(); ++j) {
        const double theta = grid.nodes[j];
        if (theta < 0.3 || theta > kPi - 0.3) continue;
        const double exact = -std::sin(theta) + std::cos(theta) / std::tan(theta);
        worst = std::max(worst, std::abs(out[j - 1] - exact));
    }
    CHECK(worst < 5e-5);
}

TEST_CASE("mode sign flip leaves the full laplacian output bit-identical")
{
    const ModelParams p{1.3, 0.8, 1.1, 0.9, 1.0};
    SplitMix64 rng(0x90efULL);
    for (const ManifoldKind kind : {ManifoldKind::sphere(), ManifoldKind::pseudosphere()}) {
        const auto tm = kind.is_sphere() ? std::nullopt : std::optional<double>(15.0);
        const RadialGrid grid = build_grid(kind, 120, tm);
        const auto f = selftest::random_radial_profile(rng, grid);
        for (int n = -3; n <= 3; ++n) {
            for (int l = -3; l <= 3; ++l) {
                CHECK(apply_full_laplacian_mode(kind, p, f, n, l, grid) ==
                      apply_full_laplacian_mode(kind, p, f, -n, -l, grid));
                CHECK(radial_operator_apply(kind, p, n, l, f, grid) ==
                      radial_operator_apply(kind, p, -n, -l, f, grid));
            }
        }
    }
}

TEST_CASE("transcription: the two operator routes agree at second order")
{
    const ModelParams p;
    for (const ManifoldKind kind : {ManifoldKind::sphere(), ManifoldKind::pseudosphere()}) {
        const double coarse = selftest::transcription_discrepancy(kind, p, 200, 6, 3, 0xbeefULL);
        const double fine = selftest::transcription_discrepancy(kind, p, 400, 6, 3, 0xbeefULL);
        const double ratio = coarse / fine;
        CHECK(ratio > 3.0);
        CHECK(ratio < 5.0);
    }
}

TEST_CASE("operators reject grids that cannot host a stencil")
{
    const ModelParams p;
    RadialGrid tiny;
    tiny.kind = ManifoldKind::sphere();
    tiny.subdivisions = 4;
    tiny.step = kPi / 4;
    tiny.nodes = {tiny.step, 2 * tiny.step, 3 * tiny.step};
    const std::vector<double> f(3, 1.0);
    CHECK_THROWS_AS(apply_full_laplacian_mode(ManifoldKind::sphere(), p, f, 0, 0, tiny),
                    GridTooSmall);
    CHECK_THROWS_AS(radial_operator_apply(ManifoldKind::sphere(), p, 0, 0, f, tiny),
                    GridTooSmall);

    const RadialGrid grid = build_grid(ManifoldKind::sphere(), 32);
    const std::vector<double> wrong(grid.size() + 1, 1.0);
    CHECK_THROWS_AS(radial_operator_apply(ManifoldKind::sphere(), p, 0, 0, wrong, grid),
                    LengthMismatch);
    CHECK_THROWS_AS(
        apply_full_laplacian_mode(ManifoldKind::pseudosphere(), p, wrong, 0, 0, grid),
        BadGridSpec);
}

TEST_CASE("sturm liouville form: structure invariants")
{
    const ModelParams p{1.4, 0.9, 1.2, 0.8, 1.1};
    for (const ManifoldKind kind : {ManifoldKind::sphere(), ManifoldKind::pseudosphere()}) {
        const auto tm = kind.is_sphere() ? std::nullopt : std::optional<double>(18.0);
        const RadialGrid grid = build_grid(kind, 90, tm);
        const SturmLiouvilleForm form = sturm_liouville_form(kind, p, 2, -1, grid);
        REQUIRE(form.diag.size() == grid.size());
        REQUIRE(form.offdiag.size() == grid.size() - 1);
        REQUIRE(form.weight.size() == grid.size());
        CHECK(form.scale == p.energy_scale());
        for (double w : form.weight) CHECK(w > 0.0);
        for (double o : form.offdiag) CHECK(o < 0.0);

        // the stored symmetric matrix is the similarity transform of the flux
        // operator: T_{i,i+1} = -face_i / (h^2 sqrt(rho_i rho_{i+1}))
        const double h = grid.step;
        for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
            const double face = measure_weight(kind, grid.nodes[i] + 0.5 * h);
            const double expected = -face / (h * h * std::sqrt(form.weight[i] * form.weight[i + 1]));
            CHECK(form.offdiag[i] == doctest::Approx(expected).epsilon(1e-14));
        }

        // joint sign flip leaves the form bit-identical
        const SturmLiouvilleForm flipped = sturm_liouville_form(kind, p, -2, 1, grid);
        CHECK(form.diag == flipped.diag);
        CHECK(form.offdiag == flipped.offdiag);
        CHECK(form.weight == flipped.weight);
    }
}

TEST_CASE("flux operator annihilates constants when the potential is off")
{
    const ModelParams p;
    const auto sphere = ManifoldKind::sphere();
    const RadialGrid grid = build_grid(sphere, 64);
    const SturmLiouvilleForm form = sturm_liouville_form(sphere, p, 0, 0, grid, false);

    // apply the untransformed flux operator A = D^{-1} T D to the constant
    // vector: (A 1)_i = (T sqrt(rho))_i / sqrt(rho_i)
    const std::size_t m = grid.size();
    std::vector<double> srho(m);
    for (std::size_t i = 0; i < m; ++i) srho[i] = std::sqrt(form.weight[i]);
    const double scale = 1.0 / (grid.step * grid.step);
    for (std::size_t i = 0; i < m; ++i) {
        double y = form.diag[i] * srho[i];
        if (i > 0) y += form.offdiag[i - 1] * srho[i - 1];
        if (i + 1 < m) y += form.offdiag[i] * srho[i + 1];
        CHECK(std::abs(y / srho[i]) < 1e-10 * scale);
    }
}

TEST_CASE("similarity-transformed eigenvalues equal the generalized flux eigenvalues")
{
    // hand-built 6-node sphere grid; the dense oracle solves det(A - mu B) = 0
    // with B = diag(rho) by sign-change bisection on the determinant.
    const ModelParams p;
    const auto sphere = ManifoldKind::sphere();
    RadialGrid grid;
    grid.kind = sphere;
    grid.subdivisions = 7;
    grid.step = kPi / 7;
    grid.nodes.resize(6);
    for (int i = 1; i <= 6; ++i) grid.nodes[i - 1] = grid.step * i;

    const SturmLiouvilleForm form = sturm_liouville_form(sphere, p, 1, 1, grid);
    const std::size_t m = 6;

    // reconstruct the flux pencil (F, B): F v = mu B v with B = diag(rho);
    // F is the flux operator with rows multiplied back by rho, so
    // F_{i,i+1} = -face_i/h^2 = offdiag_i sqrt(rho_i rho_{i+1})
    std::vector<std::vector<double>> F(m, std::vector<double>(m, 0.0));
    for (std::size_t i = 0; i < m; ++i) F[i][i] = form.diag[i] * form.weight[i];
    for (std::size_t i = 0; i + 1 < m; ++i) {
        F[i][i + 1] = form.offdiag[i] * std::sqrt(form.weight[i] * form.weight[i + 1]);
        F[i + 1][i] = F[i][i + 1];
    }

    const auto det_shift = [&](double mu) {
        std::vector<std::vector<double>> M = F;
        for (std::size_t i = 0; i < m; ++i) M[i][i] -= mu * form.weight[i];
        double det = 1.0;
        for (std::size_t c = 0; c < m; ++c) {
            std::size_t piv = c;
            for (std::size_t r = c + 1; r < m; ++r)
                if (std::abs(M[r][c]) > std::abs(M[piv][c])) piv = r;
            if (piv != c) {
                std::swap(M[piv], M[c]);
                det = -det;
            }
            if (M[c][c] == 0.0) return 0.0;
            det *= M[c][c];
            for (std::size_t r = c + 1; r < m; ++r) {
                const double fmul = M[r][c] / M[c][c];
                for (std::size_t cc = c; cc < m; ++cc) M[r][cc] -= fmul * M[c][cc];
            }
        }
        return det;
    };

    const auto tri = eigen_tridiagonal(form.diag, form.offdiag, 3);
    for (double lam : tri) {
        // bracket the root of det(F - mu B) near lam and bisect
        double lo = lam - 0.5, hi = lam + 0.5;
        REQUIRE(det_shift(lo) * det_shift(hi) < 0.0);
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (det_shift(lo) * det_shift(mid) <= 0.0)
                hi = mid;
            else
                lo = mid;
        }
        CHECK(0.5 * (lo + hi) == doctest::Approx(lam).epsilon(1e-9));
    }
}
