#include "doctest.h"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "keplertop/cli.hpp"

using namespace keplertop;

namespace {

struct CliResult {
    int exit_code;
    std::string out;
    std::string err;
};

CliResult run(std::vector<std::string> args)
{
    std::ostringstream out, err;
    const int code = run_cli(std::move(args), out, err);
    return {code, out.str(), err.str()};
}

} // namespace

TEST_CASE("spectrum subcommand reproduces the reference levels")
{
    const auto r = run({"spectrum", "--manifold", "sphere", "--n", "0", "--l", "0", "--kmax",
                        "2"});
    CHECK(r.exit_code == 0);
    CHECK(r.out == "manifold,n,l,level,E_analytic,E_numeric,rel_diff,residual\n"
                   "sphere,0,0,0,-1,,,\n"
                   "sphere,0,0,1,-1.5,,,\n"
                   "sphere,0,0,2,-2,,,\n");
    CHECK(r.err.empty());
}

TEST_CASE("usage errors exit with 2 and name the flag")
{
    const auto sphere_tm = run({"spectrum", "--manifold", "sphere", "--theta-max", "5"});
    CHECK(sphere_tm.exit_code == 2);
    CHECK(sphere_tm.err.find("--theta-max") != std::string::npos);

    const auto missing = run({"spectrum"});
    CHECK(missing.exit_code == 2);
    CHECK(missing.err.find("--manifold") != std::string::npos);

    const auto unknown = run({"spectrum", "--manifold", "sphere", "--bogus", "1"});
    CHECK(unknown.exit_code == 2);

    const auto bad_value = run({"spectrum", "--manifold", "torus"});
    CHECK(bad_value.exit_code == 2);

    const auto bad_mass =
        run({"spectrum", "--manifold", "sphere", "--mass", "-1"});
    CHECK(bad_mass.exit_code == 2);
    CHECK(bad_mass.err.find("--mass") != std::string::npos);

    const auto no_sub = run({});
    CHECK(no_sub.exit_code == 2);
}

TEST_CASE("oracle subcommand emits one numeric row per level")
{
    const auto r = run({"oracle", "--manifold", "sphere", "--n", "0", "--l", "0", "--count",
                        "2", "--grid", "400"});
    CHECK(r.exit_code == 0);
    std::istringstream lines(r.out);
    std::string header, row0, row1, extra;
    std::getline(lines, header);
    std::getline(lines, row0);
    std::getline(lines, row1);
    CHECK(header == "manifold,n,l,level,E_analytic,E_numeric,rel_diff,residual");
    CHECK(row0.rfind("sphere,0,0,0,,", 0) == 0); // E_analytic empty
    CHECK(row1.rfind("sphere,0,0,1,,", 0) == 0);
    CHECK_FALSE(std::getline(lines, extra));
}

TEST_CASE("cli output is byte-identical across runs")
{
    const std::vector<std::string> cmds[] = {
        {"spectrum", "--manifold", "pseudosphere", "--sign", "minus", "--n", "1", "--l", "1",
         "--kmax", "3", "--format", "json"},
        {"compare", "--manifold", "sphere", "--n", "0", "--l", "1", "--kmax", "1", "--grid",
         "200"},
        {"wavefunction", "--manifold", "sphere", "--k", "1", "--grid", "64"},
    };
    for (const auto& cmd : cmds) {
        const auto a = run(cmd);
        const auto b = run(cmd);
        CHECK(a.exit_code == 0);
        CHECK(a.out == b.out);
        CHECK_FALSE(a.out.empty());
    }
}

TEST_CASE("compare emits json with sensitivity metadata on the pseudosphere")
{
    const auto r = run({"compare", "--manifold", "pseudosphere", "--n", "0", "--l", "0",
                        "--kmax", "1", "--grid", "300", "--format", "json"});
    CHECK(r.exit_code == 0);
    const auto parsed = nlohmann::json::parse(r.out);
    CHECK(parsed["manifold"] == "pseudosphere");
    CHECK(parsed["grid"]["theta_max"].get<double>() == 20.0);
    CHECK(parsed.contains("theta_max_shift"));
    REQUIRE(parsed["levels"].size() == 2);
    CHECK(parsed["levels"][0]["E_analytic"].get<double>() == 1.0);
    CHECK(parsed["levels"][0]["E_numeric"].is_number());
}

TEST_CASE("wavefunction subcommand: analytic prefix and numeric eigenvector")
{
    const auto analytic = run({"wavefunction", "--manifold", "sphere", "--n", "0", "--l", "0",
                               "--k", "0", "--grid", "64"});
    CHECK(analytic.exit_code == 0);
    std::istringstream lines(analytic.out);
    std::string line;
    std::getline(lines, line);
    CHECK(line == "theta,value");
    int rows = 0;
    while (std::getline(lines, line)) {
        ++rows;
        CHECK(line.substr(line.find(',') + 1) == "1"); // f == 1 for the trivial state
    }
    CHECK(rows == 32); // nodes up to and including pi/2

    const auto numeric = run({"wavefunction", "--manifold", "sphere", "--source", "numeric",
                              "--level", "0", "--grid", "64", "--format", "json"});
    CHECK(numeric.exit_code == 0);
    const auto parsed = nlohmann::json::parse(numeric.out);
    CHECK(parsed["source"] == "numeric");
    CHECK(parsed["normalization"] == "unit");
    CHECK(parsed["samples"].size() == 63);
}

TEST_CASE("output flag writes the same bytes atomically")
{
    const std::string path = "keplertop_cli_test_output.csv";
    const auto direct = run({"spectrum", "--manifold", "sphere", "--kmax", "1"});
    const auto filed =
        run({"spectrum", "--manifold", "sphere", "--kmax", "1", "--output", path});
    CHECK(filed.exit_code == 0);
    CHECK(filed.out.empty());
    std::ifstream in(path, std::ios::binary);
    std::stringstream buf;
    buf << in.rdbuf();
    CHECK(buf.str() == direct.out);
    std::remove(path.c_str());
}

TEST_CASE("check subcommand runs the invariant suite")
{
    const auto r = run({"check"});
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("[PASS]") != std::string::npos);
    CHECK(r.out.find("[FAIL]") == std::string::npos);
}
