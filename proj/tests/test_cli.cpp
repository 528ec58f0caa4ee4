#include "sprd/config.hpp"
#include "sprd/errors.hpp"
#include "sprd/run.hpp"

#include "doctest.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

struct TempDir {
    fs::path path;
    TempDir(const std::string& tag) : path(fs::temp_directory_path() / ("sprd_test_" + tag)) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

const char* kBaseConfig = R"(
# corpus problem
[problem]
alpha = 2 + sin(x)
beta  = 1
f     = exp(x)

[run]
eps = 0.01, 0.001
jobs = 2

[verify]
checks = layer-decay, inequalities

[output]
dir = out
)";

} // namespace

TEST_CASE("config parsing") {
    std::istringstream in(kBaseConfig);
    const auto config = sprd::parse_config(in, "test.conf");
    CHECK(config.alpha_expr == "2 + sin(x)");
    CHECK(config.eps_list == std::vector<double>{0.01, 0.001});
    CHECK(config.checks.count("layer-decay") == 1);
    CHECK(config.tolerances.jobs == 2);
    CHECK(config.output_dir == "out");
    config.validate();
}

TEST_CASE("config errors carry line numbers") {
    std::istringstream bad_key("[problem]\nalpha = 1\nbogus = 2\n");
    CHECK_THROWS_WITH_AS(sprd::parse_config(bad_key, "c"), doctest::Contains("c:3"),
                         sprd::ParseError);
    std::istringstream bad_section("[nope]\n");
    CHECK_THROWS_AS(sprd::parse_config(bad_section, "c"), sprd::ParseError);
    std::istringstream orphan("alpha = 1\n");
    CHECK_THROWS_AS(sprd::parse_config(orphan, "c"), sprd::ParseError);
    std::istringstream bad_number("[run]\neps = fast\n");
    CHECK_THROWS_AS(sprd::parse_config(bad_number, "c"), sprd::ParseError);
}

TEST_CASE("degree ranges") {
    std::istringstream in("[run]\neps = 0.01\ndegrees = 3..6\n");
    const auto config = sprd::parse_config(in, "c");
    CHECK(config.degrees == std::vector<int>{3, 4, 5, 6});
}

TEST_CASE("verify command writes a report and reruns byte-identically") {
    TempDir dir("verify");
    std::istringstream in(kBaseConfig);
    auto config = sprd::parse_config(in, "test.conf");
    config.output_dir = (dir.path / "out").string();

    std::ostringstream log_a;
    CHECK(sprd::run_command(sprd::Command::Verify, config, log_a) == 0);
    CHECK(log_a.str().find("[PASS] layer-decay") != std::string::npos);
    const std::string report_a = slurp(fs::path(config.output_dir) / "report.txt");
    const std::string csv_a = slurp(fs::path(config.output_dir) / "check_layer-decay.csv");
    CHECK(report_a.find("overall: PASS") != std::string::npos);

    std::ostringstream log_b;
    CHECK(sprd::run_command(sprd::Command::Verify, config, log_b) == 0);
    CHECK(slurp(fs::path(config.output_dir) / "report.txt") == report_a);
    CHECK(slurp(fs::path(config.output_dir) / "check_layer-decay.csv") == csv_a);
}

TEST_CASE("exit status reflects an injected failing tolerance") {
    TempDir dir("failing");
    std::istringstream in(kBaseConfig);
    auto config = sprd::parse_config(in, "test.conf");
    config.output_dir = (dir.path / "out").string();
    config.checks = {"layer-decay"};
    config.tolerances.decay_rate_tol = 1e-18; // unreachably tight
    std::ostringstream log;
    CHECK(sprd::run_command(sprd::Command::Verify, config, log) == 1);
    CHECK(log.str().find("failing check: layer-decay") != std::string::npos);
}

TEST_CASE("solve with zero load writes a zero table") {
    TempDir dir("solve");
    sprd::RunConfig config;
    config.alpha_expr = "1";
    config.beta_expr = "1";
    config.f_expr = "0";
    config.eps_list = {0.05};
    config.degrees = {3, 4, 5, 6};
    config.sample_points = 11;
    config.output_dir = (dir.path / "out").string();
    std::ostringstream log;
    CHECK(sprd::run_command(sprd::Command::Solve, config, log) == 0);
    const std::string csv = slurp(fs::path(config.output_dir) / "solution_eps0.05.csv");
    CHECK(csv.find("x,u,du,d2u\n") == 0);
    std::istringstream rows(csv);
    std::string line;
    std::getline(rows, line); // header
    while (std::getline(rows, line)) {
        const auto first_comma = line.find(',');
        CHECK(line.substr(first_comma + 1) == "0,0,0");
    }
}

TEST_CASE("expand skips the degenerate regime with a notice") {
    TempDir dir("expand");
    sprd::RunConfig config;
    config.alpha_expr = "1";
    config.beta_expr = "1";
    config.f_expr = "1";
    config.eps_list = {0.5};
    config.output_dir = (dir.path / "out").string();
    std::ostringstream log;
    CHECK(sprd::run_command(sprd::Command::Expand, config, log) == 0);
    CHECK(log.str().find("degenerate regime, expansion skipped") != std::string::npos);
    CHECK_FALSE(fs::exists(fs::path(config.output_dir) / "decomposition_eps0.5.csv"));
}

TEST_CASE("expand writes decomposition dumps") {
    TempDir dir("expand2");
    sprd::RunConfig config;
    config.alpha_expr = "1";
    config.beta_expr = "1";
    config.f_expr = "1";
    config.eps_list = {0.004};
    config.output_dir = (dir.path / "out").string();
    std::ostringstream log;
    CHECK(sprd::run_command(sprd::Command::Expand, config, log) == 0);
    const std::string csv = slurp(fs::path(config.output_dir) / "decomposition_eps0.004.csv");
    CHECK(csv.find("kind,j,side,rate_or_degree") == 0);
}

TEST_CASE("oracle check command prints the agreement table") {
    TempDir dir("oracle");
    sprd::RunConfig config;
    config.alpha_expr = "2 + sin(x)";
    config.beta_expr = "1";
    config.f_expr = "exp(x)";
    config.eps_list = {0.01};
    config.tolerances.oracle_j_max = 3;
    config.output_dir = (dir.path / "out").string();
    std::ostringstream log;
    CHECK(sprd::run_command(sprd::Command::OracleCheck, config, log) == 0);
    CHECK(log.str().find("left j=1") != std::string::npos);
    CHECK(log.str().find("agreement within tolerance") != std::string::npos);
}

TEST_CASE("sweep writes the convergence table and plots") {
    TempDir dir("sweep");
    sprd::RunConfig config;
    config.alpha_expr = "1.2 + 8*x";
    config.beta_expr = "1";
    config.f_expr = "exp(x)";
    config.eps_list = {0.015625, 0.0078125, 0.00390625, 0.001953125, 0.0009765625};
    config.degrees = {4, 5, 6, 7, 8};
    config.checks = {"remainder"};
    config.tolerances.jobs = 2;
    config.output_dir = (dir.path / "out").string();
    std::ostringstream log;
    CHECK(sprd::run_command(sprd::Command::Sweep, config, log) == 0);
    const std::string table = slurp(fs::path(config.output_dir) / "convergence.csv");
    CHECK(table.find("kind,x,y\n") == 0);
    CHECK(table.find("remainder,") != std::string::npos);
    CHECK(table.find("energy,") != std::string::npos);
    const std::string svg = slurp(fs::path(config.output_dir) / "remainder_vs_inveps.svg");
    CHECK(svg.find("<?xml") == 0);
    CHECK(svg.find("<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\"") !=
          std::string::npos);
    CHECK(fs::exists(fs::path(config.output_dir) / "energy_vs_p.svg"));
}

TEST_CASE("config validation rejects unusable settings") {
    sprd::RunConfig config;
    config.eps_list = {0.01};
    config.degrees = {2};
    CHECK_THROWS_AS(config.validate(), sprd::DomainError);
    config.degrees = {4};
    config.eps_list = {1.5};
    CHECK_THROWS_AS(config.validate(), sprd::DomainError);
    config.eps_list = {0.01};
    config.alpha_expr = "2 +";
    CHECK_THROWS_AS(config.validate(), sprd::ParseError);
}

TEST_CASE("expand rejects an inadmissible order override") {
    TempDir dir("badM");
    sprd::RunConfig config;
    config.alpha_expr = "1";
    config.beta_expr = "1";
    config.f_expr = "1";
    config.eps_list = {0.5};
    config.M_override = 25;
    config.output_dir = (dir.path / "out").string();
    std::ostringstream log;
    CHECK_THROWS_AS(sprd::run_command(sprd::Command::Expand, config, log), sprd::DomainError);
}

TEST_CASE("full verification of the steep corpus passes end to end") {
    TempDir dir("full");
    sprd::RunConfig config;
    config.alpha_expr = "1.2 + 8*x";
    config.beta_expr = "1";
    config.f_expr = "exp(x)";
    for (int k = 4; k <= 10; ++k) config.eps_list.push_back(std::pow(2.0, -k));
    config.checks = {"classical-bound", "term-bounds", "layer-decay",
                     "remainder",       "oracle",      "inequalities"};
    config.tolerances.jobs = 2;
    config.output_dir = (dir.path / "out").string();
    std::ostringstream log;
    CHECK(sprd::run_command(sprd::Command::Verify, config, log) == 0);
    const std::string report = slurp(fs::path(config.output_dir) / "report.txt");
    CHECK(report.find("overall: PASS") != std::string::npos);
    for (const char* name : {"classical-bound", "term-bounds", "layer-decay", "remainder",
                             "oracle", "inequalities"})
        CHECK(fs::exists(fs::path(config.output_dir) / ("check_" + std::string(name) + ".csv")));
}

TEST_CASE("command names") {
    CHECK(sprd::command_from_name("solve") == sprd::Command::Solve);
    CHECK(sprd::command_from_name("oracle-check") == sprd::Command::OracleCheck);
    CHECK_FALSE(sprd::command_from_name("fly").has_value());
}
