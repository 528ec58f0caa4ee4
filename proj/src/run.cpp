#include "sprd/run.hpp"

#include "sprd/decomposition.hpp"
#include "sprd/errors.hpp"
#include "sprd/svg.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>

namespace sprd {

namespace {

int log_level() {
    const char* env = std::getenv("SPRD_LOG_LEVEL");
    return env ? std::atoi(env) : 1;
}

std::string fmt(double v) {
    char buffer[32];
    std::snprintf(buffer, sizeof buffer, "%.17g", v);
    return buffer;
}

std::string fmt_short(double v) {
    char buffer[32];
    std::snprintf(buffer, sizeof buffer, "%.6g", v);
    return buffer;
}

std::ofstream open_output(const RunConfig& config, const std::string& name) {
    namespace fs = std::filesystem;
    fs::create_directories(config.output_dir);
    const fs::path path = fs::path(config.output_dir) / name;
    std::ofstream out(path, std::ios::binary); // fixed newline policy for diffability
    if (!out) throw Error("cannot open output file " + path.string());
    return out;
}

Problem problem_at(const RunConfig& config, double eps) {
    return make_problem(AnalyticFunction1D::parse(config.alpha_expr),
                        AnalyticFunction1D::parse(config.beta_expr),
                        AnalyticFunction1D::parse(config.f_expr), eps);
}

int run_solve(const RunConfig& config, std::ostream& log) {
    const int p = config.degrees.back();
    for (double eps : config.eps_list) {
        const Problem problem = problem_at(config, eps);
        const LayerMesh mesh =
            build_layer_mesh(eps, p, config.tolerances.reference_lambda0,
                             config.tolerances.reference_layers, config.tolerances.reference_grading);
        const DiscreteSolution u = solve_reference(problem, mesh, p);
        std::ofstream out = open_output(config, "solution_eps" + fmt_short(eps) + ".csv");
        out << "x,u,du,d2u\n";
        for (int i = 0; i < config.sample_points; ++i) {
            const double x = static_cast<double>(i) / (config.sample_points - 1);
            out << fmt(x) << ',' << fmt(u.value(x)) << ',' << fmt(u.deriv(x)) << ','
                << fmt(u.second(x)) << '\n';
        }
        if (log_level() >= 1)
            log << "solved eps=" << fmt_short(eps) << " p=" << p
                << " estimate=" << fmt_short(u.error_estimate()) << '\n';
    }
    return 0;
}

int run_expand(const RunConfig& config, std::ostream& log) {
    const Problem data = problem_at(config, config.eps_list.front());
    const BoundConstants constants = fit_bound_constants(data);
    for (double eps : config.eps_list) {
        int M;
        if (config.M_override) {
            M = *config.M_override;
        } else {
            const MSelection selection = choose_M(eps, constants);
            if (selection.degenerate) {
                log << "eps=" << fmt_short(eps) << ": degenerate regime, expansion skipped\n";
                continue;
            }
            M = selection.M;
        }
        Problem problem = data;
        problem.eps = eps;
        const Decomposition d = Decomposition::build(problem, M, constants);
        std::ofstream out = open_output(config, "decomposition_eps" + fmt_short(eps) + ".csv");
        dump_csv(d, out);
        if (log_level() >= 1) log << "expanded eps=" << fmt_short(eps) << " M=" << M << '\n';
    }
    return 0;
}

int write_verification(const RunConfig& config, std::ostream& log,
                       VerificationReport* report_out) {
    const Problem data = problem_at(config, config.eps_list.front());
    const VerificationReport report =
        run_verification(data, config.eps_list, config.checks, config.tolerances);
    {
        std::ofstream out = open_output(config, "report.txt");
        write_report_text(report, out);
    }
    for (const CheckRecord& check : report.checks) {
        std::ofstream out = open_output(config, "check_" + check.name + ".csv");
        write_check_csv(check, out);
        log << '[' << (check.status == CheckRecord::Status::Pass      ? "PASS"
                       : check.status == CheckRecord::Status::Skipped ? "SKIPPED"
                       : check.status == CheckRecord::Status::Fail    ? "FAIL"
                                                                      : "INCONCLUSIVE")
            << "] " << check.name << '\n';
        if (!check.ok()) log << "failing check: " << check.name << ": " << check.detail << '\n';
    }
    if (report_out) *report_out = report;
    return report.overall_pass ? 0 : 1;
}

int run_sweep(const RunConfig& config, std::ostream& log) {
    VerificationReport report;
    const int status = write_verification(config, log, &report);

    // Convergence artifacts: remainder decay over the eps grid and the
    // hp energy study at the smallest eps.
    std::vector<std::pair<double, double>> remainder_points;
    for (const CheckRecord& check : report.checks)
        if (check.name == "remainder")
            for (const auto& row : check.rows)
                if (row.size() >= 11 && row[10] == 0.0 && row[3] > 0.0)
                    remainder_points.push_back({1.0 / row[0], row[3]});

    const double eps_min = *std::min_element(config.eps_list.begin(), config.eps_list.end());
    const Problem problem = problem_at(config, eps_min);
    const int p_best = config.degrees.back() + 2;
    const LayerMesh best_mesh =
        build_layer_mesh(eps_min, p_best, config.tolerances.reference_lambda0,
                         config.tolerances.reference_layers, config.tolerances.reference_grading);
    const DiscreteSolution best = solve_reference(problem, best_mesh, p_best, false);
    std::vector<std::pair<double, double>> energy_points;
    for (int p : config.degrees) {
        const LayerMesh mesh =
            build_layer_mesh(eps_min, p, config.tolerances.reference_lambda0,
                             config.tolerances.reference_layers, config.tolerances.reference_grading);
        const DiscreteSolution u = solve_reference(problem, mesh, p, false);
        const double error = energy_error(
            u, problem, [&best](double x) { return best.value(x); },
            [&best](double x) { return best.deriv(x); },
            [&best](double x) { return best.second(x); });
        energy_points.push_back({static_cast<double>(p), error});
    }

    {
        std::ofstream out = open_output(config, "convergence.csv");
        out << "kind,x,y\n";
        for (const auto& [x, y] : remainder_points)
            out << "remainder," << fmt(x) << ',' << fmt(y) << '\n';
        for (const auto& [x, y] : energy_points)
            out << "energy," << fmt(x) << ',' << fmt(y) << '\n';
    }
    {
        std::ofstream out = open_output(config, "remainder_vs_inveps.svg");
        write_line_plot(out, "remainder decay", "1/eps", "measured remainder",
                        {{"remainder", remainder_points}}, false, true);
    }
    {
        std::ofstream out = open_output(config, "energy_vs_p.svg");
        write_line_plot(out, "hp convergence at eps=" + fmt_short(eps_min), "degree p",
                        "energy error", {{"energy error", energy_points}}, false, true);
    }
    if (log_level() >= 1) log << "sweep artifacts written to " << config.output_dir << '\n';
    return status;
}

int run_oracle_check(const RunConfig& config, std::ostream& log) {
    const Problem data = problem_at(config, config.eps_list.front());
    const CheckRecord record = check_oracle_agreement(data, config.tolerances);
    log << "side  j  max |symbolic - quadrature|\n";
    for (const auto& row : record.rows)
        log << (row[0] == 0.0 ? "left" : "right") << " j=" << static_cast<int>(row[1]) << "  "
            << fmt_short(row[2]) << '\n';
    log << (record.status == CheckRecord::Status::Pass ? "agreement within tolerance\n"
                                                       : "DISAGREEMENT: " + record.detail + "\n");
    return record.status == CheckRecord::Status::Pass ? 0 : 1;
}

} // namespace

std::optional<Command> command_from_name(std::string_view name) {
    if (name == "solve") return Command::Solve;
    if (name == "expand") return Command::Expand;
    if (name == "verify") return Command::Verify;
    if (name == "sweep") return Command::Sweep;
    if (name == "oracle-check") return Command::OracleCheck;
    return std::nullopt;
}

int run_command(Command command, const RunConfig& config, std::ostream& log) {
    config.validate();
    switch (command) {
    case Command::Solve: return run_solve(config, log);
    case Command::Expand: return run_expand(config, log);
    case Command::Verify: return write_verification(config, log, nullptr);
    case Command::Sweep: return run_sweep(config, log);
    case Command::OracleCheck: return run_oracle_check(config, log);
    }
    throw Error("unknown command");
}

} // namespace sprd
