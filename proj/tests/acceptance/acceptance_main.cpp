// Acceptance suite: one criterion per function, one PASS/FAIL line each.
// Run with no arguments for the full suite or with a criterion number.

#include "sprd/decomposition.hpp"
#include "sprd/fem.hpp"
#include "sprd/numerics.hpp"
#include "sprd/outer.hpp"
#include "sprd/verifier.hpp"
#include "test_support.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <string>
#include <vector>

using sprd::AnalyticFunction1D;
using sprd::CheckRecord;
using F = AnalyticFunction1D;

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string fmt(double value) {
    char buffer[32];
    std::snprintf(buffer, sizeof buffer, "%.3g", value);
    return buffer;
}

sprd::Problem corpus_oracle(double eps) {
    return sprd::make_problem(F::parse("2 + sin(x)"), F::constant(1.0), F::parse("exp(x)"), eps);
}

sprd::Problem corpus_steep(double eps) {
    return sprd::make_problem(F::parse("1.2 + 8*x"), F::constant(1.0), F::parse("exp(x)"), eps);
}

sprd::Decomposition admissible_build(const sprd::Problem& problem, int M) {
    const auto constants = sprd::fit_bound_constants(problem);
    sprd::Problem shrunk = problem;
    shrunk.eps = std::min(
        shrunk.eps, 0.4 / (constants.a * constants.a * M_E * constants.gamma_star * (M + 1)));
    return sprd::Decomposition::build(shrunk, M, constants);
}

// 1. Reference solver vs the characteristic-root closed form at p = 10.
bool criterion_1(std::string& note) {
    bool ok = true;
    for (double eps : {0.1, 0.01}) {
        const auto problem =
            sprd::make_problem(F::constant(1.0), F::constant(1.0), F::constant(1.0), eps);
        const auto start = std::chrono::steady_clock::now();
        const auto mesh = sprd::build_layer_mesh(eps, 10, 2.0, 3, 0.4);
        const auto u = sprd::solve_reference(problem, mesh, 10);
        const double elapsed = seconds_since(start);
        const sprd::testing::ConstantCoeffSolution exact(eps, 1.0, 1.0, 1.0);
        double worst = 0.0;
        for (int i = 0; i <= 100; ++i) {
            const double x = i / 100.0;
            worst = std::max(worst, std::abs(u.value(x) - exact.value(x)));
        }
        note += "eps=" + fmt(eps) + " max_err=" + fmt(worst) + " (" + fmt(elapsed) + " s); ";
        ok = ok && worst <= 1e-8 && elapsed <= 1.0;
    }
    return ok;
}

// 2. Layer terms j <= 6 against the half-line quadrature solver.
bool criterion_2(std::string& note) {
    const auto start = std::chrono::steady_clock::now();
    const auto record = sprd::check_oracle_agreement(corpus_oracle(0.01));
    const double elapsed = seconds_since(start);
    double worst = 1.0;
    for (const auto& [name, value] : record.fitted)
        if (name == "max_difference") worst = value;
    note = "max |symbolic - quadrature| = " + fmt(worst) + " over 61 samples x 12 terms (" +
           fmt(elapsed) + " s)";
    return record.status == CheckRecord::Status::Pass && worst <= 1e-8 && elapsed <= 10.0;
}

// 3. Remainder decay over eps = 2^-k, k = 4..10.
bool criterion_3(std::string& note) {
    const auto start = std::chrono::steady_clock::now();
    std::vector<double> grid;
    for (int k = 4; k <= 10; ++k) grid.push_back(std::pow(2.0, -k));
    sprd::VerifierOptions options;
    options.jobs = 2;
    const auto record = sprd::check_remainder(corpus_steep(0.01), grid, options);
    const double elapsed = seconds_since(start);
    double slope = 0.0, r2 = 0.0, points = 0.0;
    for (const auto& [name, value] : record.fitted) {
        if (name == "slope") slope = value;
        if (name == "r_squared") r2 = value;
        if (name == "points_used") points = value;
    }
    note = "slope=" + fmt(slope) + " r2=" + fmt(r2) + " points=" +
           std::to_string(static_cast<int>(points)) + " (" + fmt(elapsed) + " s)";
    return record.status == CheckRecord::Status::Pass && slope < 0.0 && r2 >= 0.98 &&
           elapsed <= 120.0;
}

// 4. First layer term equals its closed form coefficient-wise.
bool criterion_4(std::string& note) {
    const auto problem = corpus_oracle(0.01);
    const auto d = admissible_build(problem, 1);
    const double kappa = std::sqrt(problem.alpha.eval(0.0));
    const double slope = sprd::endpoint_derivative(d.outer()[0], 0);
    const auto& poly = d.left_terms()[1].poly();
    const double expected = slope / kappa;
    double gap = std::abs(poly[0] - expected);
    for (std::size_t k = 1; k < poly.size(); ++k) gap = std::max(gap, std::abs(poly[k]));
    note = "coefficient gap = " + fmt(gap);
    return d.left_terms()[1].degree() == 0 && gap <= 1e-10;
}

// 5. Exact degree envelope for every built layer term.
bool criterion_5(std::string& note) {
    int checked = 0;
    for (const auto& problem : {corpus_oracle(0.01), corpus_steep(0.01),
                                sprd::make_problem(F::constant(1.0), F::constant(1.0),
                                                   F::constant(1.0), 0.01)}) {
        const auto d = admissible_build(problem, 5);
        for (int j = 1; j <= d.M() + 1; ++j) {
            if (d.left_terms()[j].degree() > 2 * (j - 1)) return false;
            if (d.right_terms()[j].degree() > 2 * (j - 1)) return false;
            checked += 2;
        }
    }
    note = std::to_string(checked) + " terms within deg <= 2(j-1)";
    return checked > 0;
}

// 6. Derivative-profile shape: stable fitted K and a monotone crossover.
bool criterion_6(std::string& note) {
    const std::vector<double> eps_grid = {1e-2, 1e-3, 1e-4};
    const auto record = sprd::check_classical_bound(corpus_oracle(0.01), eps_grid);
    double spread = 0.0;
    std::vector<double> crossovers;
    for (const auto& [name, value] : record.fitted) {
        if (name == "K_spread") spread = value;
        if (name.rfind("crossover", 0) == 0) crossovers.push_back(value);
    }
    bool monotone = crossovers.size() == 3 && crossovers[1] <= crossovers[0] &&
                    crossovers[2] <= crossovers[1];
    note = "K spread=" + fmt(spread) + " crossovers=";
    for (double c : crossovers) note += std::to_string(static_cast<int>(c)) + " ";
    return record.status == CheckRecord::Status::Pass && spread <= 4.0 && monotone;
}

// 7. Layer decay exponents: >= kappa/2 and within 1e-6 of kappa.
bool criterion_7(std::string& note) {
    int rows = 0;
    for (const auto& problem :
         {corpus_oracle(0.01),
          sprd::make_problem(F::parse("4 + x"), F::constant(1.0), F::constant(1.0), 0.01)}) {
        const auto d = admissible_build(problem, 4);
        const auto record = sprd::check_layer_decay(d, 4);
        if (record.status != CheckRecord::Status::Pass) {
            note = record.detail;
            return false;
        }
        for (const auto& row : record.rows) {
            if (row[4] == -HUGE_VAL) continue;
            const double kappa = row[0] == 0.0 ? d.kappa_left() : d.kappa_right();
            if (std::abs(row[3] - kappa) > 1e-6 || row[3] < kappa / 2.0) return false;
            ++rows;
        }
    }
    note = std::to_string(rows) + " (term, order) decay exponents checked";
    return rows > 0;
}

// 8. hp energy convergence at eps = 1e-4 on the minimal layer mesh.
bool criterion_8(std::string& note) {
    const auto start = std::chrono::steady_clock::now();
    const double eps = 1e-4;
    const auto problem =
        sprd::make_problem(F::constant(1.0), F::constant(1.0), F::constant(1.0), eps);
    const sprd::testing::ConstantCoeffSolution exact(eps, 1.0, 1.0, 1.0);
    std::vector<double> degrees, log_errors;
    for (int p = 3; p <= 12; ++p) {
        const auto mesh = sprd::build_layer_mesh(eps, p, 3.0);
        const auto u = sprd::solve_reference(problem, mesh, p, false);
        const double energy = sprd::energy_error(
            u, problem, [&exact](double x) { return exact.value(x); },
            [&exact](double x) { return exact.deriv(x); },
            [&exact](double x) { return exact.second(x); });
        degrees.push_back(p);
        log_errors.push_back(std::log(energy));
    }
    const auto fit = sprd::fit_line(degrees, log_errors);
    const double elapsed = seconds_since(start);
    note = "slope=" + fmt(fit.slope) + " r2=" + fmt(fit.r_squared) + " (" + fmt(elapsed) + " s)";
    return fit.slope < 0.0 && fit.r_squared >= 0.95 && elapsed <= 60.0;
}

// 9. Weighted-power sup bound: random samples and equality cases.
bool criterion_9(std::string& note) {
    const auto record = sprd::check_inequalities(1000);
    const auto first = sprd::sup_weighted_power(1, 4.0);
    const auto second = sprd::sup_weighted_power(2, 2.0);
    const double gap = std::max(std::abs(first.numeric_sup - first.closed_form),
                                std::abs(second.numeric_sup - second.closed_form) /
                                    second.closed_form);
    note = "equality-case gap = " + fmt(gap);
    return record.status == CheckRecord::Status::Pass && gap <= 1e-12;
}

// 10. Defect identity of the outer expansion.
bool criterion_10(std::string& note) {
    const auto problem = corpus_oracle(1e-3);
    const int M = 4;
    const auto d = admissible_build(problem, M);
    const double eps = d.eps();
    const auto s0 = d.smooth_series(0), s1 = d.smooth_series(1), s2 = d.smooth_series(2),
               s4 = d.smooth_series(4);
    const auto u3_4 = d.outer()[M - 1].derivative(4);
    const auto u4_4 = d.outer()[M].derivative(4);
    const double wM = std::pow(eps, M + 1), wM1 = std::pow(eps, M + 2);
    double worst = 0.0, scale = 0.0;
    for (int i = 0; i < 200; ++i) {
        const double x = (i + 0.5) / 200.0;
        const auto alpha = problem.alpha.taylor_coeffs(x, 1);
        const double lhs = eps * eps * s4.eval(x) - alpha[0] * s2.eval(x) -
                           alpha[1] * s1.eval(x) + problem.beta.eval(x) * s0.eval(x);
        const double f_val = problem.f.eval(x);
        const double tail = wM * u3_4.eval(x) + wM1 * u4_4.eval(x);
        worst = std::max(worst, std::abs(lhs - f_val - tail));
        scale = std::max({scale, std::abs(f_val), std::abs(lhs), std::abs(tail)});
    }
    note = "defect = " + fmt(worst) + " vs scale " + fmt(scale);
    return worst <= 1e-6 * scale;
}

struct Criterion {
    int number;
    const char* title;
    bool (*fn)(std::string&);
};

const Criterion kCriteria[] = {
    {1, "constant-coefficient solver exactness", criterion_1},
    {2, "layer terms vs quadrature oracle", criterion_2},
    {3, "remainder decay in 1/eps", criterion_3},
    {4, "first layer term closed form", criterion_4},
    {5, "layer polynomial degree envelope", criterion_5},
    {6, "derivative-profile shape and crossover", criterion_6},
    {7, "layer decay rates", criterion_7},
    {8, "hp energy convergence", criterion_8},
    {9, "weighted-power sup bound", criterion_9},
    {10, "outer-expansion defect identity", criterion_10},
};

} // namespace

int main(int argc, char** argv) {
    int selected = 0;
    if (argc > 1) selected = std::atoi(argv[1]);
    int failures = 0;
    for (const Criterion& criterion : kCriteria) {
        if (selected != 0 && criterion.number != selected) continue;
        std::string note;
        bool ok = false;
        try {
            ok = criterion.fn(note);
        } catch (const std::exception& error) {
            note = std::string("exception: ") + error.what();
        }
        std::printf("[%s] %2d. %s%s%s\n", ok ? "PASS" : "FAIL", criterion.number,
                    criterion.title, note.empty() ? "" : " -- ", note.c_str());
        if (!ok) ++failures;
    }
    return failures;
}
