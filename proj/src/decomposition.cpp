#include "sprd/decomposition.hpp"

#include "sprd/errors.hpp"
#include "sprd/numerics.hpp"
#include "sprd/outer.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

namespace sprd {

BoundConstants fit_bound_constants(const Problem& problem, int orders, int samples) {
    const AnalyticityReport alpha_report = validate_analyticity(problem.alpha, orders, samples);
    const AnalyticityReport alpha_prime_report =
        validate_analyticity(problem.alpha, orders, samples, 1);
    const AnalyticityReport beta_report = validate_analyticity(problem.beta, orders, samples);
    const AnalyticityReport f_report = validate_analyticity(problem.f, orders, samples);

    const double kappa_min =
        std::sqrt(std::min(problem.alpha.eval(0.0), problem.alpha.eval(1.0)));
    BoundConstants constants;
    constants.a = std::max(1.0, 3.0 / kappa_min);
    constants.gamma_star = std::max(
        {1.0, alpha_report.gamma_fit, alpha_prime_report.gamma_fit, beta_report.gamma_fit});
    constants.K = std::max(1.0, M_E * f_report.gamma_fit);
    constants.q = 1.0 / (constants.gamma_star * constants.a * constants.a * M_E * M_E);
    constants.C = 1.0;
    return constants;
}

MSelection choose_M(double eps, const BoundConstants& constants) {
    if (!(eps > 0.0)) throw DomainError("choose_M: eps must be positive");
    const double ratio = constants.q / eps;
    const int whole = static_cast<int>(std::floor(ratio + 1e-12));
    if (whole < 1) return {0, true};
    return {whole - 1, false};
}

Decomposition Decomposition::build(const Problem& problem, int M, const BoundConstants& constants,
                                   const BuildOptions& options) {
    if (M < 0) throw DomainError("Decomposition::build: M must be nonnegative");
    const double admissibility =
        constants.a * constants.a * M_E * constants.gamma_star * problem.eps * (M + 1);
    if (admissibility >= 1.0 && !options.allow_inadmissible)
        throw DomainError("Decomposition::build: eps too large for this expansion order");

    Decomposition d;
    d.eps_ = problem.eps;
    d.M_ = M;
    d.constants_ = constants;
    d.kappa_left_ = std::sqrt(problem.alpha.eval(0.0));
    d.kappa_right_ = std::sqrt(problem.alpha.eval(1.0));

    const int taylor_order = std::min(problem.alpha.order_cap(), M + 3);
    const std::vector<double> alpha_left =
        stretched_endpoint_taylor(problem.alpha, Side::Left, taylor_order);
    const std::vector<double> beta_left =
        stretched_endpoint_taylor(problem.beta, Side::Left, taylor_order);
    const std::vector<double> alpha_right =
        stretched_endpoint_taylor(problem.alpha, Side::Right, taylor_order);
    const std::vector<double> beta_right =
        stretched_endpoint_taylor(problem.beta, Side::Right, taylor_order);

    d.left_.emplace_back(d.kappa_left_);
    d.right_.emplace_back(d.kappa_right_);
    d.outer_.reserve(static_cast<std::size_t>(M) + 1);

    for (int j = 0; j <= M; ++j) {
        const double bc_left = (j == 0) ? 0.0 : -d.left_[static_cast<std::size_t>(j)].eval(0.0);
        const double bc_right = (j == 0) ? 0.0 : -d.right_[static_cast<std::size_t>(j)].eval(0.0);
        d.outer_.push_back(outer_term(j, d.outer_, problem.alpha, problem.beta, problem.f,
                                      bc_left, bc_right, options.bvp));

        // Layer terms of index j+1 need exactly U_j's endpoint slopes. The
        // derivative data live in the stretched variables: on the right,
        // d/dx = -eps^{-1} d/ds flips the sign relative to the left side.
        const bool extended = (j + 1) > options.extended_precision_above;
        const double slope_left = endpoint_derivative(d.outer_.back(), 0);
        const double slope_right = endpoint_derivative(d.outer_.back(), 1);
        const PolyExp rhs_left = assemble_layer_rhs(j + 1, d.left_, alpha_left, beta_left);
        const PolyExp rhs_right = assemble_layer_rhs(j + 1, d.right_, alpha_right, beta_right);
        d.left_.push_back(solve_layer_ode(rhs_left, -slope_left, d.kappa_left_, extended));
        d.right_.push_back(solve_layer_ode(rhs_right, slope_right, d.kappa_right_, extended));
    }
    return d;
}

ChebSeries Decomposition::smooth_series(int n) const {
    ChebSeries sum;
    double weight = 1.0;
    for (const ChebSeries& term : outer_) {
        ChebSeries d = term.derivative(n);
        d *= weight;
        sum += d;
        weight *= eps_;
    }
    return sum;
}

PolyExp Decomposition::left_series(int n) const {
    PolyExp sum(kappa_left_);
    double weight = std::pow(eps_, -n);
    for (const PolyExp& term : left_) {
        sum.add_scaled(term.derivative(n), weight);
        weight *= eps_;
    }
    return sum;
}

PolyExp Decomposition::right_series(int n) const {
    PolyExp sum(kappa_right_);
    const double sign = (n % 2 == 0) ? 1.0 : -1.0;
    double weight = sign * std::pow(eps_, -n);
    for (const PolyExp& term : right_) {
        sum.add_scaled(term.derivative(n), weight);
        weight *= eps_;
    }
    return sum;
}

ExpansionParts Decomposition::eval(double x, int n) const {
    ExpansionParts parts;
    parts.smooth = smooth_series(n).eval(x);
    parts.left = left_series(n).eval(x / eps_);
    parts.right = right_series(n).eval((1.0 - x) / eps_);
    return parts;
}

double Decomposition::total(double x, int n) const {
    const ExpansionParts parts = eval(x, n);
    return parts.smooth + parts.left + parts.right;
}

double BoundaryRemainder::total() const {
    return std::abs(value_left) + std::abs(value_right) + std::abs(slope_left) +
           std::abs(slope_right);
}

BoundaryRemainder boundary_remainder(const Decomposition& d) {
    // u(0) = u'(0) = u(1) = u'(1) = 0, so the remainder traces are minus the
    // expansion traces; no reference solve enters.
    return BoundaryRemainder{-d.total(0.0, 0), -d.total(1.0, 0), -d.total(0.0, 1),
                             -d.total(1.0, 1)};
}

RemainderStats remainder(const Decomposition& d, const DiscreteSolution& reference,
                         std::span<const double> grid, double expected_size) {
    if (expected_size > 0.0 && reference.error_estimate() > expected_size / 10.0)
        throw PrecisionError("remainder: reference accuracy is insufficient for the expected size");
    RemainderStats stats;
    stats.values.reserve(grid.size());
    const ChebSeries smooth0 = d.smooth_series(0), smooth1 = d.smooth_series(1);
    const PolyExp left0 = d.left_series(0), left1 = d.left_series(1);
    const PolyExp right0 = d.right_series(0), right1 = d.right_series(1);
    std::vector<double> slopes;
    slopes.reserve(grid.size());
    for (double x : grid) {
        const double expansion =
            smooth0.eval(x) + left0.eval(x / d.eps()) + right0.eval((1.0 - x) / d.eps());
        const double value = reference.value(x) - expansion;
        stats.values.push_back(value);
        stats.max_norm = std::max(stats.max_norm, std::abs(value));
        const double expansion_slope =
            smooth1.eval(x) + left1.eval(x / d.eps()) + right1.eval((1.0 - x) / d.eps());
        slopes.push_back(reference.deriv(x) - expansion_slope);
    }
    stats.l2_norm = grid_l2_norm(grid, stats.values);
    stats.slope_l2_norm = grid_l2_norm(grid, slopes);
    return stats;
}

std::vector<double> stretched_endpoint_taylor(const AnalyticFunction1D& f, Side side,
                                              int order) {
    std::vector<double> coeffs = f.taylor_coeffs(side == Side::Left ? 0.0 : 1.0, order);
    if (side == Side::Right)
        for (std::size_t k = 1; k < coeffs.size(); k += 2) coeffs[k] = -coeffs[k];
    return coeffs;
}

std::vector<double> remainder_grid(double eps, int uniform_points, int layer_points) {
    std::vector<double> grid;
    grid.reserve(static_cast<std::size_t>(uniform_points + 2 * layer_points));
    for (int i = 0; i < uniform_points; ++i)
        grid.push_back(static_cast<double>(i) / (uniform_points - 1));
    // Geometric refinement into both layers down to the eps/8 scale.
    for (int i = 0; i < layer_points; ++i) {
        const double s = 40.0 * eps * std::pow(0.85, i) + eps / 8.0;
        if (s < 0.5) {
            grid.push_back(s);
            grid.push_back(1.0 - s);
        }
    }
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    return grid;
}

void dump_csv(const Decomposition& d, std::ostream& out) {
    out << "kind,j,side,rate_or_degree,coefficients...\n";
    char buffer[32];
    const auto emit = [&](double v) {
        std::snprintf(buffer, sizeof buffer, "%.17g", v);
        out << ',' << buffer;
    };
    for (std::size_t j = 0; j < d.outer().size(); ++j) {
        out << "outer," << j << ",-," << d.outer()[j].degree();
        for (double c : d.outer()[j].coeffs()) emit(c);
        out << '\n';
    }
    const auto layer_rows = [&](const std::vector<PolyExp>& terms, const char* side) {
        for (std::size_t j = 0; j < terms.size(); ++j) {
            out << "layer," << j << ',' << side;
            std::snprintf(buffer, sizeof buffer, "%.17g", terms[j].kappa());
            out << ',' << buffer;
            for (double c : terms[j].poly()) emit(c);
            out << '\n';
        }
    };
    layer_rows(d.left_terms(), "L");
    layer_rows(d.right_terms(), "R");
}

} // namespace sprd
