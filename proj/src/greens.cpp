#include "sprd/greens.hpp"

#include "sprd/errors.hpp"
#include "sprd/numerics.hpp"

#include <cmath>

namespace sprd {

double greens_kernel(double x, double xi, double kappa) {
    if (x < 0.0 || xi < 0.0) throw DomainError("greens_kernel: arguments must be nonnegative");
    if (!(kappa > 0.0)) throw DomainError("greens_kernel: kappa must be positive");
    const double lambda = kappa * kappa;
    const double scale = 1.0 / (2.0 * kappa * lambda);
    if (x > xi) {
        // (2 - e^{kappa xi} - e^{-kappa xi}) e^{-kappa x} / (2 kappa lambda),
        // with the growing factor folded into e^{-kappa(x - xi)}.
        return scale * (2.0 * std::exp(-kappa * x) - std::exp(-kappa * (x - xi)) -
                        std::exp(-kappa * (x + xi)));
    }
    // x < xi branch: -xi/lambda + x/lambda - e^{-kappa(xi-x)}/(2 kappa lambda)
    //               + (2 - e^{-kappa xi}) e^{-kappa x}/(2 kappa lambda)
    return (x - xi) / lambda - scale * std::exp(-kappa * (xi - x)) +
           scale * (2.0 - std::exp(-kappa * xi)) * std::exp(-kappa * x);
}

void HalfLineProblem::validate() const {
    if (!(kappa > 0.0)) throw DomainError("HalfLineProblem: kappa must be positive");
    if (std::abs(lambda - kappa * kappa) > 1e-14 * std::max(1.0, kappa * kappa))
        throw DomainError("HalfLineProblem: lambda must equal kappa^2");
    if (!F) throw DomainError("HalfLineProblem: missing forcing");
    // Sampled decay test: |F(s)| e^{kappa s} must stay under a polynomial
    // envelope, i.e. its growth between s and 2s is at most polynomial.
    double previous = 0.0;
    for (double s : {8.0, 16.0, 32.0}) {
        const double weighted = std::abs(F(s / kappa)) * std::exp(s);
        if (previous > 0.0 && weighted > previous * std::pow(2.0, 64.0))
            throw DomainError("HalfLineProblem: forcing decays slower than e^{-kappa s}");
        previous = std::max(previous, weighted);
    }
}

namespace {

struct PanelIntegrator {
    const QuadratureConfig& quad;
    double achieved = 0.0;

    double integrate(const std::function<double(double)>& f, double a, double b, int depth) {
        const GaussRule& coarse = gauss_legendre(quad.panel_points);
        const GaussRule& fine = gauss_legendre(2 * quad.panel_points);
        const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
        double coarse_sum = 0.0, fine_sum = 0.0;
        for (int i = 0; i < quad.panel_points; ++i)
            coarse_sum += coarse.weights[i] * f(mid + half * coarse.nodes[i]);
        for (int i = 0; i < 2 * quad.panel_points; ++i)
            fine_sum += fine.weights[i] * f(mid + half * fine.nodes[i]);
        coarse_sum *= half;
        fine_sum *= half;
        const double err = std::abs(fine_sum - coarse_sum);
        // Second test: an absolute per-panel floor, so panels whose error
        // estimate sits at the integrand's rounding level stop subdividing.
        if (err <= quad.tol * 0.5 * (1.0 + std::abs(fine_sum)) ||
            err <= quad.abs_tol / 1024.0 || depth >= quad.max_depth) {
            achieved += err;
            return fine_sum;
        }
        return integrate(f, a, mid, depth + 1) + integrate(f, mid, b, depth + 1);
    }
};

} // namespace

double solve_halfline(const HalfLineProblem& problem, double x, const QuadratureConfig& quad) {
    if (x < 0.0) throw DomainError("solve_halfline: x must be nonnegative");
    problem.validate();
    const double kappa = problem.kappa;
    const double lambda = kappa * kappa;

    // Truncation point: e^{-kappa(T - x)} T^m below tolerance.
    double T = x + quad.tail_exponent / kappa;
    for (int pass = 0; pass < 3; ++pass)
        T = x + (quad.tail_exponent +
                 (problem.poly_degree_hint + 1) * std::log(std::max(T, M_E))) /
                    kappa;

    PanelIntegrator integ{quad};
    const auto& F = problem.F;
    // z-independent integrals
    const double I1 = integ.integrate(F, 0.0, T, 0);
    const double I2 = integ.integrate([&](double u) { return std::exp(-kappa * u) * F(u); },
                                      0.0, T, 0);
    // z-dependent integrals
    const double I3 = x == 0.0 ? 0.0
                               : integ.integrate([&](double u) { return std::exp(-kappa * (x - u)) * F(u); },
                                                 0.0, x, 0);
    const double I4 = integ.integrate([&](double u) { return u * F(u); }, x, T, 0);
    const double I5 = integ.integrate(F, x, T, 0);
    const double I6 = integ.integrate([&](double t) { return std::exp(-kappa * t) * F(x + t); },
                                      0.0, T - x, 0);

    const double decay = std::exp(-kappa * x);
    const double value = (kappa / (lambda * lambda)) * I1 * decay -
                         (kappa / (2.0 * lambda * lambda)) * I2 * decay -
                         (kappa / (2.0 * lambda * lambda)) * I3 - I4 / lambda + x * I5 / lambda -
                         (kappa / (2.0 * lambda * lambda)) * I6 - (problem.g1 / kappa) * decay;

    if (integ.achieved > 64.0 * quad.tol * (1.0 + std::abs(value)) &&
        integ.achieved > quad.abs_tol)
        throw AccuracyError("solve_halfline: quadrature did not converge", integ.achieved);
    return value;
}

} // namespace sprd
