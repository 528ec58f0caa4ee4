#pragma once

#include <functional>

namespace sprd {

/// Two-branch kernel of w'''' - kappa^2 w'' = delta(x - xi) on the half line
/// with decay at infinity, evaluated with exponent differences combined
/// before exponentiation so large arguments cannot overflow.
double greens_kernel(double x, double xi, double kappa);

struct QuadratureConfig {
    double tol = 1e-12;
    /// Accumulated error accepted regardless of the value's own size
    /// (callers comparing against an absolute tolerance set this; 0 disables).
    double abs_tol = 0.0;
    int panel_points = 20;
    int max_depth = 24;
    /// Truncation exponent: the tail cut T satisfies kappa*T >= tail_exponent
    /// plus a polynomial-growth correction.
    double tail_exponent = 40.0;
};

/// w'''' - lambda w'' = F on (0, inf), w'(0) = g1, w -> 0, lambda = kappa^2.
struct HalfLineProblem {
    std::function<double(double)> F;
    double g1 = 0.0;
    double kappa = 1.0;
    double lambda = 1.0;
    /// Polynomial degree of F's envelope, used for the truncation bound.
    int poly_degree_hint = 0;

    void validate() const; // lambda == kappa^2, decay of F by sampling
};

/// Evaluates the explicit solution formula (six forcing integrals plus the
/// homogeneous mode fitted to g1) with adaptive Gauss-Legendre panels.
/// Throws AccuracyError when the requested tolerance is not reached.
double solve_halfline(const HalfLineProblem& problem, double x,
                      const QuadratureConfig& quad = {});

} // namespace sprd
