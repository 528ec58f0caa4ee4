#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace sprd {

/// Gauss-Legendre rule on [-1, 1]. Nodes ascending, weights positive.
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Returns the n-point Gauss-Legendre rule (cached, thread-safe).
const GaussRule& gauss_legendre(int n);

/// Least-squares fit y = intercept + slope * x.
struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
};

LinearFit fit_line(std::span<const double> x, std::span<const double> y);

/// log(exp(a) + exp(b)) without overflow.
double log_add(double a, double b);

/// Composite trapezoid L2 norm of samples on an arbitrary ascending grid.
double grid_l2_norm(std::span<const double> grid, std::span<const double> values);

} // namespace sprd
