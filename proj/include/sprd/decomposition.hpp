#pragma once

#include "sprd/chebyshev.hpp"
#include "sprd/fem.hpp"
#include "sprd/layer.hpp"
#include "sprd/problem.hpp"

#include <iosfwd>
#include <span>
#include <vector>

namespace sprd {

/// Constants controlling the expansion order selection. `a` and gamma_star
/// are floored at the values the data admits (3/min sqrt(alpha) at the
/// endpoints, the largest fitted gamma of the coefficient data); q is the
/// derived decay rate 1/(gamma_star a^2 e^2).
struct BoundConstants {
    double a = 1.0;
    double gamma_star = 1.0;
    double K = 1.0;
    double q = 0.0;
    double C = 1.0;
};

BoundConstants fit_bound_constants(const Problem& problem, int orders = 10, int samples = 64);

struct MSelection {
    int M = 0;
    bool degenerate = false;
};

/// M = floor(q / eps) - 1; degenerate when even M = 0 is inadmissible.
/// In the admissible case a^2 gamma_star e eps (M+1) <= 1/e by construction.
MSelection choose_M(double eps, const BoundConstants& constants);

struct ExpansionParts {
    double smooth = 0.0;
    double left = 0.0;
    double right = 0.0;
};

struct BuildOptions {
    BvpOptions bvp;
    /// Layer coefficient recursions switch to extended precision above this index.
    int extended_precision_above = 12;
    /// Skip the admissibility check (diagnostic builds only).
    bool allow_inadmissible = false;
};

/// The truncated two-scale expansion: outer terms U_0..U_M as Chebyshev
/// series, layer terms 0..M+1 on both sides in their stretched variables.
/// The recursion interleaves: U_j needs the layer values at index j, layer
/// terms at index j+1 need U_j's endpoint slopes.
class Decomposition {
public:
    static Decomposition build(const Problem& problem, int M, const BoundConstants& constants,
                               const BuildOptions& options = {});

    int M() const { return M_; }
    double eps() const { return eps_; }
    const BoundConstants& constants() const { return constants_; }
    double kappa_left() const { return kappa_left_; }
    double kappa_right() const { return kappa_right_; }
    const std::vector<ChebSeries>& outer() const { return outer_; }
    const std::vector<PolyExp>& left_terms() const { return left_; }
    const std::vector<PolyExp>& right_terms() const { return right_; }

    /// sum_j eps^j U_j^{(n)} as a single series.
    ChebSeries smooth_series(int n) const;
    /// sum_j eps^{j-n} d^n/ds^n of the left terms; evaluate at s = x/eps.
    PolyExp left_series(int n) const;
    /// Same on the right; evaluate at s = (1-x)/eps. The sign (-1)^n of the
    /// chain rule d/dx = -eps^{-1} d/ds is already folded in.
    PolyExp right_series(int n) const;

    /// n-th physical derivative of the three expansion pieces at x.
    ExpansionParts eval(double x, int n) const;
    double total(double x, int n = 0) const;

private:
    double eps_ = 0.0;
    int M_ = 0;
    double kappa_left_ = 1.0, kappa_right_ = 1.0;
    BoundConstants constants_;
    std::vector<ChebSeries> outer_;
    std::vector<PolyExp> left_, right_;
};

/// Expansion boundary data: since u and u' vanish at both endpoints, the
/// remainder traces are minus the expansion traces and need no reference
/// solution.
struct BoundaryRemainder {
    double value_left, value_right, slope_left, slope_right;
    double total() const;
};
BoundaryRemainder boundary_remainder(const Decomposition& d);

struct RemainderStats {
    std::vector<double> values;
    double max_norm = 0.0;
    double l2_norm = 0.0;
    double slope_l2_norm = 0.0; // of the remainder derivative
};

/// Pointwise u_ref - expansion over the grid. When expected_size > 0 the
/// reference error estimate must be at most a tenth of it, otherwise a
/// PrecisionError is thrown.
RemainderStats remainder(const Decomposition& d, const DiscreteSolution& reference,
                         std::span<const double> grid, double expected_size = 0.0);

/// Measurement grid: uniform points plus geometric refinement into both layers.
std::vector<double> remainder_grid(double eps, int uniform_points = 201, int layer_points = 48);

/// Taylor coefficients of f at the endpoint, expressed in the matching
/// stretched variable: s = x/eps on the left; on the right s = (1-x)/eps,
/// which alternates the sign of every odd coefficient.
std::vector<double> stretched_endpoint_taylor(const AnalyticFunction1D& f, Side side, int order);

/// One CSV row per term: kind, index, side, rate, then the coefficients
/// (Chebyshev for outer rows, stretched-variable polynomial for layer rows).
void dump_csv(const Decomposition& d, std::ostream& out);

} // namespace sprd
