#pragma once

#include "sprd/analytic.hpp"

#include <functional>
#include <vector>

namespace sprd {

/// Polynomial in the Chebyshev basis T_k(2x - 1) on [0, 1].
///
/// Differentiation and evaluation act on the coefficient sequence directly;
/// the trailing-coefficient test certifies resolution of adaptive solves.
class ChebSeries {
public:
    ChebSeries() : coeffs_(1, 0.0) {}
    explicit ChebSeries(std::vector<double> coeffs);

    /// Interpolant of f at the degree+1 Chebyshev-Lobatto points of [0, 1].
    static ChebSeries interpolate(const std::function<double(double)>& f, int degree);

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    const std::vector<double>& coeffs() const { return coeffs_; }

    double eval(double x) const;
    ChebSeries derivative() const;
    ChebSeries derivative(int n) const;

    double max_abs_coeff() const;
    /// max(|c_{N-1}|, |c_N|) <= rtol * max|c_k|, the resolution certificate.
    bool resolved(double rtol = 1e-14) const;

    double value_at_zero() const;
    double value_at_one() const;

    ChebSeries& operator+=(const ChebSeries& other);
    ChebSeries& operator*=(double factor);

private:
    std::vector<double> coeffs_;
};

struct BvpOptions {
    int min_degree = 16;
    int max_degree = 512;
    double trailing_rtol = 1e-14;
};

/// Solves -(alpha w')' + beta w = g on [0, 1] with w(0) = g_left,
/// w(1) = g_right by Chebyshev collocation with a dense direct solve.
/// The degree doubles from min_degree until the trailing-coefficient test
/// passes; boundary rows are enforced exactly.
///
/// Throws SolverError on a singular collocation matrix and ResolutionError
/// when max_degree is reached without certification.
ChebSeries solve_second_order_bvp(const AnalyticFunction1D& alpha, const AnalyticFunction1D& beta,
                                  const std::function<double(double)>& g, double g_left,
                                  double g_right, const BvpOptions& options = {});

/// Same solver with a right-hand side already in series form.
ChebSeries solve_second_order_bvp(const AnalyticFunction1D& alpha, const AnalyticFunction1D& beta,
                                  const ChebSeries& g, double g_left, double g_right,
                                  const BvpOptions& options = {});

} // namespace sprd
