#pragma once

#include "sprd/analytic.hpp"
#include "sprd/chebyshev.hpp"

#include <vector>

namespace sprd {

/// Builds the j-th outer term: the right-hand side is f for j = 0, zero for
/// j = 1 and the exact fourth series derivative -U_{j-2}'''' for j >= 2.
/// Boundary values are supplied by the caller (they come from the layer
/// terms of the same index).
ChebSeries outer_term(int j, const std::vector<ChebSeries>& previous,
                      const AnalyticFunction1D& alpha, const AnalyticFunction1D& beta,
                      const AnalyticFunction1D& f, double bc_left, double bc_right,
                      const BvpOptions& options = {});

/// U'(endpoint) by exact series differentiation; endpoint is 0 or 1.
double endpoint_derivative(const ChebSeries& series, int endpoint);

} // namespace sprd
