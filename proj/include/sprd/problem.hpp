#pragma once

#include "sprd/analytic.hpp"

namespace sprd {

/// Problem data of the fourth-order two-point boundary value problem
///   eps^2 u'''' - (alpha u')' + beta u = f on (0, 1),
///   u(0) = u'(0) = u(1) = u'(1) = 0.
struct Problem {
    AnalyticFunction1D alpha;
    AnalyticFunction1D beta;
    AnalyticFunction1D f;
    double eps;
};

/// Validates alpha > 0, beta >= 0 (interval certificate where it is cheap,
/// a 1024-point sample otherwise) and 0 < eps <= 1. Violations throw
/// DomainError at construction time.
Problem make_problem(AnalyticFunction1D alpha, AnalyticFunction1D beta, AnalyticFunction1D f,
                     double eps);

} // namespace sprd
