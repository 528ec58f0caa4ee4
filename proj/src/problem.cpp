#include "sprd/problem.hpp"

#include "sprd/errors.hpp"

#include <cmath>

namespace sprd {

namespace {

double sampled_min(const AnalyticFunction1D& f, int samples) {
    double lowest = HUGE_VAL;
    for (int i = 0; i < samples; ++i) {
        const double x = static_cast<double>(i) / (samples - 1);
        lowest = std::min(lowest, f.eval(x));
    }
    return lowest;
}

} // namespace

Problem make_problem(AnalyticFunction1D alpha, AnalyticFunction1D beta, AnalyticFunction1D f,
                     double eps) {
    if (!(eps > 0.0) || eps > 1.0) throw DomainError("make_problem: eps must lie in (0, 1]");
    if (alpha.range_enclosure(0.0, 1.0).lo <= 0.0 && sampled_min(alpha, 1024) <= 0.0)
        throw DomainError("make_problem: alpha must be positive on [0, 1]");
    if (beta.range_enclosure(0.0, 1.0).lo < 0.0 && sampled_min(beta, 1024) < 0.0)
        throw DomainError("make_problem: beta must be nonnegative on [0, 1]");
    return Problem{std::move(alpha), std::move(beta), std::move(f), eps};
}

} // namespace sprd
