#include "sprd/outer.hpp"

#include "sprd/errors.hpp"

namespace sprd {

ChebSeries outer_term(int j, const std::vector<ChebSeries>& previous,
                      const AnalyticFunction1D& alpha, const AnalyticFunction1D& beta,
                      const AnalyticFunction1D& f, double bc_left, double bc_right,
                      const BvpOptions& options) {
    if (j < 0) throw DomainError("outer_term: negative index");
    if (j == 0)
        return solve_second_order_bvp(
            alpha, beta, [&f](double x) { return f.eval(x); }, bc_left, bc_right, options);
    if (j == 1)
        return solve_second_order_bvp(
            alpha, beta, [](double) { return 0.0; }, bc_left, bc_right, options);
    if (previous.size() < static_cast<std::size_t>(j - 1))
        throw Error("outer_term: term j-2 has not been built yet");
    ChebSeries rhs = previous[static_cast<std::size_t>(j - 2)].derivative(4);
    rhs *= -1.0;
    return solve_second_order_bvp(alpha, beta, rhs, bc_left, bc_right, options);
}

double endpoint_derivative(const ChebSeries& series, int endpoint) {
    if (endpoint != 0 && endpoint != 1) throw DomainError("endpoint must be 0 or 1");
    const ChebSeries d = series.derivative();
    return endpoint == 0 ? d.value_at_zero() : d.value_at_one();
}

} // namespace sprd
