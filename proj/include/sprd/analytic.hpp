#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace sprd {

/// Crude interval enclosure used for cheap sign certification of coefficients.
struct Interval {
    double lo;
    double hi;
};

/// Fitted constants of the factorial derivative bound
/// max |f^(n)| <= C * gamma^n * n!  over the sampled grid.
struct AnalyticityReport {
    double C_fit = 0.0;
    double gamma_fit = 0.0;
    int orders_checked = 0;
    double max_ratio = 0.0;
    std::vector<double> sup_derivative; ///< max |f^(n)| per order, n = 0..orders_checked
};

/// Real-analytic function on [0, 1] represented as a closed-form expression
/// tree over {constant, x, +, -, *, /, exp, sin, cos, integer power}.
///
/// Taylor coefficients of arbitrary order are obtained by propagating the
/// standard product/quotient/elementary-function recurrences through the
/// tree, so high-order derivatives carry no finite-difference noise. Results
/// are memoized per expansion point; instances are immutable and safe to
/// share across threads.
class AnalyticFunction1D {
public:
    static AnalyticFunction1D constant(double c);
    static AnalyticFunction1D identity();

    /// Parses an infix expression in the variable x. Grammar (README):
    ///   expr   := term (('+'|'-') term)*
    ///   term   := factor (('*'|'/') factor)*
    ///   factor := '-' factor | power
    ///   power  := atom ('^' integer)?
    ///   atom   := number | 'x' | ('exp'|'sin'|'cos') '(' expr ')'
    ///           | 'pow' '(' expr ',' integer ')' | '(' expr ')'
    static AnalyticFunction1D parse(std::string_view text);

    friend AnalyticFunction1D operator+(const AnalyticFunction1D&, const AnalyticFunction1D&);
    friend AnalyticFunction1D operator-(const AnalyticFunction1D&, const AnalyticFunction1D&);
    friend AnalyticFunction1D operator*(const AnalyticFunction1D&, const AnalyticFunction1D&);
    friend AnalyticFunction1D operator/(const AnalyticFunction1D&, const AnalyticFunction1D&);
    static AnalyticFunction1D exp(const AnalyticFunction1D&);
    static AnalyticFunction1D sin(const AnalyticFunction1D&);
    static AnalyticFunction1D cos(const AnalyticFunction1D&);
    static AnalyticFunction1D pow(const AnalyticFunction1D&, int exponent);

    /// Point evaluation. Throws DomainError on a division pole.
    double eval(double x) const;

    /// Taylor coefficients f^(k)(x0)/k! for k = 0..order.
    /// Throws DomainError at a pole, CapacityError when order > order_cap().
    std::vector<double> taylor_coeffs(double x0, int order) const;

    /// n-th derivative at x0 (exact propagation, n! * coefficient).
    double derivative(double x0, int n) const;

    /// Interval enclosure of the range over [lo, hi] (crude but sound).
    Interval range_enclosure(double lo, double hi) const;

    int order_cap() const { return order_cap_; }

    std::string to_string() const;

    struct Node; ///< opaque expression node

private:
    struct Cache;
    AnalyticFunction1D(std::shared_ptr<const Node> root);

    std::shared_ptr<const Node> root_;
    std::shared_ptr<Cache> cache_;
    int order_cap_ = 64;
};

/// Estimates sup-norms of f^(n), n = 0..N, on a uniform sample grid and fits
/// the smallest (C, gamma) with C = sup |f| such that the factorial bound
/// holds on every checked order. `derivative_shift` fits the bound for
/// f^(shift) instead, reusing the same coefficient tables.
AnalyticityReport validate_analyticity(const AnalyticFunction1D& f, int N, int sample_count,
                                       int derivative_shift = 0);

} // namespace sprd
