#pragma once

#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

namespace sprd {

/// p(s) * exp(-kappa * s) with an explicit coefficient vector for p.
/// The boundary-layer recursion is closed in this ring: addition,
/// multiplication by monomials and differentiation stay inside it, so every
/// term is represented exactly and derivatives of any order are noise-free.
class PolyExp {
public:
    PolyExp() : kappa_(1.0) {}
    explicit PolyExp(double kappa, std::vector<double> poly = {});

    double kappa() const { return kappa_; }
    const std::vector<double>& poly() const { return poly_; }
    /// Degree of the stored coefficient vector; -1 for the zero function.
    int degree() const { return static_cast<int>(poly_.size()) - 1; }
    bool is_zero() const;

    double eval(double s) const;
    /// Exact n-th derivative value at s >= 0.
    double derivative_at(double s, int n) const;
    double poly_eval(double s) const;

    PolyExp derivative() const; // (p' - kappa p) e^{-kappa s}
    PolyExp derivative(int n) const;
    PolyExp times_monomial(int power, double factor) const;

    PolyExp& add_scaled(const PolyExp& other, double factor);
    PolyExp& operator+=(const PolyExp& other) { return add_scaled(other, 1.0); }
    PolyExp& operator*=(double factor);

    double max_abs_coeff() const;

private:
    double kappa_;
    std::vector<double> poly_;
};

enum class Side { Left, Right };

/// One boundary-layer term in its stretched variable.
struct LayerTerm {
    PolyExp fn;
    int j = 0;
    Side side = Side::Left;
};

/// Summation limits of the layer right-hand side:
/// A_j = j/2 (j even) or (j-1)/2 (j odd); B_j = (j-2)/2 or (j-3)/2.
/// A negative B_j means the beta sum is empty.
std::pair<int, int> index_bounds(int j);

/// Assembles the right-hand side for layer index j from the previously built
/// terms (prior[i] is term i; terms 0..j-1 must be present) and the Taylor
/// coefficients of the problem data at the matching endpoint.
PolyExp assemble_layer_rhs(int j, std::span<const PolyExp> prior,
                           std::span<const double> alpha_taylor,
                           std::span<const double> beta_taylor);

/// One CSV row per term: j, side, kappa, then the polynomial coefficients
/// c0..c_{2(j-1)} in the stretched variable.
void dump_layer_terms_csv(std::span<const PolyExp> terms, Side side, std::ostream& out);

/// Solves w'''' - kappa^2 w'' = F on (0, inf) with w'(0) = g1 and w -> 0.
/// The forcing rate coincides with the simple characteristic root -kappa, so
/// the particular polynomial has degree deg F + 1; the decaying homogeneous
/// mode is then fitted to the derivative datum. Coefficient recursion runs
/// in extended precision when requested (advisable for indices above ~12).
/// Throws DomainError when F carries a different decay rate.
PolyExp solve_layer_ode(const PolyExp& F, double g1, double kappa,
                        bool extended_precision = false);

} // namespace sprd
