#include "sprd/layer.hpp"

#include "sprd/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

namespace sprd {

PolyExp::PolyExp(double kappa, std::vector<double> poly)
    : kappa_(kappa), poly_(std::move(poly)) {
    if (!(kappa_ > 0.0)) throw DomainError("PolyExp: decay rate must be positive");
}

bool PolyExp::is_zero() const {
    for (double c : poly_)
        if (c != 0.0) return false;
    return true;
}

double PolyExp::poly_eval(double s) const {
    double acc = 0.0;
    for (std::size_t k = poly_.size(); k-- > 0;) acc = acc * s + poly_[k];
    return acc;
}

double PolyExp::eval(double s) const { return poly_eval(s) * std::exp(-kappa_ * s); }

PolyExp PolyExp::derivative() const {
    if (poly_.empty()) return *this;
    std::vector<double> out(poly_.size(), 0.0);
    for (std::size_t k = 0; k < poly_.size(); ++k) {
        out[k] -= kappa_ * poly_[k];
        if (k + 1 < poly_.size()) out[k] += static_cast<double>(k + 1) * poly_[k + 1];
    }
    return PolyExp(kappa_, std::move(out));
}

PolyExp PolyExp::derivative(int n) const {
    PolyExp out = *this;
    for (int i = 0; i < n; ++i) out = out.derivative();
    return out;
}

double PolyExp::derivative_at(double s, int n) const {
    if (n < 0) throw DomainError("derivative_at: negative order");
    return derivative(n).eval(s);
}

PolyExp PolyExp::times_monomial(int power, double factor) const {
    if (power < 0) throw DomainError("times_monomial: negative power");
    if (poly_.empty() || factor == 0.0) return PolyExp(kappa_);
    std::vector<double> out(poly_.size() + static_cast<std::size_t>(power), 0.0);
    for (std::size_t k = 0; k < poly_.size(); ++k)
        out[k + static_cast<std::size_t>(power)] = factor * poly_[k];
    return PolyExp(kappa_, std::move(out));
}

PolyExp& PolyExp::add_scaled(const PolyExp& other, double factor) {
    if (other.poly_.empty() || factor == 0.0) return *this;
    if (!poly_.empty() && other.kappa_ != kappa_)
        throw DomainError("PolyExp: mismatched decay rates");
    if (poly_.empty()) kappa_ = other.kappa_;
    if (other.poly_.size() > poly_.size()) poly_.resize(other.poly_.size(), 0.0);
    for (std::size_t k = 0; k < other.poly_.size(); ++k) poly_[k] += factor * other.poly_[k];
    return *this;
}

PolyExp& PolyExp::operator*=(double factor) {
    for (double& c : poly_) c *= factor;
    return *this;
}

double PolyExp::max_abs_coeff() const {
    double m = 0.0;
    for (double c : poly_) m = std::max(m, std::abs(c));
    return m;
}

std::pair<int, int> index_bounds(int j) {
    if (j < 0) throw DomainError("index_bounds: negative index");
    const int A = (j % 2 == 0) ? j / 2 : (j - 1) / 2;
    const int B = (j % 2 == 0) ? (j - 2) / 2 : (j - 3) / 2;
    return {A, B};
}

PolyExp assemble_layer_rhs(int j, std::span<const PolyExp> prior,
                           std::span<const double> alpha_taylor,
                           std::span<const double> beta_taylor) {
    const auto [A, B] = index_bounds(j);
    if (prior.size() < static_cast<std::size_t>(j))
        throw Error("assemble_layer_rhs: terms below index j must be built first");
    if (alpha_taylor.size() <= static_cast<std::size_t>(A) ||
        (B >= 0 && beta_taylor.size() <= static_cast<std::size_t>(B)))
        throw Error("assemble_layer_rhs: not enough endpoint Taylor data");

    PolyExp rhs;
    for (int k = 1; k <= A; ++k) {
        const PolyExp& term = prior[static_cast<std::size_t>(j - k)];
        if (term.is_zero()) continue;
        const double ak = alpha_taylor[static_cast<std::size_t>(k)];
        if (ak == 0.0) continue;
        // alpha_k(s) = a_k s^k, alpha_k'(s) = k a_k s^{k-1}
        rhs += term.derivative(2).times_monomial(k, ak);
        rhs += term.derivative().times_monomial(k - 1, static_cast<double>(k) * ak);
    }
    for (int k = 0; k <= B; ++k) {
        const PolyExp& term = prior[static_cast<std::size_t>(j - 2 - k)];
        if (term.is_zero()) continue;
        const double bk = beta_taylor[static_cast<std::size_t>(k)];
        if (bk == 0.0) continue;
        rhs += term.times_monomial(k, -bk);
    }
    if (rhs.poly().empty()) return PolyExp(prior.empty() ? 1.0 : prior[0].kappa());
    return rhs;
}

void dump_layer_terms_csv(std::span<const PolyExp> terms, Side side, std::ostream& out) {
    out << "j,side,kappa,coefficients...\n";
    char buffer[32];
    for (std::size_t j = 0; j < terms.size(); ++j) {
        out << j << ',' << (side == Side::Left ? 'L' : 'R');
        std::snprintf(buffer, sizeof buffer, "%.17g", terms[j].kappa());
        out << ',' << buffer;
        for (double c : terms[j].poly()) {
            std::snprintf(buffer, sizeof buffer, "%.17g", c);
            out << ',' << buffer;
        }
        out << '\n';
    }
}

namespace {

// Undetermined coefficients for w'''' - kappa^2 w'' = p(s) e^{-kappa s}.
// With w = q(s) e^{-kappa s} the operator reduces to
//   q'''' - 4 kappa q''' + 5 kappa^2 q'' - 2 kappa^3 q',
// which lowers the degree by one, so q has degree deg p + 1 and its constant
// term is free (it is the decaying homogeneous mode). The triangular solve
// runs from the top degree down.
template <typename Real>
std::vector<double> particular_poly(const std::vector<double>& p, double kappa_in) {
    const Real kappa = static_cast<Real>(kappa_in);
    const int d = static_cast<int>(p.size()) - 1;
    std::vector<Real> q(static_cast<std::size_t>(d) + 2, Real(0));
    for (int r = d; r >= 0; --r) {
        Real acc = static_cast<Real>(p[static_cast<std::size_t>(r)]);
        const Real r1 = static_cast<Real>(r + 1), r2 = static_cast<Real>(r + 2),
                   r3 = static_cast<Real>(r + 3), r4 = static_cast<Real>(r + 4);
        if (r + 4 < static_cast<int>(q.size()))
            acc -= r4 * r3 * r2 * r1 * q[static_cast<std::size_t>(r + 4)];
        if (r + 3 < static_cast<int>(q.size()))
            acc += Real(4) * kappa * r3 * r2 * r1 * q[static_cast<std::size_t>(r + 3)];
        if (r + 2 < static_cast<int>(q.size()))
            acc -= Real(5) * kappa * kappa * r2 * r1 * q[static_cast<std::size_t>(r + 2)];
        q[static_cast<std::size_t>(r + 1)] = acc / (Real(-2) * kappa * kappa * kappa * r1);
    }
    std::vector<double> out(q.size());
    for (std::size_t k = 0; k < q.size(); ++k) out[k] = static_cast<double>(q[k]);
    return out;
}

} // namespace

PolyExp solve_layer_ode(const PolyExp& F, double g1, double kappa, bool extended_precision) {
    if (!(kappa > 0.0)) throw DomainError("solve_layer_ode: decay rate must be positive");
    if (!F.is_zero() && F.kappa() != kappa)
        throw DomainError("solve_layer_ode: forcing decay rate must equal kappa");

    std::vector<double> q;
    if (F.is_zero()) {
        q.assign(1, 0.0);
    } else {
        q = extended_precision ? particular_poly<long double>(F.poly(), kappa)
                               : particular_poly<double>(F.poly(), kappa);
    }
    // w = q(s) e^{-kappa s} + D e^{-kappa s}; w'(0) = q_1 - kappa D = g1.
    const double q1 = q.size() > 1 ? q[1] : 0.0;
    q[0] = (q1 - g1) / kappa;
    return PolyExp(kappa, std::move(q));
}

} // namespace sprd
