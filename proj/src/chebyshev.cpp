#include "sprd/chebyshev.hpp"

#include "sprd/errors.hpp"

#include <Eigen/Dense>

#include <cmath>

namespace sprd {

ChebSeries::ChebSeries(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) coeffs_.assign(1, 0.0);
}

ChebSeries ChebSeries::interpolate(const std::function<double(double)>& f, int degree) {
    if (degree < 1) throw DomainError("interpolate: degree must be positive");
    const int N = degree;
    std::vector<double> values(static_cast<std::size_t>(N) + 1);
    std::vector<double> t(static_cast<std::size_t>(N) + 1);
    for (int i = 0; i <= N; ++i) {
        t[i] = -std::cos(M_PI * i / N);
        values[i] = f(0.5 * (t[i] + 1.0));
    }
    // Discrete Chebyshev transform at the Lobatto points.
    std::vector<double> coeffs(static_cast<std::size_t>(N) + 1, 0.0);
    for (int k = 0; k <= N; ++k) {
        long double acc = 0.0L;
        for (int i = 0; i <= N; ++i) {
            // T_k(t_i) by recurrence
            double T0 = 1.0, T1 = t[i], Tk = (k == 0) ? 1.0 : t[i];
            for (int m = 2; m <= k; ++m) {
                Tk = 2.0 * t[i] * T1 - T0;
                T0 = T1;
                T1 = Tk;
            }
            const double w = (i == 0 || i == N) ? 0.5 : 1.0;
            acc += w * values[i] * Tk;
        }
        const double scale = (k == 0 || k == N) ? 1.0 / N : 2.0 / N;
        coeffs[k] = static_cast<double>(acc * scale);
    }
    return ChebSeries(std::move(coeffs));
}

double ChebSeries::eval(double x) const {
    const double t = 2.0 * x - 1.0;
    // Clenshaw recurrence
    double b1 = 0.0, b2 = 0.0;
    for (std::size_t k = coeffs_.size(); k-- > 1;) {
        const double b0 = 2.0 * t * b1 - b2 + coeffs_[k];
        b2 = b1;
        b1 = b0;
    }
    return t * b1 - b2 + coeffs_[0];
}

ChebSeries ChebSeries::derivative() const {
    const int N = degree();
    if (N == 0) return ChebSeries(std::vector<double>{0.0});
    std::vector<double> d(static_cast<std::size_t>(N), 0.0);
    double next = 0.0, after = 0.0; // d_{k+1}, d_{k+2} while descending
    for (int k = N; k >= 1; --k) {
        const double dk = after + 2.0 * k * coeffs_[static_cast<std::size_t>(k)];
        d[static_cast<std::size_t>(k) - 1] = dk;
        after = next;
        next = dk;
    }
    d[0] *= 0.5;
    for (double& c : d) c *= 2.0; // chain rule of t = 2x - 1
    return ChebSeries(std::move(d));
}

ChebSeries ChebSeries::derivative(int n) const {
    ChebSeries out = *this;
    for (int i = 0; i < n; ++i) out = out.derivative();
    return out;
}

double ChebSeries::max_abs_coeff() const {
    double m = 0.0;
    for (double c : coeffs_) m = std::max(m, std::abs(c));
    return m;
}

bool ChebSeries::resolved(double rtol) const {
    if (coeffs_.size() < 4) return false;
    const double scale = max_abs_coeff();
    if (scale == 0.0) return true;
    const double tail = std::max(std::abs(coeffs_[coeffs_.size() - 1]),
                                 std::abs(coeffs_[coeffs_.size() - 2]));
    return tail <= rtol * scale;
}

double ChebSeries::value_at_zero() const {
    double acc = 0.0, sign = 1.0;
    for (double c : coeffs_) {
        acc += sign * c;
        sign = -sign;
    }
    return acc;
}

double ChebSeries::value_at_one() const {
    double acc = 0.0;
    for (double c : coeffs_) acc += c;
    return acc;
}

ChebSeries& ChebSeries::operator+=(const ChebSeries& other) {
    if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size(), 0.0);
    for (std::size_t k = 0; k < other.coeffs_.size(); ++k) coeffs_[k] += other.coeffs_[k];
    return *this;
}

ChebSeries& ChebSeries::operator*=(double factor) {
    for (double& c : coeffs_) c *= factor;
    return *this;
}

namespace {

ChebSeries solve_at_degree(const AnalyticFunction1D& alpha, const AnalyticFunction1D& beta,
                           const std::function<double(double)>& g, double g_left, double g_right,
                           int N) {
    const int n = N + 1;
    Eigen::MatrixXd A(n, n);
    Eigen::VectorXd b(n);

    for (int i = 0; i <= N; ++i) {
        const double t = -std::cos(M_PI * i / N);
        const double x = 0.5 * (t + 1.0);
        if (i == 0 || i == N) {
            // Boundary rows: T_k(-1) = (-1)^k, T_k(1) = 1, enforced exactly.
            for (int k = 0; k <= N; ++k)
                A(i, k) = (i == 0) ? ((k % 2 == 0) ? 1.0 : -1.0) : 1.0;
            b(i) = (i == 0) ? g_left : g_right;
            continue;
        }
        const std::vector<double> alpha_tc = alpha.taylor_coeffs(x, 1);
        const double a_val = alpha_tc[0];
        const double a_prime = alpha_tc[1];
        const double b_val = beta.eval(x);
        // T, T', T'' recurrences in t; chain-rule factors 2 and 4 for x.
        double T0 = 1.0, T1 = t;
        double D0 = 0.0, D1 = 1.0;
        double S0 = 0.0, S1 = 0.0;
        for (int k = 0; k <= N; ++k) {
            double Tk, Dk, Sk;
            if (k == 0) {
                Tk = T0;
                Dk = D0;
                Sk = S0;
            } else if (k == 1) {
                Tk = T1;
                Dk = D1;
                Sk = S1;
            } else {
                Tk = 2.0 * t * T1 - T0;
                Dk = 2.0 * T1 + 2.0 * t * D1 - D0;
                Sk = 4.0 * D1 + 2.0 * t * S1 - S0;
                T0 = T1;
                T1 = Tk;
                D0 = D1;
                D1 = Dk;
                S0 = S1;
                S1 = Sk;
            }
            A(i, k) = -a_val * 4.0 * Sk - a_prime * 2.0 * Dk + b_val * Tk;
        }
        b(i) = g(x);
    }

    Eigen::PartialPivLU<Eigen::MatrixXd> lu(A);
    Eigen::VectorXd solution = lu.solve(b);
    // Two refinement steps with a long double residual recover the digits the
    // moderately conditioned collocation matrix loses.
    for (int pass = 0; pass < 2; ++pass) {
        Eigen::VectorXd residual(n);
        for (int i = 0; i < n; ++i) {
            long double acc = b(i);
            for (int k = 0; k < n; ++k) acc -= static_cast<long double>(A(i, k)) * solution(k);
            residual(i) = static_cast<double>(acc);
        }
        solution += lu.solve(residual);
    }
    if (!solution.allFinite())
        throw SolverError("collocation system is singular or produced non-finite values");

    std::vector<double> coeffs(solution.data(), solution.data() + n);
    return ChebSeries(std::move(coeffs));
}

} // namespace

ChebSeries solve_second_order_bvp(const AnalyticFunction1D& alpha, const AnalyticFunction1D& beta,
                                  const std::function<double(double)>& g, double g_left,
                                  double g_right, const BvpOptions& options) {
    if (options.min_degree < 4) throw DomainError("solver needs degree >= 4");
    for (int N = options.min_degree; N <= options.max_degree; N *= 2) {
        ChebSeries w = solve_at_degree(alpha, beta, g, g_left, g_right, N);
        if (w.resolved(options.trailing_rtol)) return w;
    }
    throw ResolutionError("trailing-coefficient test failed at the maximum collocation degree");
}

ChebSeries solve_second_order_bvp(const AnalyticFunction1D& alpha, const AnalyticFunction1D& beta,
                                  const ChebSeries& g, double g_left, double g_right,
                                  const BvpOptions& options) {
    BvpOptions adjusted = options;
    // Start above the right-hand side's own degree so nodal sampling of g
    // cannot alias.
    while (adjusted.min_degree < g.degree() + 8 && adjusted.min_degree < adjusted.max_degree)
        adjusted.min_degree *= 2;
    // A series right-hand side carries its own rounding plateau (repeated
    // coefficient differentiation raises it); the solution cannot certify
    // below that floor, so the trailing test is calibrated to it.
    const double scale = g.max_abs_coeff();
    if (scale > 0.0 && g.degree() >= 3) {
        const auto& c = g.coeffs();
        const double plateau = std::max(std::abs(c[c.size() - 1]), std::abs(c[c.size() - 2]));
        adjusted.trailing_rtol = std::max(adjusted.trailing_rtol, 4.0 * plateau / scale);
    }
    return solve_second_order_bvp(
        alpha, beta, [&g](double x) { return g.eval(x); }, g_left, g_right, adjusted);
}

} // namespace sprd
