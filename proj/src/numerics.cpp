#include "sprd/numerics.hpp"

#include "sprd/errors.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <mutex>

namespace sprd {

namespace detail {
std::string format_achieved(double achieved) {
    char buffer[32];
    std::snprintf(buffer, sizeof buffer, "%.3g", achieved);
    return buffer;
}
} // namespace detail

namespace {

GaussRule compute_gauss_legendre(int n) {
    GaussRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    // Newton iteration on P_n, initial guesses from the Chebyshev angles.
    for (int i = 0; i < (n + 1) / 2; ++i) {
        long double x = std::cos(M_PI * (i + 0.75L) / (n + 0.5L));
        long double pp = 0.0L;
        for (int iter = 0; iter < 100; ++iter) {
            long double p0 = 1.0L, p1 = x;
            for (int k = 2; k <= n; ++k) {
                long double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            pp = n * (x * p1 - p0) / (x * x - 1.0L);
            long double dx = p1 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-19L) break;
        }
        rule.nodes[i] = static_cast<double>(-x);
        rule.nodes[n - 1 - i] = static_cast<double>(x);
        double w = static_cast<double>(2.0L / ((1.0L - x * x) * pp * pp));
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    return rule;
}

} // namespace

const GaussRule& gauss_legendre(int n) {
    if (n < 1 || n > 256) throw CapacityError("gauss_legendre: order out of range");
    static std::mutex mutex;
    static std::map<int, GaussRule> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, compute_gauss_legendre(n)).first;
    return it->second;
}

LinearFit fit_line(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2)
        throw DomainError("fit_line: need at least two matching samples");
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mx, dy = y[i] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    LinearFit fit;
    if (sxx == 0.0) throw DomainError("fit_line: degenerate abscissae");
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    fit.r_squared = (syy == 0.0) ? 1.0 : (sxy * sxy) / (sxx * syy);
    return fit;
}

double log_add(double a, double b) {
    if (a < b) std::swap(a, b);
    if (std::isinf(b) && b < 0) return a;
    return a + std::log1p(std::exp(b - a));
}

double grid_l2_norm(std::span<const double> grid, std::span<const double> values) {
    if (grid.size() != values.size() || grid.size() < 2)
        throw DomainError("grid_l2_norm: need a grid of at least two points");
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        const double h = grid[i + 1] - grid[i];
        acc += 0.5 * h * (values[i] * values[i] + values[i + 1] * values[i + 1]);
    }
    return std::sqrt(acc);
}

} // namespace sprd
