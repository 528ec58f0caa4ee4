#include "sprd/greens.hpp"
#include "sprd/errors.hpp"

#include "doctest.h"

#include <cmath>
#include <vector>

using sprd::greens_kernel;
using sprd::HalfLineProblem;

TEST_CASE("kernel is continuous across the diagonal") {
    // The two branches meet with a nonzero slope, so the straddling
    // difference shrinks linearly in h down to rounding level.
    const double xi = 1.0, kappa = 1.0;
    const auto gap = [&](double h) {
        return std::abs(greens_kernel(xi + h, xi, kappa) - greens_kernel(xi - h, xi, kappa));
    };
    CHECK(gap(1e-3) <= 1e-3);
    CHECK(gap(1e-6) <= 1e-6);
    CHECK(gap(1e-9) <= 1e-9);
}

TEST_CASE("kernel third derivative jumps by one across the diagonal") {
    const double xi = 1.0, kappa = 1.0;
    const double h = 5e-3;
    const auto third = [&](double x) {
        // O(h^2) central stencil, evaluated strictly inside one branch.
        return (greens_kernel(x + 2 * h, xi, kappa) - 2.0 * greens_kernel(x + h, xi, kappa) +
                2.0 * greens_kernel(x - h, xi, kappa) - greens_kernel(x - 2 * h, xi, kappa)) /
               (2.0 * h * h * h);
    };
    const auto jump_at = [&](double delta) { return third(xi + delta) - third(xi - delta); };
    // One Richardson step removes the linear drift of the one-sided limits.
    const double jump = 2.0 * jump_at(0.02) - jump_at(0.04);
    CHECK(jump == doctest::Approx(1.0).epsilon(2e-3));
}

TEST_CASE("kernel vanishes for a source at the origin") {
    CHECK(greens_kernel(0.5, 0.0, 1.0) == 0.0);
    CHECK(greens_kernel(3.0, 0.0, 2.0) == 0.0);
}

TEST_CASE("homogeneous half-line problem returns the decaying mode") {
    HalfLineProblem p;
    p.F = [](double) { return 0.0; };
    p.g1 = -1.0;
    p.kappa = 1.0;
    p.lambda = 1.0;
    for (double x : {0.0, 0.5, 2.0, 10.0})
        CHECK(sprd::solve_halfline(p, x) == doctest::Approx(std::exp(-x)).epsilon(1e-11));
}

TEST_CASE("forced half-line problem matches the resonant closed form") {
    HalfLineProblem p;
    p.F = [](double u) { return std::exp(-u); };
    p.g1 = 0.0;
    p.kappa = 1.0;
    p.lambda = 1.0;
    p.poly_degree_hint = 1;
    CHECK(sprd::solve_halfline(p, 0.0) == doctest::Approx(-0.5).epsilon(1e-10));
    for (double x : {0.5, 1.0, 4.0, 12.0}) {
        const double exact = -0.5 * (x + 1.0) * std::exp(-x);
        CHECK(std::abs(sprd::solve_halfline(p, x) - exact) <= 1e-10);
    }
}

TEST_CASE("zero data gives the zero solution") {
    HalfLineProblem p;
    p.F = [](double) { return 0.0; };
    p.g1 = 0.0;
    p.kappa = 1.5;
    p.lambda = 2.25;
    CHECK(std::abs(sprd::solve_halfline(p, 1.0)) <= 1e-13);
}

TEST_CASE("inconsistent lambda is rejected") {
    HalfLineProblem p;
    p.F = [](double) { return 0.0; };
    p.kappa = 2.0;
    p.lambda = 3.9;
    CHECK_THROWS_AS(sprd::solve_halfline(p, 0.0), sprd::DomainError);
}

TEST_CASE("exhausted panel budget reports the achieved error") {
    HalfLineProblem p;
    p.F = [](double u) { return std::exp(-u) * std::cos(60.0 * u); };
    p.g1 = 0.0;
    p.kappa = 1.0;
    p.lambda = 1.0;
    sprd::QuadratureConfig quad;
    quad.panel_points = 4;
    quad.max_depth = 0;
    CHECK_THROWS_AS(sprd::solve_halfline(p, 0.0, quad), sprd::AccuracyError);
}

TEST_CASE("defect of the solution reproduces the forcing") {
    // w = -((s+1)/2) e^{-s} solves w'''' - w'' = e^{-s}; high-order stencils
    // in extended precision keep the step-1e-3 differentiation meaningful.
    const auto w = [](long double s) { return -0.5L * (s + 1.0L) * std::exp(-s); };
    const long double h = 1e-3L;
    double worst = 0.0;
    for (double s0 = 0.0; s0 <= 5.0; s0 += 0.2) {
        const long double s = s0;
        long double w4 = (-w(s - 3 * h) / 6 + 2 * w(s - 2 * h) - 13 * w(s - h) / 2 +
                          28 * w(s) / 3 - 13 * w(s + h) / 2 + 2 * w(s + 2 * h) - w(s + 3 * h) / 6) /
                         (h * h * h * h);
        long double w2 = (-w(s - 2 * h) / 12 + 4 * w(s - h) / 3 - 5 * w(s) / 2 +
                          4 * w(s + h) / 3 - w(s + 2 * h) / 12) /
                         (h * h);
        const double defect = static_cast<double>(w4 - w2) - std::exp(-s0);
        worst = std::max(worst, std::abs(defect));
    }
    CHECK(worst <= 1e-4); // relative to sup |F| = 1
}

TEST_CASE("weighted solution stays under its polynomial envelope on the tail") {
    HalfLineProblem p;
    p.F = [](double u) { return (1.0 + u) * std::exp(-u); };
    p.g1 = 0.3;
    p.kappa = 1.0;
    p.lambda = 1.0;
    p.poly_degree_hint = 2;
    const int j = 1;
    const double q = 4.0 * j / p.kappa;
    std::vector<double> ratios;
    for (double x = 10.0; x <= 40.0; x += 5.0)
        ratios.push_back(std::abs(sprd::solve_halfline(p, x)) * std::exp(p.kappa * x) /
                         std::pow(q + x, 2.0 * j));
    // Growth factors of the weighted ratio must decay toward one: the
    // solution grows no faster than the degree-2j envelope.
    double previous_factor = HUGE_VAL;
    for (std::size_t i = 0; i + 1 < ratios.size(); ++i) {
        const double factor = ratios[i + 1] / ratios[i];
        CHECK(factor <= previous_factor * (1.0 + 1e-9));
        previous_factor = factor;
    }
    CHECK(previous_factor <= 1.02);
}
