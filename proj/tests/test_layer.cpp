#include "sprd/layer.hpp"
#include "sprd/errors.hpp"

#include "doctest.h"

#include <cmath>
#include <sstream>
#include <vector>

using sprd::PolyExp;

TEST_CASE("summation limits of the layer right-hand side") {
    CHECK(sprd::index_bounds(0) == std::pair{0, -1});
    CHECK(sprd::index_bounds(1) == std::pair{0, -1});
    CHECK(sprd::index_bounds(2) == std::pair{1, 0});
    CHECK(sprd::index_bounds(3) == std::pair{1, 0});
    CHECK(sprd::index_bounds(4) == std::pair{2, 1});
    CHECK(sprd::index_bounds(5) == std::pair{2, 1});
    CHECK(sprd::index_bounds(6) == std::pair{3, 2});
}

TEST_CASE("rhs assembly with constant data") {
    const double kappa = 2.0;
    std::vector<PolyExp> prior;
    prior.emplace_back(kappa);                           // term 0 is zero
    prior.emplace_back(kappa, std::vector<double>{0.7}); // c e^{-kappa s}
    const std::vector<double> alpha_taylor{kappa * kappa, 0.0, 0.0};
    const std::vector<double> beta_taylor{1.5, 0.0, 0.0};

    // j = 2: the beta sum only reaches term 0, which vanishes.
    const PolyExp f2 = sprd::assemble_layer_rhs(2, prior, alpha_taylor, beta_taylor);
    CHECK(f2.is_zero());

    // j = 3: only the k = 0 beta term with index 1 survives.
    prior.emplace_back(kappa); // term 2 is zero here as well
    const PolyExp f3 = sprd::assemble_layer_rhs(3, prior, alpha_taylor, beta_taylor);
    REQUIRE(f3.degree() == 0);
    CHECK(f3.poly()[0] == doctest::Approx(-1.5 * 0.7).epsilon(1e-15));
}

TEST_CASE("rhs assembly with a linear coefficient") {
    // With alpha'(0) = a1 and U~_1 = c e^{-kappa s}:
    //   F~_2 = a1 s U~_1'' + a1 U~_1' = a1 c (kappa^2 s - kappa) e^{-kappa s}.
    const double kappa = 1.5, a1 = 0.8, c = -0.4;
    std::vector<PolyExp> prior;
    prior.emplace_back(kappa);
    prior.emplace_back(kappa, std::vector<double>{c});
    const std::vector<double> alpha_taylor{kappa * kappa, a1};
    const std::vector<double> beta_taylor{0.0};
    const PolyExp f2 = sprd::assemble_layer_rhs(2, prior, alpha_taylor, beta_taylor);
    REQUIRE(f2.degree() == 1);
    CHECK(f2.poly()[0] == doctest::Approx(-a1 * c * kappa).epsilon(1e-14));
    CHECK(f2.poly()[1] == doctest::Approx(a1 * c * kappa * kappa).epsilon(1e-14));
}

TEST_CASE("missing prior term is an orchestration error") {
    std::vector<PolyExp> prior;
    prior.emplace_back(1.0);
    CHECK_THROWS_AS(sprd::assemble_layer_rhs(3, prior, std::vector<double>{1.0, 0.0},
                                             std::vector<double>{1.0}),
                    sprd::Error);
}

TEST_CASE("homogeneous layer solve fits the derivative datum") {
    const double kappa = 1.7, c = 0.45;
    const PolyExp w = sprd::solve_layer_ode(PolyExp(kappa), -kappa * c, kappa);
    REQUIRE(w.degree() == 0);
    CHECK(w.poly()[0] == doctest::Approx(c).epsilon(1e-15));
}

TEST_CASE("resonant particular solution for F = e^{-s}") {
    const PolyExp F(1.0, std::vector<double>{1.0});
    const PolyExp w = sprd::solve_layer_ode(F, 0.0, 1.0);
    // Undetermined coefficients give w = -((s + 1)/2) e^{-s}.
    REQUIRE(w.degree() == 1);
    CHECK(w.poly()[0] == doctest::Approx(-0.5).epsilon(1e-15));
    CHECK(w.poly()[1] == doctest::Approx(-0.5).epsilon(1e-15));
    CHECK(w.eval(0.0) == doctest::Approx(-0.5));
    CHECK(w.derivative_at(0.0, 1) == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("first layer term closed form") {
    const double alpha0 = 2.0;
    const double u0_prime = 0.37;
    const double kappa = std::sqrt(alpha0);
    const PolyExp w = sprd::solve_layer_ode(PolyExp(kappa), -u0_prime, kappa);
    REQUIRE(w.degree() == 0);
    CHECK(w.poly()[0] == doctest::Approx(u0_prime / kappa).epsilon(1e-15));
}

TEST_CASE("mismatched forcing rate is rejected") {
    const PolyExp F(2.0, std::vector<double>{1.0});
    CHECK_THROWS_AS(sprd::solve_layer_ode(F, 0.0, 1.0), sprd::DomainError);
}

TEST_CASE("derivative evaluation") {
    const PolyExp decay(1.0, std::vector<double>{1.0});
    CHECK(decay.derivative_at(0.0, 3) == doctest::Approx(-1.0));
    const PolyExp ramp(1.0, std::vector<double>{0.0, 1.0});
    CHECK(ramp.derivative_at(0.0, 1) == doctest::Approx(1.0));
}

namespace {

// Coefficient-wise residual of w'''' - kappa^2 w'' = F.
double layer_residual(const PolyExp& w, const PolyExp& F) {
    PolyExp defect = w.derivative(4);
    defect.add_scaled(w.derivative(2), -w.kappa() * w.kappa());
    defect.add_scaled(F, -1.0);
    return defect.max_abs_coeff();
}

} // namespace

TEST_CASE("layer term serialization") {
    std::vector<PolyExp> terms;
    terms.emplace_back(2.0);
    terms.emplace_back(2.0, std::vector<double>{0.5});
    terms.emplace_back(2.0, std::vector<double>{0.25, -1.0, 0.125});
    std::ostringstream out;
    sprd::dump_layer_terms_csv(terms, sprd::Side::Left, out);
    CHECK(out.str() == "j,side,kappa,coefficients...\n"
                       "0,L,2\n"
                       "1,L,2,0.5\n"
                       "2,L,2,0.25,-1,0.125\n");
}

TEST_CASE("recursion keeps the degree envelope and zero residual") {
    // Mini-recursion with synthetic endpoint data.
    const double kappa = std::sqrt(2.0);
    const std::vector<double> alpha_taylor{2.0, 0.9, -0.3, 0.05, 0.0, 0.0, 0.0};
    const std::vector<double> beta_taylor{1.0, 0.2, 0.0, 0.0, 0.0};
    const std::vector<double> outer_slope{0.5, -0.2, 0.8, -0.1, 0.3, 0.6, -0.4, 0.2, 0.1};

    std::vector<PolyExp> terms;
    terms.emplace_back(kappa);
    for (int j = 1; j <= 9; ++j) {
        const PolyExp rhs = sprd::assemble_layer_rhs(j, terms, alpha_taylor, beta_taylor);
        const PolyExp w = sprd::solve_layer_ode(rhs, -outer_slope[j - 1], kappa, j > 6);
        CHECK(w.degree() <= 2 * (j - 1));
        const double scale = std::max(1.0, std::max(w.max_abs_coeff(), rhs.max_abs_coeff()));
        CHECK(layer_residual(w, rhs) <= 1e-12 * scale);
        CHECK(std::abs(w.derivative_at(0.0, 1) + outer_slope[j - 1]) <= 1e-12 * scale);
        terms.push_back(w);
    }
}
