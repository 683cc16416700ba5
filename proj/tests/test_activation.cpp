#include <cmath>

#include "doctest.h"

#include "gnncert/errors.hpp"
#include "gnncert/gauss.hpp"
#include "gnncert/philox.hpp"

using namespace gnncert;

TEST_CASE("catalog metadata") {
    CHECK(make_activation(ActKind::relu).lip == 1.0);
    CHECK(make_activation(ActKind::relu).sigma_at_zero == 0.0);
    CHECK(make_activation(ActKind::relu).has_moment_oracle);
    CHECK_FALSE(make_activation(ActKind::perceptron).lip.has_value());
    CHECK(make_activation(ActKind::sigmoid).lip == 0.25);
    CHECK(make_activation(ActKind::tanh_fn).lip == 1.0);
    CHECK(make_activation(ActKind::sine).lip == 1.0);
    CHECK(make_activation(ActKind::softplus).lip == 1.0);
    CHECK(make_activation(ActKind::swish).lip == 1.1);
    CHECK(make_activation(ActKind::sqrt_relu).lip_sq == 1.0);

    const auto mono3 = make_activation(ActKind::monomial, 3);
    REQUIRE(mono3.growth.has_value());
    CHECK(mono3.growth->r1 == 6.0);
    CHECK(mono3.growth->r2 == 1.0);
    CHECK(mono3.growth->gamma == 3.0);

    CHECK_THROWS_AS(make_activation(ActKind::monomial, 0), DomainError);
    CHECK_THROWS_AS(make_activation("no_such_activation"), DomainError);
    CHECK(make_activation("monomial:2").degree == 2);
}

TEST_CASE("monomial growth envelope dominates sigma, sigma' and sigma''") {
    for (int k = 1; k <= 6; ++k) {
        const auto act = make_activation(ActKind::monomial, k);
        const GrowthEnvelope g = *act.growth;
        for (double x = 0.0; x <= 25.0; x += 0.01) {
            const double env = g.r1 + g.r2 * std::pow(x, g.gamma);
            CHECK(std::pow(x, k) <= env + 1e-9);
            CHECK(k * std::pow(x, k - 1) <= env + 1e-9);
            if (k >= 2) CHECK(k * (k - 1) * std::pow(x, k - 2) <= env + 1e-9);
        }
    }
}

TEST_CASE("eval") {
    CHECK(eval(make_activation(ActKind::relu), -2.0) == 0.0);
    CHECK(eval(make_activation(ActKind::relu), 3.5) == 3.5);
    CHECK(eval(make_activation(ActKind::perceptron), 0.0) == 1.0);
    CHECK(eval(make_activation(ActKind::perceptron), -1e-12) == 0.0);
    CHECK(eval(make_activation(ActKind::swish), 1.0) ==
          doctest::Approx(0.7310585786300049).epsilon(1e-14));
    CHECK(eval(make_activation(ActKind::sigmoid), 0.0) == doctest::Approx(0.5));
    CHECK(eval(make_activation(ActKind::softplus), 0.0) ==
          doctest::Approx(std::log(2.0)).epsilon(1e-14));
    CHECK(eval(make_activation(ActKind::softplus), -800.0) == doctest::Approx(0.0));
    CHECK(eval(make_activation(ActKind::sqrt_relu), 4.0) == doctest::Approx(2.0));
    CHECK(eval(make_activation(ActKind::monomial, 3), -2.0) == doctest::Approx(-8.0));
}

TEST_CASE("p_polynomial cases") {
    const auto relu = make_activation(ActKind::relu);
    const auto p_relu = p_polynomial(relu, 1.0, 1.0);
    REQUIRE(p_relu.terms.size() == 1); // sigma(0) = 0 kills the linear term
    CHECK(p_relu.terms[0].exponent == 2.0);
    CHECK(p_relu.terms[0].coeff == doctest::Approx(1.0));

    CHECK(p_polynomial(make_activation(ActKind::perceptron), 1.0, 1.0).zero());

    const auto p_sqrt = p_polynomial(make_activation(ActKind::sqrt_relu), 4.0, 2.0);
    REQUIRE(p_sqrt.terms.size() == 1);
    CHECK(p_sqrt.terms[0].exponent == 1.0);
    CHECK(p_sqrt.terms[0].coeff == doctest::Approx(0.5)); // Lip(sigma^2)*cw/(2*sqrt(cb))

    const auto p_sig = p_polynomial(make_activation(ActKind::sigmoid), 1.0, 1.0);
    REQUIRE(p_sig.terms.size() == 2); // sigma(0) = 1/2 keeps the linear term
    CHECK(p_sig.terms[0].coeff == doctest::Approx(0.5 * 0.25));
    CHECK(p_sig.terms[1].coeff == doctest::Approx(0.0625));

    // Growth route: non-integer-like generalized exponent 1 + gamma.
    const auto p_mono = p_polynomial(make_activation(ActKind::monomial, 3), 1.0, 1.0);
    REQUIRE(p_mono.terms.size() == 2);
    CHECK(p_mono.terms[1].exponent == doctest::Approx(4.0));
}

TEST_CASE("p_polynomial coefficients are nonnegative across the catalog") {
    const ActivationSpec acts[] = {
        make_activation(ActKind::relu),     make_activation(ActKind::perceptron),
        make_activation(ActKind::sigmoid),  make_activation(ActKind::tanh_fn),
        make_activation(ActKind::sine),     make_activation(ActKind::softplus),
        make_activation(ActKind::swish),    make_activation(ActKind::sqrt_relu),
        make_activation(ActKind::monomial, 2),
    };
    for (const auto& act : acts)
        for (double cb : {0.5, 1.0, 10.0})
            for (double cw : {0.01, 1.0, 3.0})
                for (const PTerm& t : p_polynomial(act, cb, cw).terms) {
                    CHECK(t.coeff >= 0.0);
                    CHECK(t.exponent >= 0.0);
                }
}

TEST_CASE("p_l2_norm values and overrides") {
    CHECK(p_l2_norm(make_activation(ActKind::relu), 1.0, 1.0) ==
          doctest::Approx(std::sqrt(1.5)).epsilon(1e-14)); // sharp ReLU value
    CHECK(p_l2_norm(make_activation(ActKind::perceptron), 1.0, 1.0) == 0.0);
    // Generic norm of P(x) = x^2 is sqrt(E Z^4) = sqrt(3).
    PPolynomial sq;
    sq.terms = {{1.0, 2.0}};
    CHECK(p_l2_norm(sq) == doctest::Approx(std::sqrt(3.0)).epsilon(1e-13));
}

TEST_CASE("p_l2_norm is degree-1 homogeneous in cw when sigma(0) = 0") {
    for (ActKind kind : {ActKind::tanh_fn, ActKind::sine, ActKind::swish, ActKind::sqrt_relu,
                         ActKind::relu}) {
        const auto act = make_activation(kind);
        for (double lam : {2.0, 5.0, 0.25}) {
            const double base = p_l2_norm(act, 2.0, 1.5);
            const double scaled = p_l2_norm(act, 2.0, 1.5 * lam);
            CHECK(scaled == doctest::Approx(lam * base).epsilon(1e-12));
        }
    }
}

TEST_CASE("squared-activation increments are dominated by P") {
    // The defining inequality of P, sampled over random (x, a1, a2). Covers
    // the perceptron, Lipschitz and Lipschitz-squared routes, and the growth
    // route at gamma <= 1; the gamma > 1 growth envelope does not admit an
    // a-free dominating polynomial (see test below).
    const ActivationSpec acts[] = {
        make_activation(ActKind::relu),     make_activation(ActKind::perceptron),
        make_activation(ActKind::sigmoid),  make_activation(ActKind::tanh_fn),
        make_activation(ActKind::sine),     make_activation(ActKind::softplus),
        make_activation(ActKind::swish),    make_activation(ActKind::sqrt_relu),
        make_activation(ActKind::monomial, 1),
    };
    RandomStream rng(0xC0FFEE, 7);
    for (const auto& act : acts) {
        for (const auto& [cb, cw] : {std::pair{1.0, 1.0}, std::pair{2.0, 0.5}}) {
            const PPolynomial p = p_polynomial(act, cb, cw);
            for (int trial = 0; trial < 1000; ++trial) {
                const double x = 20.0 * (rng.next_u01() - 0.5);
                const double a1 = 100.0 * rng.next_u01();
                const double a2 = 100.0 * rng.next_u01();
                const double s1 = eval(act, x * std::sqrt(cb + cw * a1));
                const double s2 = eval(act, x * std::sqrt(cb + cw * a2));
                const double lhs = std::abs(s2 * s2 - s1 * s1);
                const double rhs = p_eval(p, std::abs(x)) * std::abs(a2 - a1) + 1e-9;
                CHECK(lhs <= rhs);
            }
        }
    }
}

TEST_CASE("cubic monomial increments escape any a-free polynomial") {
    // For sigma(x) = x^3 the increment grows with a2 at fixed x, so the
    // growth-route P cannot dominate pointwise. Kept as a regression marker
    // for the known gamma > 1 limitation.
    const auto act = make_activation(ActKind::monomial, 3);
    const PPolynomial p = p_polynomial(act, 1.0, 1.0);
    const double x = 1.0, a1 = 0.0, a2 = 100.0;
    const double lhs = std::abs(std::pow(x * std::sqrt(1.0 + a2), 6.0) -
                                std::pow(x * std::sqrt(1.0 + a1), 6.0));
    CHECK(lhs > p_eval(p, x) * std::abs(a2 - a1));
}

TEST_CASE("custom activations") {
    const auto custom = make_custom_activation(ActKind::tanh_fn, 0.9, std::nullopt, std::nullopt);
    CHECK(custom.kind == ActKind::custom);
    CHECK(eval(custom, 0.3) == doctest::Approx(std::tanh(0.3)));
    CHECK(custom.lip == 0.9);
    CHECK_THROWS_AS(
        make_custom_activation(ActKind::tanh_fn, std::nullopt, std::nullopt, std::nullopt),
        DomainError);
    CHECK_THROWS_AS(make_custom_activation(ActKind::tanh_fn, -1.0, std::nullopt, std::nullopt),
                    DomainError);
    CHECK_THROWS_AS(make_custom_activation(ActKind::custom, 1.0, std::nullopt, std::nullopt),
                    DomainError);
}
