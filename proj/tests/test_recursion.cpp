#include <cmath>

#include "doctest.h"

#include "gnncert/errors.hpp"
#include "gnncert/philox.hpp"
#include "gnncert/recursion.hpp"

using namespace gnncert;

namespace {

Architecture make_arch(int depth, std::int64_t n0, std::vector<std::int64_t> hidden,
                       std::int64_t n_out, double cb, double cw) {
    Architecture a;
    a.depth = depth;
    a.n_in = n0;
    a.hidden = std::move(hidden);
    a.n_out = n_out;
    a.cb = cb;
    a.cw = cw;
    return a;
}

const std::vector<double> kZero4 = {0.0, 0.0, 0.0, 0.0};

} // namespace

TEST_CASE("o_zero") {
    CHECK(o_zero(kZero4, 4) == 0.0);
    const std::vector<double> tens = {10.0, 10.0, 10.0, 10.0};
    CHECK(o_zero(tens, 4) == doctest::Approx(100.0));
    const std::vector<double> pm = {0.5, -0.5, 0.5, -0.5};
    CHECK(o_zero(pm, 4) == doctest::Approx(0.25));
    CHECK_THROWS_AS(o_zero(tens, 3), DomainError);
}

TEST_CASE("o_zero scales quadratically") {
    RandomStream rng(11, 0);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> x(5);
        for (double& v : x) v = 4.0 * (rng.next_u01() - 0.5);
        const double lam = 10.0 * rng.next_u01() + 0.1;
        std::vector<double> xs = x;
        for (double& v : xs) v *= lam;
        CHECK(o_zero(xs, 5) == doctest::Approx(lam * lam * o_zero(x, 5)).epsilon(1e-13));
    }
}

TEST_CASE("ReLU o_sequence closed form") {
    const auto relu = make_activation(ActKind::relu);
    const auto arch = make_arch(3, 4, {10, 10, 10}, 1, 1.0, 1.0);
    const auto seq = o_sequence(relu, arch, kZero4);
    CHECK(seq[0] == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(seq[1] == doctest::Approx(0.75).epsilon(1e-14));
    CHECK(seq[2] == doctest::Approx(0.875).epsilon(1e-14));

    const auto arch10 = make_arch(3, 4, {10, 10, 10}, 1, 10.0, 1.0);
    const auto seq10 = o_sequence(relu, arch10, kZero4);
    CHECK(seq10[0] == doctest::Approx(5.0).epsilon(1e-14));
    CHECK(seq10[1] == doctest::Approx(7.5).epsilon(1e-14));
    CHECK(seq10[2] == doctest::Approx(8.75).epsilon(1e-14));
}

TEST_CASE("ReLU o_sequence matches the geometric closed form on random configs") {
    // O^(l) = (cb/2) * sum_{k<l} (cw/2)^k + (cw/2)^l * O^(0).
    const auto relu = make_activation(ActKind::relu);
    RandomStream rng(17, 0);
    for (int trial = 0; trial < 50; ++trial) {
        const double cb = 0.1 + 4.0 * rng.next_u01();
        const double cw = 0.1 + 4.0 * rng.next_u01();
        const double x0 = 3.0 * rng.next_u01();
        const int depth = 1 + static_cast<int>(rng.next_u01() * 6.0);
        const auto arch = make_arch(depth, 1, std::vector<std::int64_t>(depth, 8), 1, cb, cw);
        const std::vector<double> x = {x0};
        const auto seq = o_sequence(relu, arch, x);
        for (int ell = 1; ell <= depth; ++ell) {
            double expect = std::pow(0.5 * cw, ell) * x0 * x0;
            for (int k = 0; k < ell; ++k) expect += 0.5 * cb * std::pow(0.5 * cw, k);
            CHECK(seq[ell - 1] == doctest::Approx(expect).epsilon(1e-12));
        }
    }
}

TEST_CASE("perceptron sequences are scale-free") {
    const auto perc = make_activation(ActKind::perceptron);
    const auto arch = make_arch(2, 4, {10, 10}, 1, 3.0, 0.2);
    const auto seq = o_sequence(perc, arch, kZero4);
    CHECK(seq[0] == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(seq[1] == doctest::Approx(0.5).epsilon(1e-14));
    for (double c : c_sequence(perc, arch, kZero4)) CHECK(c == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("ReLU c_sequence") {
    const auto relu = make_activation(ActKind::relu);
    const auto arch = make_arch(3, 4, {10, 10, 10}, 1, 1.0, 1.0);
    const auto cs = c_sequence(relu, arch, kZero4);
    const double s3 = std::sqrt(3.0);
    CHECK(cs[0] == doctest::Approx(s3).epsilon(1e-13));
    CHECK(cs[1] == doctest::Approx(1.5 * s3).epsilon(1e-13));
    CHECK(cs[2] == doctest::Approx(1.75 * s3).epsilon(1e-13));

    const auto arch10 = make_arch(3, 4, {10, 10, 10}, 1, 10.0, 1.0);
    const auto cs10 = c_sequence(relu, arch10, kZero4);
    CHECK(cs10[0] == doctest::Approx(10.0 * s3).epsilon(1e-13));
    CHECK(cs10[1] == doctest::Approx(15.0 * s3).epsilon(1e-13));
    CHECK(cs10[2] == doctest::Approx(17.5 * s3).epsilon(1e-13));
}

TEST_CASE("collective_bound") {
    const auto relu = make_activation(ActKind::relu);
    const auto perc = make_activation(ActKind::perceptron);

    const auto arch = make_arch(3, 4, {10000, 10000, 10000}, 1, 1.0, 1.0);
    CHECK(collective_bound(relu, arch, kZero4, 3) ==
          doctest::Approx(1.0416952767655163).epsilon(1e-12));

    // Single-layer sum is exactly c1/sqrt(n1).
    CHECK(collective_bound(relu, arch, kZero4, 1) ==
          doctest::Approx(std::sqrt(3.0) / 100.0).epsilon(1e-13));

    // P == 0 for the perceptron: only the k = ell term survives.
    const auto parch = make_arch(3, 4, {7, 13, 100}, 1, 1.0, 1.0);
    CHECK(collective_bound(perc, parch, kZero4, 3) == doctest::Approx(0.1).epsilon(1e-13));

    CHECK_THROWS_AS(collective_bound(relu, arch, kZero4, 4), DomainError);
}

TEST_CASE("collective_bound decreases in every width and dominates its last term") {
    const auto relu = make_activation(ActKind::relu);
    const auto base = make_arch(3, 4, {100, 100, 100}, 1, 1.0, 1.0);
    const double v0 = collective_bound(relu, base, kZero4, 3);
    for (int k = 0; k < 3; ++k) {
        auto wider = base;
        wider.hidden[static_cast<std::size_t>(k)] *= 4;
        CHECK(collective_bound(relu, wider, kZero4, 3) < v0);
    }
    const auto stats = layer_stats(relu, base, kZero4);
    for (int ell = 1; ell <= 3; ++ell)
        CHECK(collective_sum(stats, base, ell) >=
              stats.c_seq[static_cast<std::size_t>(ell - 1)] /
                  std::sqrt(static_cast<double>(base.hidden[static_cast<std::size_t>(ell - 1)])));
}

TEST_CASE("layer_stats") {
    const auto relu = make_activation(ActKind::relu);
    const auto arch = make_arch(3, 4, {10, 10, 10}, 1, 1.0, 1.0);
    const auto stats = layer_stats(relu, arch, kZero4);
    CHECK(stats.o0 == 0.0);
    CHECK(stats.nu_sq == doctest::Approx(1.875).epsilon(1e-14));
    REQUIRE(stats.p_l2.has_value());
    CHECK(*stats.p_l2 == doctest::Approx(std::sqrt(1.5)).epsilon(1e-14));
    CHECK(stats.o_last() == doctest::Approx(0.875).epsilon(1e-14));
}

TEST_CASE("architecture validation") {
    auto arch = make_arch(2, 4, {10}, 1, 1.0, 1.0);
    CHECK_THROWS_AS(arch.validate(), DomainError); // widths/depth mismatch
    arch = make_arch(1, 4, {10}, 1, 0.0, 1.0);
    CHECK_THROWS_AS(arch.validate(), DomainError); // cb must be positive
    arch = make_arch(1, 4, {0}, 1, 1.0, 1.0);
    CHECK_THROWS_AS(arch.validate(), DomainError);
}
