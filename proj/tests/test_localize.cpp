#include <cmath>
#include <limits>

#include "doctest.h"

#include "gnncert/errors.hpp"
#include "gnncert/localize.hpp"

using namespace gnncert;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

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

TEST_CASE("limit_rect_prob") {
    CHECK(limit_rect_prob(1.5, Rect::whole_space(3)) == 1.0);

    const double nu = std::sqrt(1.5);
    Rect sym;
    sym.sides = {{-nu, nu}};
    CHECK(limit_rect_prob(1.5, sym) == doctest::Approx(0.6826894921370859).epsilon(1e-12));

    Rect orthant;
    orthant.sides = {{0.0, kInf}, {0.0, kInf}};
    CHECK(limit_rect_prob(2.0, orthant) == doctest::Approx(0.25).epsilon(1e-14));

    CHECK_THROWS_AS(limit_rect_prob(0.0, sym), DomainError);
}

TEST_CASE("limit_rect_prob is monotone under inclusion and sums with the complement") {
    Rect inner, outer;
    inner.sides = {{-0.5, 1.0}};
    outer.sides = {{-1.0, 2.0}};
    CHECK(limit_rect_prob(1.0, inner) < limit_rect_prob(1.0, outer));

    Rect left, right;
    left.sides = {{-kInf, 0.7}};
    right.sides = {{0.7, kInf}};
    CHECK(limit_rect_prob(2.3, left) + limit_rect_prob(2.3, right) ==
          doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("certified_interval shallow") {
    const auto relu = make_activation(ActKind::relu);
    const auto arch = make_arch(1, 4, {10000}, 1, 1.0, 1.0);
    const double nu = std::sqrt(1.5);
    Rect rect;
    rect.sides = {{-nu, nu}};
    const auto rep = certified_interval(relu, arch, kZero4, rect);
    CHECK(rep.mode == LocalizeMode::tv_shallow);
    CHECK(rep.p_limit == doctest::Approx(0.6826894921370859).epsilon(1e-12));
    CHECK(rep.c_bound == doctest::Approx(0.0149071198499986).epsilon(1e-12));
    CHECK(rep.lo == doctest::Approx(0.6677823722870875).epsilon(1e-10));
    CHECK(rep.hi == doctest::Approx(0.6975966119870847).epsilon(1e-10));
    CHECK(rep.lo >= 0.0);
    CHECK(rep.hi <= 1.0);
    CHECK(rep.lo <= rep.p_limit);
    CHECK(rep.p_limit <= rep.hi);
}

TEST_CASE("certified_interval deep matches the large-width grid cell") {
    const auto relu = make_activation(ActKind::relu);
    const auto arch =
        make_arch(3, 4, std::vector<std::int64_t>(3, 1000000000), 1, 1.0, 1.0);
    Rect rect;
    rect.sides = {{-1.0, 2.0}};
    const auto rep = certified_interval(relu, arch, kZero4, rect);
    CHECK(rep.mode == LocalizeMode::convex_deep);
    CHECK(rep.c_bound == doctest::Approx(0.2801446453).epsilon(1e-8));
}

TEST_CASE("vacuous clipping when the bound exceeds one") {
    const auto relu = make_activation(ActKind::relu);
    const auto arch = make_arch(3, 4, {10, 10, 10}, 1, 1.0, 1.0);
    Rect rect;
    rect.sides = {{-1.0, 1.0}};
    const auto rep = certified_interval(relu, arch, kZero4, rect);
    CHECK(rep.c_bound > 1.0);
    CHECK(rep.lo == 0.0);
    CHECK(rep.hi == 1.0);
}

TEST_CASE("rect parsing") {
    const Rect r = parse_rect("-1:2.5,-inf:inf,0:0");
    REQUIRE(r.dim() == 3);
    CHECK(r.sides[0].first == -1.0);
    CHECK(r.sides[0].second == 2.5);
    CHECK(r.sides[1].first == -kInf);
    CHECK(r.sides[1].second == kInf);
    CHECK(r.sides[2].first == 0.0);

    CHECK_THROWS_AS(parse_rect("1,2"), DomainError);    // missing colon
    CHECK_THROWS_AS(parse_rect("2:1"), DomainError);    // lo > hi
    CHECK_THROWS_AS(parse_rect("a:b"), DomainError);    // not numbers
    CHECK_THROWS_AS(parse_rect(""), DomainError);
}

TEST_CASE("dimension mismatches are rejected") {
    const auto relu = make_activation(ActKind::relu);
    const auto arch = make_arch(1, 4, {10}, 1, 1.0, 1.0);
    Rect rect2 = Rect::whole_space(2);
    CHECK_THROWS_AS(certified_interval(relu, arch, kZero4, rect2), DomainError);
}
