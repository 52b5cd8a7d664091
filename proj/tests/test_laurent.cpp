#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "knotsum/laurent.hpp"

using namespace knotsum;

namespace {

LaurentPoly delta() { return -LaurentPoly::monomial(2) - LaurentPoly::monomial(-2); }

}  // namespace

TEST_SUITE("laurent") {
  TEST_CASE("canonical form drops zeros and merges terms") {
    const auto p = LaurentPoly::from_terms({{3, 1}, {-1, 2}, {3, -1}, {0, 0}, {-1, {0, 1}}});
    REQUIRE(p.terms().size() == 1);
    CHECK(p.terms()[0].exp == -1);
    CHECK(p.coeff(-1) == GaussInt{2, 1});
    CHECK(p.coeff(3) == GaussInt{});
    CHECK(LaurentPoly::monomial(5, 0).is_zero());
    CHECK((LaurentPoly::monomial(2) - LaurentPoly::monomial(2)).is_zero());
  }

  TEST_CASE("ring identities") {
    const LaurentPoly a = LaurentPoly::from_terms({{-3, 2}, {1, {0, -1}}, {4, 5}});
    const LaurentPoly b = LaurentPoly::from_terms({{-1, {1, 1}}, {2, -3}});
    const LaurentPoly c = LaurentPoly::from_terms({{0, 7}, {6, {0, 2}}});
    CHECK(a * b == b * a);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a + LaurentPoly{} == a);
    CHECK(a * LaurentPoly(1) == a);
    CHECK((a - a).is_zero());
  }

  TEST_CASE("loop value squared") {
    // (-u^2 - u^-2)^2 = u^4 + 2 + u^-4
    CHECK(delta().pow(2) == LaurentPoly::from_terms({{4, 1}, {0, 2}, {-4, 1}}));
    CHECK(delta().pow(0) == LaurentPoly(1));
    CHECK(delta().to_string() == "-u^-2 - u^2");
  }

  TEST_CASE("mirror and shift") {
    const LaurentPoly a = LaurentPoly::from_terms({{-3, 2}, {4, 5}});
    CHECK(a.mirror() == LaurentPoly::from_terms({{3, 2}, {-4, 5}}));
    CHECK(a.mirror().mirror() == a);
    CHECK(a.shifted(3) == a * LaurentPoly::monomial(3));
    CHECK((a * LaurentPoly::monomial(1)).mirror() == a.mirror() * LaurentPoly::monomial(-1));
  }

  TEST_CASE("exact division") {
    const LaurentPoly q = LaurentPoly::from_terms({{-4, 1}, {0, -1}, {8, 3}});
    const auto back = (q * delta()).divide_exact(delta());
    REQUIRE(back.has_value());
    CHECK(*back == q);
    CHECK_FALSE((q * delta() + LaurentPoly(1)).divide_exact(delta()).has_value());
    CHECK_THROWS_AS((void)q.divide_exact(LaurentPoly{}), std::domain_error);
  }

  TEST_CASE("support residues") {
    const LaurentPoly p = LaurentPoly::from_terms({{-6, 1}, {2, 3}, {10, -1}});
    CHECK(p.supported_on(2, 4));
    CHECK_FALSE(p.supported_on(0, 4));
    CHECK(p.supported_on(-2, 4));
    CHECK(LaurentPoly{}.supported_on(1, 4));
  }

  TEST_CASE("real check") {
    CHECK(delta().is_real());
    CHECK_FALSE(LaurentPoly(GaussInt{0, 1}).is_real());
  }

  TEST_CASE("overflow is reported") {
    const std::int64_t big = std::numeric_limits<std::int64_t>::max() / 2 + 1;
    const LaurentPoly p(big);
    CHECK_THROWS_AS((void)(p + p), std::overflow_error);
    CHECK_THROWS_AS((void)(p * p), std::overflow_error);
  }

  TEST_CASE("evaluation at roots of unity uses exact angle reduction") {
    // q = exp(2 pi i / (k+2)); u^{4(k+2)} = 1 exactly.
    for (int k = 1; k <= 6; ++k) {
      const auto v = LaurentPoly::monomial(4 * (k + 2) * 1000).eval_at_root_of_unity(k);
      CHECK(v.real() == doctest::Approx(1.0).epsilon(1e-15));
      CHECK(std::abs(v.imag()) < 1e-15);
    }
    // delta at k: -2 cos(pi / (k+2)).
    for (int k = 1; k <= 6; ++k) {
      const auto v = delta().eval_at_root_of_unity(k);
      CHECK(v.real() == doctest::Approx(-2.0 * std::cos(std::numbers::pi / (k + 2))).epsilon(1e-14));
    }
    CHECK_THROWS_AS((void)delta().eval_at_root_of_unity(-2), std::domain_error);
  }

  TEST_CASE("generic evaluation") {
    const std::complex<double> u(0.3, 0.9);
    const LaurentPoly p = LaurentPoly::from_terms({{-2, 3}, {1, {0, 1}}});
    const auto expect = 3.0 * std::pow(u, -2) + std::complex<double>(0, 1) * u;
    CHECK(std::abs(p.eval(u) - expect) < 1e-14);
  }

  TEST_CASE("unit inverse") {
    for (GaussInt u : {GaussInt{1}, GaussInt{-1}, GaussInt{0, 1}, GaussInt{0, -1}}) CHECK(u * unit_inverse(u) == GaussInt{1});
    CHECK_THROWS_AS((void)unit_inverse(GaussInt{2}), std::domain_error);
  }
}
