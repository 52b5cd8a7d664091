#include <doctest.h>

#include <vector>

#include "knotsum/decompose.hpp"
#include "knotsum/special.hpp"

using namespace knotsum;

TEST_SUITE("decompose") {
  TEST_CASE("contour names") {
    CHECK(parse_contour("unit_circle") == Contour::UnitCircle);
    CHECK(parse_contour("continued") == Contour::Continued);
    CHECK(parse_contour("real_line") == Contour::RealLine);
    CHECK(parse_contour(to_string(Contour::Continued)) == Contour::Continued);
    CHECK_THROWS_AS((void)parse_contour("spiral"), std::invalid_argument);
  }

  TEST_CASE("chambers") {
    CHECK(chamber_of(ExponentFamily::bessel(2.0, 1.5)) == "oscillatory");
    CHECK(chamber_of(ExponentFamily::bessel(3.0, 0.5)) == "damped");
    CHECK(chamber_of(ExponentFamily::bessel(2.0, 1.0)) == "degenerate");
    CHECK(chamber_of(ExponentFamily::bessel(cplx(2.0, 0.3), 1.0)) == "complex");
  }

  TEST_CASE("oscillatory circle is the sum of both thimbles") {
    const auto d = decompose_contour(ExponentFamily::bessel(2.0, 1.5), Contour::UnitCircle);
    CHECK(d.coefficients == std::vector<int>{1, 1});
    CHECK(std::abs(d.residual) < 1e-10);
    CHECK(d.max_gap < 1e-6);
  }

  TEST_CASE("damped circle passes through one saddle") {
    const auto d = decompose_contour(ExponentFamily::bessel(3.0, 0.5), Contour::UnitCircle);
    int nonzero = 0;
    for (int a : d.coefficients) nonzero += a != 0;
    CHECK(nonzero == 1);
    CHECK(std::abs(d.residual) < 1e-10);
  }

  TEST_CASE("degenerate point uses both cycles of the monkey saddle") {
    const auto d = decompose_contour(ExponentFamily::bessel(2.0, 1.0), Contour::UnitCircle);
    CHECK(d.chamber == "degenerate");
    CHECK(d.coefficients == std::vector<int>{1, 1});
    CHECK(std::abs(d.residual) < 1e-10);
  }

  TEST_CASE("Airy real line") {
    const auto osc = decompose_contour(ExponentFamily::airy(1.0, -3.0), Contour::RealLine);
    CHECK(osc.coefficients == std::vector<int>{1, -1});
    CHECK(std::abs(osc.residual) < 1e-10);
    const auto damped = decompose_contour(ExponentFamily::airy(1.0, 2.0), Contour::RealLine);
    CHECK(std::abs(damped.residual) < 1e-10);
  }

  TEST_CASE("continued contour at non-integer k") {
    for (double k : {1.3, 2.5, 3.7}) {
      const auto fam = ExponentFamily::bessel(k, 0.6);
      const auto d = decompose_contour(fam, Contour::Continued);
      CHECK(std::abs(d.reference - bessel_j_series(-k, 1.2)) < 1e-11);
      CHECK(std::abs(d.residual) < 1e-8);
    }
  }

  TEST_CASE("continued integral reuses the calibration at other parameters") {
    const auto cal = decompose_contour(ExponentFamily::bessel(2.5, 0.6), Contour::Continued);
    const auto fam = ExponentFamily::bessel(3.5, 0.9);
    const LogComplex v = continued_integral(fam, cal);
    const cplx expect = bessel_j_series(-3.5, 1.8);
    CHECK(std::abs(v.value() - expect) < 1e-8 * std::abs(expect));
  }

  TEST_CASE("growth dichotomy on a short list") {
    const std::vector<int> ns{10, 20, 30, 40};
    CHECK(growth_dichotomy(0.0, ns).rate <= 1e-3);
    CHECK(growth_dichotomy(0.5, ns).rate >= 0.01);
  }
}
