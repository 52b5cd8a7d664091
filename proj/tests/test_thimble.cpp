#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "knotsum/exponent.hpp"
#include "knotsum/ode.hpp"
#include "knotsum/quadrature.hpp"
#include "knotsum/special.hpp"
#include "knotsum/thimble.hpp"
#include "knotsum/thimble_batch.hpp"

using namespace knotsum;
using std::numbers::pi;

TEST_SUITE("numerics") {
  TEST_CASE("adaptive quadrature") {
    CHECK(integrate_adaptive([](double x) { return cplx(std::exp(x)); }, 0.0, 1.0).value.real() ==
          doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-14));
    const cplx osc = integrate_adaptive([](double x) { return std::exp(cplx(0, 40.0 * x)); }, 0.0, pi).value;
    CHECK(std::abs(osc) < 1e-13);
  }

  TEST_CASE("Dormand-Prince on y' = i y") {
    StepControl ctl;
    ctl.rtol = 1e-12;
    ctl.atol = 1e-14;
    CState<1> y0{cplx(1.0)};
    const auto r = dormand_prince<1>([](double, const CState<1>& y) { return CState<1>{cplx(0, 1) * y[0]}; }, 0.0, y0,
                                     2.0 * pi, ctl, [](double, const CState<1>&) { return true; });
    CHECK(r.first == doctest::Approx(2.0 * pi));
    CHECK(std::abs(r.second[0] - 1.0) < 1e-10);
  }

  TEST_CASE("Bessel series") {
    // Tabulated values of J_0(1), J_1(2) and J_{1/2}(x) = sqrt(2/(pi x)) sin x.
    CHECK(bessel_j_series(0, 1.0).real() == doctest::Approx(0.7651976865579666).epsilon(1e-15));
    CHECK(bessel_j_series(1, 2.0).real() == doctest::Approx(0.5767248077568734).epsilon(1e-15));
    CHECK(bessel_j_series(-3, 2.0).real() == doctest::Approx(-bessel_j_series(3, 2.0).real()).epsilon(1e-15));
    const double x = 1.7;
    CHECK(bessel_j_series(0.5, x).real() == doctest::Approx(std::sqrt(2.0 / (pi * x)) * std::sin(x)).epsilon(1e-14));
  }

  TEST_CASE("Airy series") {
    CHECK(airy_ai_series(0.0) == doctest::Approx(0.3550280538878172).epsilon(1e-15));
    CHECK(airy_ai_series(1.0) == doctest::Approx(0.1352924163128814).epsilon(1e-13));
    CHECK(airy_ai_series(-2.0) == doctest::Approx(0.2274074282016856).epsilon(1e-13));
  }
}

TEST_SUITE("thimble") {
  TEST_CASE("Bessel saddles solve the critical equation") {
    const auto fam = ExponentFamily::bessel(2.0, 1.5);
    const auto ss = find_saddles(fam, {-1, 1, true});
    CHECK(ss.size() == 6);
    for (const auto& s : ss) {
      CHECK(s.residual < 1e-12);
      CHECK(std::abs(fam.d1(s.w)) < 1e-12);
      CHECK(std::abs(s.value - fam.value(s.w)) < 1e-12);
      REQUIRE(s.descent.size() == 2);
      CHECK(std::abs(s.descent[0] + s.descent[1]) < 1e-12);
    }
    // Sheets are deck translates.
    CHECK(std::abs(ss[4].w - ss[0].w - cplx(0, 4 * pi)) < 1e-12);
  }

  TEST_CASE("lambda = 0 has no saddles") {
    CHECK_THROWS_AS((void)find_saddles(ExponentFamily::bessel(2.0, 0.0)), SaddleError);
  }

  TEST_CASE("degenerate point at k = 2n") {
    const auto fam = ExponentFamily::bessel(2.0, 1.0);
    const auto all = find_saddles(fam, {0, 0, true});
    REQUIRE(all.size() == 1);
    CHECK(all[0].degenerate);
    CHECK(all[0].order == 3);
    CHECK(all[0].descent.size() == 3);
    CHECK(find_saddles(fam, {0, 0, false}).empty());
  }

  TEST_CASE("Airy saddles at t = -3") {
    const double k = 2.0;
    const auto ss = find_saddles(ExponentFamily::airy(k, -3.0));
    REQUIRE(ss.size() == 2);
    CHECK(std::abs(ss[0].w - 1.0) < 1e-14);
    CHECK(std::abs(ss[1].w + 1.0) < 1e-14);
    CHECK(std::abs(ss[0].value - cplx(0, -2.0 * k)) < 1e-13);
    CHECK(std::abs(ss[1].value - cplx(0, 2.0 * k)) < 1e-13);
  }

  TEST_CASE("deck factor") {
    const auto fam = ExponentFamily::bessel(2.5, 1.0);
    CHECK(std::abs(fam.deck_factor(1) + 1.0) < 1e-15);
    CHECK(std::abs(fam.deck_factor(2) - 1.0) < 1e-15);
    CHECK(std::abs(ExponentFamily::bessel(3.0, 1.0).deck_factor(7) - 1.0) == 0.0);
  }

  TEST_CASE("direct Bessel integral matches the series") {
    for (int k = 0; k <= 4; ++k)
      for (double n : {0.5, 1.0, 2.5}) {
        const cplx d = direct_integral(ExponentFamily::bessel(k, n));
        CHECK(std::abs(d - bessel_j_series(-k, 2.0 * n)) < 1e-10);
      }
    CHECK_THROWS_AS((void)direct_integral(ExponentFamily::bessel(2.5, 1.0)), std::domain_error);
  }

  TEST_CASE("continued quadrature matches J_{-k} off integer k") {
    for (double k : {0.5, 1.3, 2.5, 3.7})
      for (double n : {0.6, 1.5}) {
        const cplx c = continued_quadrature(ExponentFamily::bessel(k, n));
        CHECK(std::abs(c - bessel_j_series(-k, 2.0 * n)) < 1e-11);
      }
  }

  TEST_CASE("direct Airy integral") {
    for (double k : {0.5, 1.0, 3.0})
      for (double t : {-3.0, -0.5, 1.0}) {
        const cplx d = direct_integral(ExponentFamily::airy(k, t));
        const double c = std::cbrt(3.0 * k);
        const double expect = 2.0 * pi / c * airy_ai_series(t * std::cbrt(k * k) / std::cbrt(3.0));
        CHECK(std::abs(d - expect) < 1e-10);
      }
  }

  TEST_CASE("flow conserves phase and lowers h") {
    const auto fam = ExponentFamily::bessel(2.0, 1.5);
    const FlowTrace tr = flow(fam, cplx(0.3, 1.2), 20.0);
    CHECK(tr.points.size() > 2);
    CHECK(tr.max_phase_drift() < 1e-8);
    CHECK(tr.monotone());
  }

  TEST_CASE("upward flow from a thimble point approaches its saddle") {
    // Transverse errors grow on the way up, so the start must lie on the
    // traced thimble rather than on its tangent line.
    const auto fam = ExponentFamily::bessel(2.0, 1.5);
    const auto p = find_saddles(fam)[0];
    const ThimbleTrace t = build_thimble(fam, p, p.value.real() - 5.0);
    cplx start = t.polyline.back().w;
    for (const auto& pt : t.polyline)
      if (std::abs(pt.w - p.w) > 0.05 && std::abs(pt.w - p.w) < std::abs(start - p.w)) start = pt.w;
    FlowOptions o;
    o.h_drop = 1e9;
    // Long enough to come within 1e-6, short enough that each step still
    // raises h by more than its rounding error.
    const FlowTrace tr = flow(fam, start, -11.0, o);
    double closest = 1.0;
    for (const auto& pt : tr.points) closest = std::min(closest, std::abs(pt.w - p.w));
    CHECK(closest < 1e-6);
    CHECK(tr.monotone(true));
    CHECK(tr.max_phase_drift() < 1e-8);
  }

  TEST_CASE("thimble polyline peaks at the saddle with constant phase") {
    const auto fam = ExponentFamily::bessel(3.0, 2.0);
    for (const auto& p : find_saddles(fam)) {
      const ThimbleTrace t = build_thimble(fam, p, p.value.real() - 30.0);
      const auto h = t.h_values();
      REQUIRE(t.saddle_index < h.size());
      for (std::size_t i = 0; i < h.size(); ++i) {
        if (i < t.saddle_index) CHECK(h[i] < h[i + 1]);
        if (i > t.saddle_index) CHECK(h[i] < h[i - 1]);
      }
      CHECK(t.max_phase_drift() < 1e-9);
    }
  }

  TEST_CASE("reversing the thimble negates the integral") {
    const auto fam = ExponentFamily::bessel(3.0, 2.0);
    const auto p = find_saddles(fam)[0];
    SaddleDatum q = p;
    std::swap(q.descent[0], q.descent[1]);
    const cplx a = integrate_thimble(fam, p).value();
    const cplx b = integrate_thimble(fam, q).value();
    CHECK(std::abs(a + b) < 1e-12 * std::abs(a));
  }

  TEST_CASE("single Gaussian thimble at large k") {
    // I_p ~ measure * e^{S(p)} sqrt(2 pi / -S''(p)) along the descent direction.
    const double k = 200.0;
    const auto fam = ExponentFamily::bessel(k, k);
    const auto p = find_saddles(fam)[0];
    const ThimbleIntegral ti = integrate_thimble(fam, p);
    const cplx lead = fam.measure() * p.descent[1] * std::sqrt(2.0 * pi / std::abs(p.hessian));
    CHECK(std::abs(ti.normalized / lead - 1.0) < 5e-3);
  }

  TEST_CASE("asymptotic fit converges at observed order one") {
    const std::vector<double> ks{25, 50, 100, 200};
    const auto fit = asymptotic_fit([](double k) { return ExponentFamily::bessel(k, k); },
                                    cplx(0.0, 2.0 * pi / 3.0), ks);
    CHECK(fit.converged);
    CHECK(std::abs(fit.c0_estimate / fit.gaussian_c0 - 1.0) < 0.01);
  }

  TEST_CASE("OpenMP batch equals the serial batch") {
    std::vector<ThimbleTask> tasks;
    for (double n : {0.5, 1.5, 2.5})
      for (int k = 1; k <= 3; ++k) {
        const auto fam = ExponentFamily::bessel(k, n);
        for (const auto& s : find_saddles(fam, {0, 0, false})) tasks.push_back({fam, s, 0});
      }
    const auto serial = integrate_batch_serial(tasks);
    for (int th : {1, 2, 4}) {
      const auto par = integrate_batch(tasks, {}, th);
      REQUIRE(par.size() == serial.size());
      for (std::size_t i = 0; i < par.size(); ++i) CHECK(par[i].normalized == serial[i].normalized);
    }
  }
}
