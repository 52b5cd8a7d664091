#include "knotsum/special.hpp"

#include <cmath>
#include <stdexcept>

namespace knotsum {

namespace {

using cld = std::complex<long double>;

bool is_integer(double v) { return std::nearbyint(v) == v; }

}  // namespace

std::complex<double> bessel_j_series(double nu, std::complex<double> x) {
  if (is_integer(nu) && nu < 0) {
    const auto m = static_cast<long>(-nu);
    const std::complex<double> v = bessel_j_series(-nu, x);
    return (m % 2 == 0) ? v : -v;
  }
  if (x == 0.0) return nu == 0.0 ? 1.0 : 0.0;
  const cld half = cld(x) / 2.0L;
  const cld q = -half * half;
  // Principal branch of (x/2)^nu.
  cld term = std::pow(half, static_cast<long double>(nu)) / std::tgamma(static_cast<long double>(nu) + 1.0L);
  cld sum = term;
  const long double scale = std::abs(cld(x));
  for (int j = 1; j < 2000; ++j) {
    term *= q / (static_cast<long double>(j) * (static_cast<long double>(j) + nu));
    sum += term;
    if (j > scale && std::abs(term) <= 1e-21L * std::abs(sum)) break;
  }
  return {static_cast<double>(sum.real()), static_cast<double>(sum.imag())};
}

double airy_ai_series(double x) {
  if (std::abs(x) > 12.0) throw std::domain_error("airy_ai_series: |x| too large for the series");
  const long double x3 = static_cast<long double>(x) * x * x;
  long double f = 1.0L, g = x, tf = 1.0L, tg = x;
  for (int k = 1; k < 400; ++k) {
    tf *= x3 / ((3.0L * k - 1.0L) * (3.0L * k));
    tg *= x3 / ((3.0L * k) * (3.0L * k + 1.0L));
    f += tf;
    g += tg;
    if (std::abs(tf) + std::abs(tg) <= 1e-22L * (std::abs(f) + std::abs(g))) break;
  }
  // Ai(0) = 3^{-2/3} / Gamma(2/3), -Ai'(0) = 3^{-1/3} / Gamma(1/3).
  const long double c1 = 0.355028053887817239260063186004183L;
  const long double c2 = 0.258819403792806798405183560189203L;
  return static_cast<double>(c1 * f - c2 * g);
}

}  // namespace knotsum
