#pragma once

#include <complex>

namespace knotsum {

// J_nu(x) by its power series sum_j (-1)^j (x/2)^{2j+nu} / (j! Gamma(j+nu+1)),
// accumulated in long double. Integer negative orders use J_{-m} = (-1)^m J_m.
// Adequate for |x| up to about 30.
[[nodiscard]] std::complex<double> bessel_j_series(double nu, std::complex<double> x);

// Ai(x) from the Maclaurin series of the two Airy solutions; adequate for |x| <= 12.
[[nodiscard]] double airy_ai_series(double x);

}  // namespace knotsum
