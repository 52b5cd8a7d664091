#pragma once

#include <complex>
#include <functional>

namespace knotsum {

struct QuadratureResult {
  std::complex<double> value;
  double error = 0.0;
  int intervals = 0;
};

using ComplexIntegrand = std::function<std::complex<double>(double)>;

// Globally adaptive 7/15-point Gauss-Kronrod on [a, b]; splits the interval
// with the largest |K15 - G7| until the summed estimate meets
// max(abs_tol, rel_tol * |I|). Throws std::runtime_error if max_intervals is hit.
QuadratureResult integrate_adaptive(const ComplexIntegrand& f, double a, double b, double abs_tol = 1e-13,
                                    double rel_tol = 1e-13, int max_intervals = 20000);

}  // namespace knotsum
