#pragma once

// Dormand-Prince 5(4) embedded Runge-Kutta pair with adaptive step control.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>

namespace knotsum {

template <std::size_t N>
using CState = std::array<std::complex<double>, N>;

struct StepControl {
  double rtol = 1e-11;
  double atol = 1e-13;
  double max_step = 0.25;
  double min_step = 1e-14;
  double initial_step = 1e-3;
  long max_steps = 2'000'000;
};

class StepUnderflow : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Integrates y' = f(t, y) from t0 toward t_end (t_end > t0). `accept(t, y)` is
// called after every accepted step and returns false to stop early. Returns
// the final (t, y).
template <std::size_t N, class F, class Accept>
std::pair<double, CState<N>> dormand_prince(F&& f, double t0, const CState<N>& y0, double t_end,
                                            const StepControl& ctl, Accept&& accept) {
  constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  constexpr double a21 = 1.0 / 5;
  constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
  constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                   a65 = -5103.0 / 18656;
  constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                   e6 = 22.0 / 525, e7 = -1.0 / 40;

  double t = t0;
  CState<N> y = y0;
  double h = std::min(ctl.initial_step, t_end - t0);
  CState<N> k1 = f(t, y);
  long steps = 0;
  auto axpy = [](const CState<N>& base, std::initializer_list<std::pair<double, const CState<N>*>> terms, double hh) {
    CState<N> out = base;
    for (const auto& [c, k] : terms)
      for (std::size_t i = 0; i < N; ++i) out[i] += hh * c * (*k)[i];
    return out;
  };
  while (t < t_end) {
    if (++steps > ctl.max_steps) throw StepUnderflow("dormand_prince: step budget exhausted");
    h = std::min({h, ctl.max_step, t_end - t});
    const CState<N> k2 = f(t + c2 * h, axpy(y, {{a21, &k1}}, h));
    const CState<N> k3 = f(t + c3 * h, axpy(y, {{a31, &k1}, {a32, &k2}}, h));
    const CState<N> k4 = f(t + c4 * h, axpy(y, {{a41, &k1}, {a42, &k2}, {a43, &k3}}, h));
    const CState<N> k5 = f(t + c5 * h, axpy(y, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}, h));
    const CState<N> k6 = f(t + h, axpy(y, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}, h));
    const CState<N> y5 = axpy(y, {{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}}, h);
    const CState<N> k7 = f(t + h, y5);
    double err = 0.0;
    bool finite = true;
    for (std::size_t i = 0; i < N; ++i) {
      const std::complex<double> e =
          h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
      const double scale = ctl.atol + ctl.rtol * std::max(std::abs(y[i]), std::abs(y5[i]));
      const double r = std::abs(e) / scale;
      if (!std::isfinite(r)) finite = false;
      err = std::max(err, r);
    }
    if (finite && err <= 1.0) {
      t += h;
      y = y5;
      k1 = k7;
      if (!accept(t, y)) break;
      const double grow = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
      h *= grow;
    } else {
      h *= finite ? std::clamp(0.9 * std::pow(err, -0.25), 0.1, 0.5) : 0.1;
      if (h < ctl.min_step) throw StepUnderflow("dormand_prince: step size underflow");
    }
  }
  return {t, y};
}

}  // namespace knotsum
