#pragma once

// Downward flows, Lefschetz thimbles and their integrals for an ExponentFamily.
//
// A descent ray from a saddle p is parametrised by sigma with
// S(w(sigma)) = S(p) - sigma^m (m = 2, or 3 at a degenerate point), so
// h = Re S falls as sigma^m and Im S is constant by construction. The ray
// integral J = int e^{S(w) - S(p)} dw is accumulated alongside w.

#include <complex>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "knotsum/exponent.hpp"

namespace knotsum {

class ThimbleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct TracePoint {
  double s = 0.0;  // flow time or ray parameter
  cplx w;
  double h = 0.0;      // Re S(w)
  double phase = 0.0;  // Im S(w)
};

enum class FlowStop { Duration, Cutoff, Escape };

struct FlowOptions {
  double rtol = 1e-10;
  double atol = 1e-12;
  double max_step = 0.05;
  // Stop once h has fallen this far below its starting value.
  double h_drop = 60.0;
  double max_abs_w = 1e3;
};

struct FlowTrace {
  std::vector<TracePoint> points;
  FlowStop stop = FlowStop::Duration;
  [[nodiscard]] double max_phase_drift() const;
  // True if h is strictly decreasing along samples (strictly increasing for a
  // backward flow).
  [[nodiscard]] bool monotone(bool backward = false) const;
};

// Gradient flow dw/dt = -(1/2) conj(S'(w)) of h = Re S for t in [0, duration];
// negative durations flow upward. Throws ThimbleError on step underflow.
[[nodiscard]] FlowTrace flow(const ExponentFamily& fam, cplx start, double duration, const FlowOptions& opt = {});

struct RayOptions {
  double tau_max = 50.0;  // total drop of h traced from the saddle
  double rtol = 1e-13;
  double atol = 1e-15;
  double max_step = 0.25;
  double max_abs_w = 1e3;
  // Side on which a ray that runs into another saddle passes it: +1 turns
  // left of the direction of travel, -1 right.
  int stokes_side = 1;
  double stokes_tol = 1e-9;
  double hop_radius = 1e-3;
  bool record = true;
  // Nonzero step factor scales the initial offset and step size, for
  // refinement checks.
  double refine = 1.0;
};

struct Ray {
  std::vector<TracePoint> points;
  cplx integral;           // int e^{S - S(p)} dw along the ray
  std::vector<cplx> hops;  // saddles passed on a Stokes line
  cplx end;
};

// Traces the descent ray of `p` leaving along p.descent[direction]. `others`
// are the saddles that may lie on the ray; one met exactly is passed on the
// configured side and the ray continues down that saddle's descent ray.
[[nodiscard]] Ray trace_ray(const ExponentFamily& fam, const SaddleDatum& p, int direction,
                            std::span<const SaddleDatum> others, const RayOptions& opt = {});

// A Lefschetz thimble: incoming ray (reversed) through p to the outgoing ray.
struct ThimbleTrace {
  SaddleDatum saddle;
  std::vector<TracePoint> polyline;  // in-ray reversed, p, out-ray
  std::size_t saddle_index = 0;      // position of p in the polyline
  int in_direction = 0;
  int out_direction = 1;
  std::vector<cplx> hops;

  [[nodiscard]] std::vector<double> h_values() const;
  [[nodiscard]] std::vector<double> phases() const;
  [[nodiscard]] double max_phase_drift() const;
};

// Thimble basis index: 0 for a regular saddle; 0 or 1 for a degenerate one,
// whose three rays r0, r1, r2 give the cycles r0 -> r1 and r1 -> r2.
struct ThimbleOptions {
  RayOptions ray;
  int basis = 0;
  // Sheets searched for saddles that may sit on a ray (Bessel); relative to p.
  int neighbour_sheets = 2;
};

[[nodiscard]] ThimbleTrace build_thimble(const ExponentFamily& fam, const SaddleDatum& p, double cutoff_h,
                                         const ThimbleOptions& opt = {});

// I_p = measure * int_{Gamma_p} e^{S}, held as normalized * e^{exponent} with
// exponent = S(p) so that large k does not overflow.
struct ThimbleIntegral {
  cplx normalized;
  cplx exponent;
  std::vector<cplx> hops;
  [[nodiscard]] cplx value() const;
  [[nodiscard]] double log_abs() const;
};

[[nodiscard]] ThimbleIntegral integrate_thimble(const ExponentFamily& fam, const SaddleDatum& p,
                                                const ThimbleOptions& opt = {});

// Saddles from fam that may lie on rays of p (Bessel: p's sheet +- opt.neighbour_sheets).
[[nodiscard]] std::vector<SaddleDatum> ray_obstacles(const ExponentFamily& fam, const SaddleDatum& p,
                                                     int neighbour_sheets);

// Reference integrals by direct quadrature.
// Bessel with integer k: (1/2pi) int_0^{2pi} e^{ik theta + 2in sin theta}.
// Airy: the real line rotated into the convergent sectors at infinity.
[[nodiscard]] cplx direct_integral(const ExponentFamily& fam, double tol = 1e-13);
// Bessel, Re n > 0, any k: circle arc plus the two real-axis tails that
// continue the circle integral off integer k.
[[nodiscard]] cplx continued_quadrature(const ExponentFamily& fam, double tol = 1e-13);

struct AsymptoticRow {
  double k = 0.0;
  cplx estimate;  // I_p e^{-S(p)} k^{1/2}
  double deviation = 0.0;  // |estimate - c0_gaussian|
};

struct AsymptoticFit {
  cplx gaussian_c0;  // measure * descent * sqrt(2 pi / |F''|)
  cplx c0_estimate;  // Richardson extrapolation of the last two rows
  std::vector<AsymptoticRow> rows;
  std::vector<double> ratios;  // successive deviation ratios
  bool converged = false;      // every ratio within [1.6, 2.4]
};

// family_at(k) gives the exponent at scale k; the saddle is followed from
// `hint` by Newton iteration at each k.
[[nodiscard]] AsymptoticFit asymptotic_fit(const std::function<ExponentFamily(double)>& family_at, cplx hint,
                                           std::span<const double> ks, const ThimbleOptions& opt = {});

}  // namespace knotsum
