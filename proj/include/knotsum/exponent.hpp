#pragma once

// Holomorphic exponents S(w) for the two model integrals:
//   Bessel  S(w) = k w + n (e^w - e^{-w}),  measure dw / (2 pi i), on the w = log z cover
//   Airy    S(x) = i k (x^3 + t x),         measure dx
// S is k F with F(w) = w + lambda (e^w - e^{-w}), lambda = n / k.

#include <array>
#include <complex>
#include <stdexcept>
#include <vector>

namespace knotsum {

using cplx = std::complex<double>;

enum class FamilyKind { Bessel, Airy };

class ExponentFamily {
 public:
  static ExponentFamily bessel(cplx k, cplx n);
  static ExponentFamily airy(double k, double t);

  [[nodiscard]] FamilyKind kind() const { return kind_; }
  [[nodiscard]] cplx k() const { return k_; }
  [[nodiscard]] cplx n() const { return n_; }  // Bessel only
  [[nodiscard]] double t() const { return t_; }  // Airy only
  [[nodiscard]] cplx lambda() const;

  // S and its first four derivatives at w.
  [[nodiscard]] std::array<cplx, 5> jet(cplx w) const;
  [[nodiscard]] cplx value(cplx w) const;
  [[nodiscard]] cplx d1(cplx w) const;
  [[nodiscard]] cplx d2(cplx w) const;

  [[nodiscard]] cplx measure() const;
  // Factor picked up by the integrand under w -> w + 2 pi i m (Bessel only):
  // e^{2 pi i k m}. For real k the angle is reduced exactly first.
  [[nodiscard]] cplx deck_factor(int m) const;
  // Shift of S under the same deck transformation, 2 pi i k m.
  [[nodiscard]] cplx deck_shift(int m) const;
  // Characteristic size of S used to scale tolerances.
  [[nodiscard]] double scale() const;

 private:
  FamilyKind kind_ = FamilyKind::Bessel;
  cplx k_{0.0};
  cplx n_{0.0};
  double t_ = 0.0;
};

struct SaddleDatum {
  cplx w;
  cplx value;    // S(w)
  cplx hessian;  // S''(w)
  int order = 2;  // 2 regular, 3 when S'' vanishes
  bool degenerate = false;
  // Unit tangents of steepest descent sorted by principal argument.
  std::vector<cplx> descent;
  int branch = 0;  // sheet index m of the w-cover (Bessel)
  int root = 0;    // which root of the critical equation
  double residual = 0.0;  // |S'(w)|
};

class SaddleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SaddleWindow {
  int m0 = 0;
  int m1 = 0;
  bool include_degenerate = true;
};

// All critical points over sheets m0..m1. Bessel: roots of n z^2 + k z + n = 0
// with w = log z + 2 pi i m; Airy: x = +-sqrt(-t/3). Degenerate points are
// flagged and returned only when the window asks for them. Throws SaddleError
// for lambda = 0.
[[nodiscard]] std::vector<SaddleDatum> find_saddles(const ExponentFamily& fam, const SaddleWindow& window = {});

// Newton iteration on S' from `start`; returns a fully populated datum.
[[nodiscard]] SaddleDatum refine_saddle(const ExponentFamily& fam, cplx start, int max_iter = 60);

// Descent tangents at a critical point of the given order.
[[nodiscard]] std::vector<cplx> descent_directions(const ExponentFamily& fam, cplx w, int order);

}  // namespace knotsum
