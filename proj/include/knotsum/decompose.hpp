#pragma once

// Integer thimble decompositions of integration contours, and the continued
// Bessel integral they define off integer k.

#include <complex>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "knotsum/thimble.hpp"

namespace knotsum {

enum class Contour {
  UnitCircle,  // Bessel, integer k
  Continued,   // Bessel, circle arc plus the real-axis tails
  RealLine,    // Airy
};

[[nodiscard]] std::string to_string(Contour c);
[[nodiscard]] Contour parse_contour(const std::string& s);

struct BasisElement {
  SaddleDatum saddle;
  int basis = 0;  // cycle index for degenerate saddles
  [[nodiscard]] std::string label() const;
};

struct Decomposition {
  Contour contour = Contour::UnitCircle;
  std::vector<BasisElement> elements;
  std::vector<int> coefficients;
  std::vector<double> least_squares;  // real solution before rounding
  double max_gap = 0.0;               // max |a - round(a)|
  cplx reference;                     // contour integral at the base parameters
  cplx reconstructed;                 // sum a_p I_p at the base parameters
  cplx residual;                      // reconstructed - reference
  int parameter_points = 0;
  // Element pairs whose phases Im S coincide while heights differ.
  std::vector<std::pair<std::size_t, std::size_t>> stokes_pairs;
  int dominant = -1;  // element index maximising Re S among nonzero coefficients
  std::string chamber;
};

class DecompositionError : public std::runtime_error {
 public:
  DecompositionError(const std::string& what, std::vector<std::pair<cplx, cplx>> pairs)
      : std::runtime_error(what), pairs_(std::move(pairs)) {}
  [[nodiscard]] const std::vector<std::pair<cplx, cplx>>& colliding() const { return pairs_; }

 private:
  std::vector<std::pair<cplx, cplx>> pairs_;
};

struct DecompositionOptions {
  int m0 = -2;  // sheet window for the continued contour
  int m1 = 1;
  double integer_tol = 1e-3;
  double stokes_tol = 1e-9;
  ThimbleOptions thimble;
};

// "oscillatory", "damped", "degenerate" for real parameters, "complex" otherwise.
[[nodiscard]] std::string chamber_of(const ExponentFamily& fam);

// Solves for integer a_p with contour = sum a_p Gamma_p. Values of the contour
// integral at several nearby parameter points in the same chamber are fitted
// against thimble integrals by real least squares; the solution must round to
// integers within integer_tol. Throws DecompositionError when the system is
// rank deficient or the fit is not integral.
[[nodiscard]] Decomposition decompose_contour(const ExponentFamily& fam, Contour contour,
                                              const DecompositionOptions& opt = {});

// Value held as mantissa * e^{log_scale}.
struct LogComplex {
  cplx mantissa;
  double log_scale = 0.0;
  [[nodiscard]] double log_abs() const { return std::log(std::abs(mantissa)) + log_scale; }
  [[nodiscard]] cplx value() const { return mantissa * std::exp(log_scale); }
};

// sum a_p I_p at fam using coefficients from a calibration in the same
// chamber. Elements are matched to fam's saddles by location on sheet 0 and
// translated by deck transformations.
[[nodiscard]] LogComplex continued_integral(const ExponentFamily& fam, const Decomposition& calibration,
                                            const ThimbleOptions& opt = {});

struct GrowthOptions {
  double lambda = 0.25;         // n = lambda * k
  double calibration_k = 5.37;  // non-integer calibration scale
  DecompositionOptions decomposition;
};

struct GrowthPoint {
  int n = 0;
  double k = 0.0;
  double log_abs = 0.0;
};

struct GrowthResult {
  double k0 = 0.0;
  double lambda = 0.0;
  double rate = 0.0;  // least-squares slope of log|I| against n
  double intercept = 0.0;
  std::vector<GrowthPoint> points;
  Decomposition calibration;
};

// log|I| for k = k0 + n, with the Bessel argument scaled as n_B = lambda k.
[[nodiscard]] GrowthResult growth_dichotomy(double k0, std::span<const int> n_list, const GrowthOptions& opt = {});

}  // namespace knotsum
