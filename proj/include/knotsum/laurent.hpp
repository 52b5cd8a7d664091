#pragma once

// Exact Laurent polynomials in u = q^{1/4} with Gaussian-integer coefficients.

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace knotsum {

struct GaussInt {
  std::int64_t re = 0;
  std::int64_t im = 0;

  constexpr GaussInt() = default;
  constexpr GaussInt(std::int64_t r, std::int64_t i = 0) : re(r), im(i) {}

  [[nodiscard]] constexpr bool is_zero() const { return re == 0 && im == 0; }
  [[nodiscard]] constexpr bool is_unit() const {
    return (re == 0 && (im == 1 || im == -1)) || (im == 0 && (re == 1 || re == -1));
  }
  [[nodiscard]] constexpr GaussInt conj() const { return {re, -im}; }
  [[nodiscard]] std::complex<double> to_complex() const {
    return {static_cast<double>(re), static_cast<double>(im)};
  }

  friend constexpr bool operator==(const GaussInt&, const GaussInt&) = default;
};

// Overflow-checked ring operations; throw std::overflow_error.
GaussInt operator+(GaussInt a, GaussInt b);
GaussInt operator-(GaussInt a, GaussInt b);
GaussInt operator-(GaussInt a);
GaussInt operator*(GaussInt a, GaussInt b);
inline GaussInt& operator+=(GaussInt& a, GaussInt b) { return a = a + b; }

// Inverse of a unit (±1, ±i).
GaussInt unit_inverse(GaussInt u);

class LaurentPoly {
 public:
  struct Term {
    int exp;  // power of u, i.e. q^{exp/4}
    GaussInt coeff;
    friend bool operator==(const Term&, const Term&) = default;
  };

  LaurentPoly() = default;
  LaurentPoly(std::int64_t c);  // NOLINT: constants convert implicitly
  LaurentPoly(GaussInt c);      // NOLINT

  static LaurentPoly monomial(int exp, GaussInt coeff = 1);
  // Builds from unsorted terms, merging duplicates and dropping zeros.
  static LaurentPoly from_terms(std::vector<Term> terms);

  [[nodiscard]] const std::vector<Term>& terms() const { return terms_; }
  [[nodiscard]] bool is_zero() const { return terms_.empty(); }
  [[nodiscard]] bool is_monomial() const { return terms_.size() == 1; }
  [[nodiscard]] int min_exp() const;
  [[nodiscard]] int max_exp() const;
  [[nodiscard]] GaussInt coeff(int exp) const;

  // True iff every imaginary part is zero.
  [[nodiscard]] bool is_real() const;
  // True iff every exponent is congruent to residue mod m.
  [[nodiscard]] bool supported_on(int residue, int modulus) const;

  // u -> u^{-1}
  [[nodiscard]] LaurentPoly mirror() const;
  [[nodiscard]] LaurentPoly shifted(int by) const;
  [[nodiscard]] LaurentPoly pow(unsigned n) const;

  // Exact quotient if divisor divides *this; nullopt otherwise.
  // The divisor's lowest and highest coefficients must be units.
  [[nodiscard]] std::optional<LaurentPoly> divide_exact(const LaurentPoly& divisor) const;

  [[nodiscard]] std::complex<double> eval(std::complex<double> u) const;
  // Substitutes u = exp(2 pi i e / (4 (k+2))) termwise; q = exp(2 pi i/(k+2)).
  [[nodiscard]] std::complex<double> eval_at_root_of_unity(int k) const;

  // Human-readable form in u, e.g. "-u^-2 - u^2".
  [[nodiscard]] std::string to_string() const;

  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator-=(const LaurentPoly& o);
  LaurentPoly& operator*=(const LaurentPoly& o);

  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  friend LaurentPoly operator-(const LaurentPoly& a);
  friend bool operator==(const LaurentPoly&, const LaurentPoly&) = default;

 private:
  std::vector<Term> terms_;  // strictly increasing exp, nonzero coeffs
};

}  // namespace knotsum
