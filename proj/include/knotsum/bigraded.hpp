#pragma once

// Finite free Z-modules with a (P, F) bigrading and a differential Q that
// preserves P and raises F by one; integer cohomology and graded traces.

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "knotsum/laurent.hpp"

namespace knotsum {

// Exact rational in lowest terms with positive denominator.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;
  Rational() = default;
  Rational(std::int64_t n, std::int64_t d = 1);  // NOLINT(google-explicit-constructor)
  [[nodiscard]] std::string to_string() const;
  friend bool operator==(const Rational&, const Rational&) = default;
};

// Parses "p/q" or "p".
[[nodiscard]] Rational parse_rational(const std::string& s);

// Dense row-major integer matrix with overflow-checked arithmetic.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, 0) {}
  static IntMatrix identity(std::size_t n);

  [[nodiscard]] std::size_t rows() const { return rows_; }
  [[nodiscard]] std::size_t cols() const { return cols_; }
  std::int64_t& operator()(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
  [[nodiscard]] std::int64_t operator()(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }
  [[nodiscard]] bool is_zero() const;

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::int64_t> a_;
};

// Exact determinant (fraction-free Bareiss elimination).
[[nodiscard]] std::int64_t determinant(const IntMatrix& m);

// U * A * V = D with U, V unimodular and D diagonal, d_1 | d_2 | ..., d_i >= 0.
struct SmithForm {
  IntMatrix u;
  IntMatrix d;
  IntMatrix v;
  [[nodiscard]] std::vector<std::int64_t> invariant_factors() const;  // nonzero diagonal
  [[nodiscard]] std::size_t rank() const { return invariant_factors().size(); }
};

[[nodiscard]] SmithForm smith_normal_form(const IntMatrix& a);

struct Generator {
  std::int64_t p = 0;  // eigenvalue of P is p + offset_c
  int f = 0;
};

struct BigradedComplex {
  Rational offset_c;
  std::vector<Generator> generators;
  IntMatrix q;  // q(j, i): coefficient of generator j in Q|i>
};

class ComplexError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Checks shape, grading (entries only from (P, F) to (P, F + 1)) and Q^2 = 0.
// The message names the offending entry.
void validate(const BigradedComplex& c);

struct BigradeGroup {
  std::int64_t p = 0;
  int f = 0;
  int dim = 0;
  int free_rank = 0;
  std::vector<std::int64_t> torsion;  // invariant factors > 1
};

[[nodiscard]] std::vector<BigradeGroup> cohomology(const BigradedComplex& c);

// Trace of (-1)^F q^P, as a polynomial in u = q^{1/4} (exponent 4p), times q^{offset_c}.
struct GradedEuler {
  LaurentPoly poly;
  Rational offset_c;
  friend bool operator==(const GradedEuler&, const GradedEuler&) = default;
};

[[nodiscard]] GradedEuler euler_V(const BigradedComplex& c);
[[nodiscard]] GradedEuler euler_H(const BigradedComplex& c);

struct RandomComplexOptions {
  int max_generators = 30;
  int p_min = -3;
  int p_max = 3;
  int f_min = -2;
  int f_max = 3;
};

// A valid complex: acyclic and torsion pairs plus free generators, conjugated
// by random unimodular changes of basis inside each bigrade and shuffled.
[[nodiscard]] BigradedComplex random_complex(std::mt19937_64& rng, const RandomComplexOptions& opt = {});
// A correctly graded complex with Q^2 != 0.
[[nodiscard]] BigradedComplex corrupted_complex(std::mt19937_64& rng, const RandomComplexOptions& opt = {});

// Applies a unimodular basis change t (block diagonal by bigrade) to c:
// Q -> t Q t^{-1}. Throws ComplexError if t mixes bigrades or is not unimodular.
[[nodiscard]] BigradedComplex change_basis(const BigradedComplex& c, const IntMatrix& t, const IntMatrix& t_inv);

}  // namespace knotsum
