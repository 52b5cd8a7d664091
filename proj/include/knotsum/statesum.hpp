#pragma once

// Vertex-model state sums over Morse words.
//
// Each event carries one free +/- label: the left created arc of a cup, the
// top-left arc of a crossing, the bottom-left arc of a cap. The remaining arc
// labels follow from charge conservation, so a labeling of the events fixes a
// labeling of every arc and the sum over 2^events event labelings equals the
// sum over all arc labelings with nonzero weight.

#include <cstdint>
#include <optional>
#include <stdexcept>

#include "knotsum/diagram.hpp"
#include "knotsum/laurent.hpp"
#include "knotsum/weight_table.hpp"

namespace knotsum {

enum class Mode { Dense, Pruned };

struct ComputeOptions {
  Mode mode = Mode::Pruned;
  int threads = 0;  // 0: OpenMP default
};

struct StateSumResult {
  LaurentPoly framed;
  LaurentPoly normalized;
  std::uint64_t terms_enumerated = 0;
  int writhe_used = 0;
};

// Raw framed sum, serial reference kernel.
[[nodiscard]] LaurentPoly framed_sum_serial(const MorseWord& w, const WeightTable& t, Mode mode,
                                            std::uint64_t* terms = nullptr);
// Raw framed sum, OpenMP kernel partitioned by labeling prefix. Bit-identical to
// the serial kernel for every thread count.
[[nodiscard]] LaurentPoly framed_sum_parallel(const MorseWord& w, const WeightTable& t, Mode mode, int threads,
                                              std::uint64_t* terms = nullptr);

// Unit monomial m with framed(kink) = m^{writhe change} framed, measured on a
// kinked unknot. nullopt if the table does not produce a unit monomial.
[[nodiscard]] std::optional<LaurentPoly> framing_monomial(const WeightTable& t);

// normalized = framed * m^{-writhe}.
[[nodiscard]] StateSumResult compute(const MorseWord& w, const WeightTable& t, const ComputeOptions& opt = {});
[[nodiscard]] StateSumResult compute_serial(const MorseWord& w, const WeightTable& t, Mode mode = Mode::Pruned);

class SkeinError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

constexpr int kMaxSkeinCrossings = 24;

// Kauffman bracket by resolving every crossing into its two smoothings and
// counting loops (loop value -A^2 - A^{-2}, A = u^{-1}). Uses no weight table.
[[nodiscard]] LaurentPoly skein_bracket(const MorseWord& w);

class JonesError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Writhe-normalized sum divided by the unknot value, so jones(unknot) = 1.
// Throws JonesError if the invariant picks up imaginary parts or is not
// divisible by the loop value.
[[nodiscard]] LaurentPoly jones(const MorseWord& w, const WeightTable& t, const ComputeOptions& opt = {});

// The normalized state sum of the one-cup one-cap unknot.
[[nodiscard]] LaurentPoly loop_value(const WeightTable& t);

}  // namespace knotsum
