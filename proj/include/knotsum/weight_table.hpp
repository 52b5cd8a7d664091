#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "knotsum/laurent.hpp"

namespace knotsum {

// Labels are +1 / -1; index bit is 0 for '+', 1 for '-'.
constexpr int label_bit(int label) { return label > 0 ? 0 : 1; }
constexpr int bit_label(int bit) { return bit ? -1 : 1; }

// Vertex weights keyed by event type and the +/- labels on incident arcs.
// Crossing keys are (in1, in2, out1, out2) with 1 = left position; cup keys
// are the two created arcs, cap keys the two absorbed arcs. Absent entries are zero.
struct WeightTable {
  std::array<LaurentPoly, 16> crossing_pos;
  std::array<LaurentPoly, 16> crossing_neg;
  std::array<LaurentPoly, 4> cup;
  std::array<LaurentPoly, 4> cap;

  static constexpr int crossing_index(int in1, int in2, int out1, int out2) {
    return (label_bit(in1) << 3) | (label_bit(in2) << 2) | (label_bit(out1) << 1) | label_bit(out2);
  }
  static constexpr int pair_index(int a, int b) { return (label_bit(a) << 1) | label_bit(b); }

  [[nodiscard]] const LaurentPoly& crossing(bool positive, int in1, int in2, int out1, int out2) const {
    return (positive ? crossing_pos : crossing_neg)[static_cast<std::size_t>(crossing_index(in1, in2, out1, out2))];
  }

  friend bool operator==(const WeightTable&, const WeightTable&) = default;
};

// Bracket-form table: crossing = A (vertical pairing) + A^{-1} (cap then cup),
// A = u^{-1}; cup/cap (+,-) -> iA, (-,+) -> -iA^{-1}. The negative crossing
// exchanges A and A^{-1}.
[[nodiscard]] WeightTable default_table();

// The default table with the positive crossing's (-,+) -> (-,+) entry
// replaced by A alone. Charge and the zig-zag identities survive; R2 and R3
// do not. Used to exercise the rejection paths.
[[nodiscard]] WeightTable corrupted_table();

// Key strings like "+-+-" (crossing) or "+-" (cup/cap).
[[nodiscard]] std::string label_key(int index, int width);
// Returns the index for a key string; throws std::invalid_argument.
[[nodiscard]] int parse_label_key(std::string_view key, int width);

struct TableCheck {
  std::string name;  // "charge", "snake", "R2", "R3"
  bool passed = true;
  std::string detail;
};

// Runs the local consistency checks: charge conservation, the two zig-zag
// identities, R2 (positive and negative crossings are inverse) and R3
// (Yang-Baxter for every admissible sign pattern).
[[nodiscard]] std::vector<TableCheck> check_table(const WeightTable& t);
[[nodiscard]] bool table_ok(const std::vector<TableCheck>& checks);

class TableError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Throws TableError listing failed checks.
void require_valid(const WeightTable& t);

}  // namespace knotsum
