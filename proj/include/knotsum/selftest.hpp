#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "knotsum/weight_table.hpp"

namespace knotsum {

struct SelftestOptions {
  bool quick = false;
  WeightTable table = default_table();
  std::uint64_t seed = 1;
  int threads = 0;
};

struct SelftestGroup {
  std::string name;  // "R1", "R2", "R3", "oracle", "phase", "euler"
  bool passed = true;
  int checks = 0;
  std::string detail;  // first failure, if any
};

// The invariant suite: Reidemeister behaviour of the table on the built-in
// diagrams, state sum against the skein oracle on built-ins and random words,
// phase conservation along random flows, Euler identity on random complexes
// (and rejection of corrupted ones).
[[nodiscard]] std::vector<SelftestGroup> run_selftest(const SelftestOptions& opt);

// True if `after` equals `before` times a unit-coefficient monomial u^{+-3}.
[[nodiscard]] bool is_r1_factor(const LaurentPoly& before, const LaurentPoly& after);

}  // namespace knotsum
