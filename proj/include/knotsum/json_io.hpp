#pragma once

// JSON encodings. Parsers throw JsonFormatError with a path to the bad field.

#include <complex>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "knotsum/bigraded.hpp"
#include "knotsum/laurent.hpp"
#include "knotsum/weight_table.hpp"

namespace knotsum {

class JsonFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// {"terms":[{"e":int,"re":int,"im":int},...]} sorted by e ascending.
[[nodiscard]] nlohmann::json to_json(const LaurentPoly& p);
[[nodiscard]] LaurentPoly laurent_from_json(const nlohmann::json& j);

// {"crossing_pos":{"+-+-":poly,...},"crossing_neg":{...},"cup":{"+-":poly},"cap":{...}};
// absent keys are zero weights.
[[nodiscard]] nlohmann::json to_json(const WeightTable& t);
[[nodiscard]] WeightTable table_from_json(const nlohmann::json& j);
// Reads and parses a table file (no consistency checks).
[[nodiscard]] WeightTable load_table(const std::string& path);

// {"offset_c": "p/q" | int, "generators":[{"P":int,"F":int}], "Q":[[int]]}.
[[nodiscard]] nlohmann::json to_json(const BigradedComplex& c);
[[nodiscard]] BigradedComplex complex_from_json(const nlohmann::json& j);
[[nodiscard]] BigradedComplex load_complex(const std::string& path);

// {"re":x,"im":y}
[[nodiscard]] nlohmann::json to_json(std::complex<double> z);

[[nodiscard]] nlohmann::json read_json_file(const std::string& path);

}  // namespace knotsum
