#include "knotsum/json_io.hpp"

#include <fstream>
#include <sstream>

namespace knotsum {

using nlohmann::json;

namespace {

std::int64_t get_int(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw JsonFormatError(where + ": missing field '" + key + "'");
  const json& v = j.at(key);
  if (!v.is_number_integer()) throw JsonFormatError(where + "." + key + ": expected an integer");
  return v.get<std::int64_t>();
}

}  // namespace

json to_json(const LaurentPoly& p) {
  json terms = json::array();
  for (const auto& t : p.terms()) terms.push_back({{"e", t.exp}, {"re", t.coeff.re}, {"im", t.coeff.im}});
  return {{"terms", terms}};
}

LaurentPoly laurent_from_json(const json& j) {
  if (!j.is_object() || !j.contains("terms") || !j.at("terms").is_array())
    throw JsonFormatError("polynomial: expected {\"terms\":[...]}");
  std::vector<LaurentPoly::Term> terms;
  std::size_t i = 0;
  for (const auto& t : j.at("terms")) {
    const std::string where = "terms[" + std::to_string(i++) + "]";
    const std::int64_t e = get_int(t, "e", where);
    if (e < INT32_MIN || e > INT32_MAX) throw JsonFormatError(where + ".e: exponent out of range");
    terms.push_back({static_cast<int>(e), GaussInt{get_int(t, "re", where), get_int(t, "im", where)}});
  }
  return LaurentPoly::from_terms(std::move(terms));
}

namespace {

template <std::size_t N>
json entries_to_json(const std::array<LaurentPoly, N>& a, int width) {
  json o = json::object();
  for (std::size_t i = 0; i < N; ++i)
    if (!a[i].is_zero()) o[label_key(static_cast<int>(i), width)] = to_json(a[i]);
  return o;
}

template <std::size_t N>
void entries_from_json(const json& j, const char* key, int width, std::array<LaurentPoly, N>& out) {
  out.fill(LaurentPoly{});
  if (!j.contains(key)) return;
  const json& o = j.at(key);
  if (!o.is_object()) throw JsonFormatError(std::string(key) + ": expected an object of label keys");
  for (const auto& [label, poly] : o.items()) {
    int idx;
    try {
      idx = parse_label_key(label, width);
    } catch (const std::invalid_argument& e) {
      throw JsonFormatError(std::string(key) + ": " + e.what());
    }
    try {
      out[static_cast<std::size_t>(idx)] = laurent_from_json(poly);
    } catch (const JsonFormatError& e) {
      throw JsonFormatError(std::string(key) + "." + label + ": " + e.what());
    }
  }
}

}  // namespace

json to_json(const WeightTable& t) {
  return {{"crossing_pos", entries_to_json(t.crossing_pos, 4)},
          {"crossing_neg", entries_to_json(t.crossing_neg, 4)},
          {"cup", entries_to_json(t.cup, 2)},
          {"cap", entries_to_json(t.cap, 2)}};
}

WeightTable table_from_json(const json& j) {
  if (!j.is_object()) throw JsonFormatError("weight table: expected an object");
  for (const auto& [key, _] : j.items())
    if (key != "crossing_pos" && key != "crossing_neg" && key != "cup" && key != "cap")
      throw JsonFormatError("weight table: unknown section '" + key + "'");
  WeightTable t;
  entries_from_json(j, "crossing_pos", 4, t.crossing_pos);
  entries_from_json(j, "crossing_neg", 4, t.crossing_neg);
  entries_from_json(j, "cup", 2, t.cup);
  entries_from_json(j, "cap", 2, t.cap);
  return t;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw JsonFormatError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw JsonFormatError(path + ": " + e.what());
  }
}

WeightTable load_table(const std::string& path) { return table_from_json(read_json_file(path)); }

json to_json(const BigradedComplex& c) {
  json gens = json::array();
  for (const auto& g : c.generators) gens.push_back({{"P", g.p}, {"F", g.f}});
  json q = json::array();
  for (std::size_t r = 0; r < c.q.rows(); ++r) {
    json row = json::array();
    for (std::size_t s = 0; s < c.q.cols(); ++s) row.push_back(c.q(r, s));
    q.push_back(row);
  }
  return {{"offset_c", c.offset_c.to_string()}, {"generators", gens}, {"Q", q}};
}

BigradedComplex complex_from_json(const json& j) {
  if (!j.is_object()) throw JsonFormatError("complex: expected an object");
  BigradedComplex c;
  if (j.contains("offset_c")) {
    const json& o = j.at("offset_c");
    if (o.is_number_integer()) {
      c.offset_c = Rational(o.get<std::int64_t>());
    } else if (o.is_string()) {
      try {
        c.offset_c = parse_rational(o.get<std::string>());
      } catch (const std::exception& e) {
        throw JsonFormatError(std::string("offset_c: ") + e.what());
      }
    } else {
      throw JsonFormatError("offset_c: expected an integer or a \"p/q\" string");
    }
  }
  if (!j.contains("generators") || !j.at("generators").is_array())
    throw JsonFormatError("complex: missing array 'generators'");
  std::size_t i = 0;
  for (const auto& g : j.at("generators")) {
    const std::string where = "generators[" + std::to_string(i++) + "]";
    c.generators.push_back({get_int(g, "P", where), static_cast<int>(get_int(g, "F", where))});
  }
  const std::size_t n = c.generators.size();
  c.q = IntMatrix(n, n);
  if (!j.contains("Q")) {
    if (n == 0) return c;
    throw JsonFormatError("complex: missing matrix 'Q'");
  }
  const json& q = j.at("Q");
  if (!q.is_array() || q.size() != n) throw JsonFormatError("Q: expected " + std::to_string(n) + " rows");
  for (std::size_t r = 0; r < n; ++r) {
    if (!q[r].is_array() || q[r].size() != n)
      throw JsonFormatError("Q[" + std::to_string(r) + "]: expected " + std::to_string(n) + " entries");
    for (std::size_t s = 0; s < n; ++s) {
      if (!q[r][s].is_number_integer())
        throw JsonFormatError("Q[" + std::to_string(r) + "][" + std::to_string(s) + "]: expected an integer");
      c.q(r, s) = q[r][s].get<std::int64_t>();
    }
  }
  return c;
}

BigradedComplex load_complex(const std::string& path) { return complex_from_json(read_json_file(path)); }

json to_json(std::complex<double> z) { return {{"re", z.real()}, {"im", z.imag()}}; }

}  // namespace knotsum
