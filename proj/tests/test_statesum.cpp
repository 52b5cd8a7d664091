#include <doctest.h>

#include <random>

#include "knotsum/diagram.hpp"
#include "knotsum/statesum.hpp"
#include "knotsum/weight_table.hpp"

using namespace knotsum;

namespace {

LaurentPoly poly(std::initializer_list<std::pair<int, int>> terms) {
  std::vector<LaurentPoly::Term> v;
  for (auto [e, c] : terms) v.push_back({e, c});
  return LaurentPoly::from_terms(v);
}

}  // namespace

TEST_SUITE("statesum") {
  TEST_CASE("known Jones polynomials") {
    const WeightTable t = default_table();
    CHECK(jones(builtin("unknot"), t) == LaurentPoly(1));
    const LaurentPoly right = poly({{4, 1}, {12, 1}, {16, -1}});
    CHECK(jones(builtin("trefoil_right"), t) == right);
    CHECK(jones(builtin("trefoil_left"), t) == right.mirror());
    const LaurentPoly fig8 = poly({{-8, 1}, {-4, -1}, {0, 1}, {4, -1}, {8, 1}});
    CHECK(jones(builtin("figure_eight"), t) == fig8);
    CHECK(jones(builtin("unlink2"), t) == poly({{-2, -1}, {2, -1}}));
    CHECK(jones(builtin("hopf_pos"), t) == jones(builtin("hopf_neg"), t).mirror());
  }

  TEST_CASE("loop value") { CHECK(loop_value(default_table()) == poly({{-2, -1}, {2, -1}})); }

  TEST_CASE("dense trefoil enumerates 2^7 labelings") {
    const auto r = compute(builtin("trefoil_right"), default_table(), {Mode::Dense, 1});
    CHECK(r.terms_enumerated == 128);
    const auto p = compute(builtin("trefoil_right"), default_table(), {Mode::Pruned, 1});
    CHECK(p.terms_enumerated < 128);
    CHECK(p.framed == r.framed);
  }

  TEST_CASE("framed sum equals skein bracket") {
    for (const auto& name : builtin_names()) {
      const MorseWord w = builtin(name);
      CHECK_MESSAGE(compute_serial(w, default_table()).framed == skein_bracket(w), name);
    }
    std::mt19937_64 rng(5);
    for (int i = 0; i < 30; ++i) {
      const MorseWord w = random_word(rng);
      CHECK(compute_serial(w, default_table(), Mode::Dense).framed == skein_bracket(w));
    }
  }

  TEST_CASE("parallel kernel is identical for every thread count") {
    std::mt19937_64 rng(9);
    for (int i = 0; i < 10; ++i) {
      const MorseWord w = random_word(rng);
      for (Mode m : {Mode::Dense, Mode::Pruned}) {
        std::uint64_t ts = 0;
        const LaurentPoly s = framed_sum_serial(w, default_table(), m, &ts);
        for (int th : {1, 2, 3, 8}) {
          std::uint64_t tp = 0;
          CHECK(framed_sum_parallel(w, default_table(), m, th, &tp) == s);
          CHECK(tp == ts);
        }
      }
    }
  }

  TEST_CASE("framing monomial has quarter exponent 3") {
    const auto m = framing_monomial(default_table());
    REQUIRE(m.has_value());
    REQUIRE(m->is_monomial());
    CHECK(std::abs(m->min_exp()) == 3);
    CHECK(m->terms()[0].coeff.is_unit());
  }

  TEST_CASE("skein refuses very large diagrams") {
    std::string text = "cup 0; cup 2";
    for (int i = 0; i <= kMaxSkeinCrossings; ++i) text += "; x+ 1";
    text += "; cap 2; cap 0";
    CHECK_THROWS_AS((void)skein_bracket(parse_word(text)), SkeinError);
  }
}

TEST_SUITE("weight_table") {
  TEST_CASE("default table passes every local check") {
    for (const auto& c : check_table(default_table())) CHECK_MESSAGE(c.passed, c.name << ": " << c.detail);
    CHECK_NOTHROW(require_valid(default_table()));
  }

  TEST_CASE("corrupted table fails R2 and R3 only") {
    const auto checks = check_table(corrupted_table());
    for (const auto& c : checks) {
      if (c.name == "R2" || c.name == "R3") CHECK_FALSE(c.passed);
      else CHECK(c.passed);
    }
    CHECK_THROWS_AS(require_valid(corrupted_table()), TableError);
  }

  TEST_CASE("label keys") {
    for (int i = 0; i < 16; ++i) CHECK(parse_label_key(label_key(i, 4), 4) == i);
    CHECK(label_key(WeightTable::crossing_index(1, -1, 1, -1), 4) == "+-+-");
    CHECK_THROWS_AS((void)parse_label_key("+x", 2), std::invalid_argument);
    CHECK_THROWS_AS((void)parse_label_key("+-+", 2), std::invalid_argument);
  }
}
