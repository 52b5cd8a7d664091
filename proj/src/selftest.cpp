#include "knotsum/selftest.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "knotsum/bigraded.hpp"
#include "knotsum/diagram.hpp"
#include "knotsum/statesum.hpp"
#include "knotsum/thimble.hpp"

namespace knotsum {

bool is_r1_factor(const LaurentPoly& before, const LaurentPoly& after) {
  for (int e : {-3, 3})
    for (GaussInt c : {GaussInt{1, 0}, GaussInt{-1, 0}, GaussInt{0, 1}, GaussInt{0, -1}})
      if (before * LaurentPoly::monomial(e, c) == after) return true;
  return false;
}

namespace {

void fail(SelftestGroup& g, const std::string& why) {
  if (g.passed) g.detail = why;
  g.passed = false;
}

// One group per move kind so a broken table shows which relation fails.
std::vector<SelftestGroup> r_moves(const SelftestOptions& opt) {
  std::vector<SelftestGroup> groups{{"R1", true, 0, ""}, {"R2", true, 0, ""}, {"R3", true, 0, ""}};
  auto group = [&](MoveKind m) -> SelftestGroup& { return groups[static_cast<std::size_t>(m)]; };
  const ComputeOptions co{Mode::Pruned, opt.threads};
  const auto& names = builtin_names();
  std::vector<std::pair<std::string, MorseWord>> words;
  for (std::size_t d = 0; d < names.size() && (!opt.quick || d < 4); ++d) words.emplace_back(names[d], builtin(names[d]));
  // The built-in plats have no braid triples; random words and plats supply the R3 sites.
  std::mt19937_64 rng(opt.seed * 31 + 7);
  const int randoms = opt.quick ? 8 : 40;
  for (int i = 0; i < randoms; ++i) words.emplace_back("random word " + std::to_string(i), random_word(rng));
  for (int i = 0; i < 2 * randoms; ++i)
    words.emplace_back("random plat " + std::to_string(i), random_plat(rng, 2 + i % 2, 8));
  for (std::size_t d = 0; d < words.size(); ++d) {
    const auto& [name, w] = words[d];
    const bool builtin_word = d < names.size() && name == names[d];
    for (const auto& v : reidemeister_variants(w)) {
      if (!builtin_word && v.move != MoveKind::R3) continue;
      SelftestGroup& g = group(v.move);
      ++g.checks;
      const std::string where = name + ": " + g.name + " variant at " + std::to_string(v.site);
      try {
        if (v.move == MoveKind::R1) {
          if (!is_r1_factor(compute(w, opt.table, co).framed, compute(v.word, opt.table, co).framed))
            fail(g, where + " is not a u^(+-3) multiple");
        } else if (jones(v.word, opt.table, co) != jones(w, opt.table, co)) {
          fail(g, where + " changes the invariant");
        }
      } catch (const std::exception& e) {
        fail(g, where + ": " + e.what());
      }
    }
  }
  return groups;
}

SelftestGroup oracle(const SelftestOptions& opt) {
  SelftestGroup g{"oracle", true, 0, ""};
  const ComputeOptions co{Mode::Pruned, opt.threads};
  std::vector<MorseWord> words;
  for (const auto& n : builtin_names()) words.push_back(builtin(n));
  std::mt19937_64 rng(opt.seed);
  const int randoms = opt.quick ? 20 : 200;
  for (int i = 0; i < randoms; ++i) words.push_back(random_word(rng));
  for (const auto& w : words) {
    ++g.checks;
    try {
      if (compute(w, opt.table, co).framed != skein_bracket(w)) fail(g, "mismatch on '" + to_text(w) + "'");
    } catch (const std::exception& e) {
      fail(g, e.what());
    }
  }
  return g;
}

SelftestGroup phase(const SelftestOptions& opt) {
  SelftestGroup g{"phase", true, 0, ""};
  std::mt19937_64 rng(opt.seed ^ 0x9e3779b97f4a7c15ULL);
  std::uniform_real_distribution<double> kd(0.5, 4.0), nd(0.3, 2.5), xr(-1.5, 1.5),
      yr(-std::numbers::pi, std::numbers::pi);
  const int launches = opt.quick ? 10 : 50;
  for (int i = 0; i < launches; ++i) {
    const ExponentFamily fam = ExponentFamily::bessel(kd(rng), nd(rng));
    const cplx start{xr(rng), yr(rng)};
    ++g.checks;
    try {
      const FlowTrace tr = flow(fam, start, 10.0);
      if (tr.max_phase_drift() >= 1e-8) fail(g, "phase drift " + std::to_string(tr.max_phase_drift()));
      if (!tr.monotone()) fail(g, "h not strictly decreasing");
    } catch (const std::exception& e) {
      fail(g, e.what());
    }
  }
  return g;
}

SelftestGroup euler(const SelftestOptions& opt) {
  SelftestGroup g{"euler", true, 0, ""};
  std::mt19937_64 rng(opt.seed + 17);
  const int trials = opt.quick ? 20 : 100;
  for (int i = 0; i < trials; ++i) {
    ++g.checks;
    try {
      const BigradedComplex c = random_complex(rng);
      if (euler_V(c) != euler_H(c)) fail(g, "euler_V != euler_H on random complex " + std::to_string(i));
    } catch (const std::exception& e) {
      fail(g, e.what());
    }
  }
  for (int i = 0; i < 20; ++i) {
    ++g.checks;
    const BigradedComplex c = corrupted_complex(rng);
    try {
      validate(c);
      fail(g, "corrupted complex " + std::to_string(i) + " accepted");
    } catch (const ComplexError&) {
    }
  }
  return g;
}

}  // namespace

std::vector<SelftestGroup> run_selftest(const SelftestOptions& opt) {
  std::vector<SelftestGroup> groups = r_moves(opt);
  groups.push_back(oracle(opt));
  groups.push_back(phase(opt));
  groups.push_back(euler(opt));
  return groups;
}

}  // namespace knotsum
