#include "knotsum/statesum.hpp"

#include <map>
#include <numeric>
#include <utility>

#include "statesum_kernel.hpp"

namespace knotsum {

LaurentPoly framed_sum_serial(const MorseWord& w, const WeightTable& t, Mode mode, std::uint64_t* terms) {
  detail::check_width(w);
  if (mode == Mode::Dense) {
    if (w.size() > 40) throw std::length_error("dense enumeration limited to 40 events");
    const std::uint64_t total = std::uint64_t{1} << w.size();
    if (terms) *terms = total;
    return detail::dense_range(w, t, 0, total);
  }
  LaurentPoly acc;
  std::uint64_t leaves = 0;
  detail::dfs(w, t, 0, detail::Row{}, LaurentPoly(1), acc, leaves);
  if (terms) *terms = leaves;
  return acc;
}

std::optional<LaurentPoly> framing_monomial(const WeightTable& t) {
  const MorseWord plain = builtin("unknot");
  const MorseWord kinked = parse_word("cup 0; cup 1; x+ 0; cap 1; cap 0");
  const int kink_writhe = stats(kinked).writhe;
  const LaurentPoly base = framed_sum_serial(plain, t, Mode::Pruned);
  const LaurentPoly twisted = framed_sum_serial(kinked, t, Mode::Pruned);
  if (base.is_zero()) return std::nullopt;
  auto ratio = twisted.divide_exact(base);
  if (!ratio || !ratio->is_monomial() || !ratio->terms()[0].coeff.is_unit()) return std::nullopt;
  if (kink_writhe == 1) return ratio;
  if (kink_writhe == -1) {
    const auto& term = ratio->terms()[0];
    return LaurentPoly::monomial(-term.exp, unit_inverse(term.coeff));
  }
  return std::nullopt;
}

namespace {

LaurentPoly monomial_power(const LaurentPoly& m, int n) {
  const auto& term = m.terms()[0];
  GaussInt c = 1;
  const GaussInt base = n >= 0 ? term.coeff : unit_inverse(term.coeff);
  for (int i = 0; i < (n >= 0 ? n : -n); ++i) c = c * base;
  return LaurentPoly::monomial(term.exp * n, c);
}

StateSumResult finish(const MorseWord& w, const WeightTable& t, LaurentPoly framed, std::uint64_t terms) {
  StateSumResult r;
  r.framed = std::move(framed);
  r.terms_enumerated = terms;
  r.writhe_used = stats(w).writhe;
  if (auto m = framing_monomial(t)) {
    r.normalized = r.framed * monomial_power(*m, -r.writhe_used);
  } else {
    r.normalized = r.framed;
  }
  return r;
}

}  // namespace

StateSumResult compute(const MorseWord& w, const WeightTable& t, const ComputeOptions& opt) {
  std::uint64_t terms = 0;
  LaurentPoly framed = framed_sum_parallel(w, t, opt.mode, opt.threads, &terms);
  return finish(w, t, std::move(framed), terms);
}

StateSumResult compute_serial(const MorseWord& w, const WeightTable& t, Mode mode) {
  std::uint64_t terms = 0;
  LaurentPoly framed = framed_sum_serial(w, t, mode, &terms);
  return finish(w, t, std::move(framed), terms);
}

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  }
  void unite(int a, int b) { parent[static_cast<std::size_t>(find(a))] = find(b); }
};

struct SkeinState {
  const MorseWord& word;
  const ArcGraph& graph;
  std::vector<std::size_t> crossings;
  std::vector<bool> vertical;  // chosen smoothing per crossing
  std::map<std::pair<int, int>, std::int64_t> counts;  // (A-exponent, loops) -> multiplicity
};

void resolve(SkeinState& s, std::size_t idx, int a_exp) {
  if (idx == s.crossings.size()) {
    UnionFind uf(s.graph.arcs.size());
    for (std::size_t e = 0; e < s.word.size(); ++e) {
      const auto& in = s.graph.inputs[e];
      const auto& out = s.graph.outputs[e];
      switch (s.word.events()[e].kind) {
        case EventKind::Cup: uf.unite(out[0], out[1]); break;
        case EventKind::Cap: uf.unite(in[0], in[1]); break;
        default: break;
      }
    }
    for (std::size_t c = 0; c < s.crossings.size(); ++c) {
      const auto& in = s.graph.inputs[s.crossings[c]];
      const auto& out = s.graph.outputs[s.crossings[c]];
      if (s.vertical[c]) {
        uf.unite(in[0], out[0]);
        uf.unite(in[1], out[1]);
      } else {
        uf.unite(in[0], in[1]);
        uf.unite(out[0], out[1]);
      }
    }
    int loops = 0;
    for (std::size_t a = 0; a < s.graph.arcs.size(); ++a)
      if (uf.find(static_cast<int>(a)) == static_cast<int>(a)) ++loops;
    ++s.counts[{a_exp, loops}];
    return;
  }
  const bool positive = s.word.events()[s.crossings[idx]].kind == EventKind::CrossPos;
  // Positive crossing: the vertical smoothing is the A-smoothing.
  s.vertical[idx] = true;
  resolve(s, idx + 1, a_exp + (positive ? 1 : -1));
  s.vertical[idx] = false;
  resolve(s, idx + 1, a_exp + (positive ? -1 : 1));
}

}  // namespace

LaurentPoly skein_bracket(const MorseWord& w) {
  const ArcGraph g = arc_graph(w);
  SkeinState s{w, g, {}, {}, {}};
  for (std::size_t e = 0; e < w.size(); ++e)
    if (is_crossing(w.events()[e].kind)) s.crossings.push_back(e);
  if (s.crossings.size() > static_cast<std::size_t>(kMaxSkeinCrossings))
    throw SkeinError("skein recursion limited to " + std::to_string(kMaxSkeinCrossings) + " crossings");
  s.vertical.assign(s.crossings.size(), false);
  if (w.size() == 0) return LaurentPoly(1);
  resolve(s, 0, 0);
  // A = u^{-1}, loop value -A^2 - A^{-2}.
  const LaurentPoly delta = LaurentPoly::monomial(-2, -1) + LaurentPoly::monomial(2, -1);
  LaurentPoly total;
  for (const auto& [key, mult] : s.counts) {
    const auto [a_exp, loops] = key;
    total += LaurentPoly::monomial(-a_exp, mult) * delta.pow(static_cast<unsigned>(loops));
  }
  return total;
}

LaurentPoly loop_value(const WeightTable& t) { return compute_serial(builtin("unknot"), t).normalized; }

LaurentPoly jones(const MorseWord& w, const WeightTable& t, const ComputeOptions& opt) {
  if (w.size() == 0) throw JonesError("empty diagram has no Jones polynomial");
  const StateSumResult r = compute(w, t, opt);
  if (!r.normalized.is_real()) throw JonesError("state sum has nonzero imaginary parts; weight table is corrupted");
  const LaurentPoly delta = loop_value(t);
  if (delta.is_zero()) throw JonesError("unknot value vanishes for this weight table");
  if (!delta.terms().back().coeff.is_unit()) throw JonesError("unknot value has a non-unit leading coefficient");
  auto q = r.normalized.divide_exact(delta);
  if (!q) throw JonesError("normalized state sum is not divisible by the unknot value");
  return *q;
}

}  // namespace knotsum
