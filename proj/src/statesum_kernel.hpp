#pragma once

// Shared pieces of the serial and OpenMP state-sum kernels.

#include <array>
#include <cstdint>
#include <cstring>
#include <stdexcept>
#include <vector>

#include "knotsum/diagram.hpp"
#include "knotsum/laurent.hpp"
#include "knotsum/weight_table.hpp"

namespace knotsum::detail {

constexpr int kMaxWidth = 64;

struct Row {
  std::array<std::int8_t, kMaxWidth> label{};
  int n = 0;

  void insert_pair(int p, std::int8_t a, std::int8_t b) {
    std::memmove(&label[static_cast<std::size_t>(p) + 2], &label[static_cast<std::size_t>(p)],
                 static_cast<std::size_t>(n - p));
    label[static_cast<std::size_t>(p)] = a;
    label[static_cast<std::size_t>(p) + 1] = b;
    n += 2;
  }
  void erase_pair(int p) {
    std::memmove(&label[static_cast<std::size_t>(p)], &label[static_cast<std::size_t>(p) + 2],
                 static_cast<std::size_t>(n - p - 2));
    n -= 2;
  }
};

inline void check_width(const MorseWord& w) {
  if (w.max_width() > kMaxWidth) throw std::length_error("state sum supports at most 64 live strands");
}

// Applies event e with free label l to row; returns the weight, or nullptr for
// a zero-weight (or charge-violating) configuration.
inline const LaurentPoly* apply_event(const MorseEvent& e, int l, const WeightTable& t, Row& row) {
  const int p = e.position;
  const LaurentPoly* w = nullptr;
  switch (e.kind) {
    case EventKind::Cup:
      w = &t.cup[static_cast<std::size_t>(WeightTable::pair_index(l, -l))];
      if (w->is_zero()) return nullptr;
      row.insert_pair(p, static_cast<std::int8_t>(l), static_cast<std::int8_t>(-l));
      return w;
    case EventKind::Cap: {
      const int a = row.label[static_cast<std::size_t>(p)];
      const int b = row.label[static_cast<std::size_t>(p) + 1];
      if (a != l) return nullptr;
      w = &t.cap[static_cast<std::size_t>(WeightTable::pair_index(a, b))];
      if (w->is_zero()) return nullptr;
      row.erase_pair(p);
      return w;
    }
    case EventKind::CrossPos:
    case EventKind::CrossNeg: {
      const int in1 = row.label[static_cast<std::size_t>(p)];
      const int in2 = row.label[static_cast<std::size_t>(p) + 1];
      const int out2 = in1 + in2 - l;
      if (out2 != 1 && out2 != -1) return nullptr;
      w = &t.crossing(e.kind == EventKind::CrossPos, in1, in2, l, out2);
      if (w->is_zero()) return nullptr;
      row.label[static_cast<std::size_t>(p)] = static_cast<std::int8_t>(l);
      row.label[static_cast<std::size_t>(p) + 1] = static_cast<std::int8_t>(out2);
      return w;
    }
  }
  return nullptr;
}

// Free labels an event can take once the row below it is known.
inline int forced_label(const MorseEvent& e, const Row& row) {
  return e.kind == EventKind::Cap ? row.label[static_cast<std::size_t>(e.position)] : 0;
}

// Labeling index bits run in event order, most significant first.
inline int label_of(std::uint64_t labeling, std::size_t event, std::size_t events) {
  return bit_label(static_cast<int>((labeling >> (events - 1 - event)) & 1u));
}

// Sum over labelings [begin, end).
inline LaurentPoly dense_range(const MorseWord& w, const WeightTable& t, std::uint64_t begin, std::uint64_t end) {
  const auto& ev = w.events();
  const std::size_t n = ev.size();
  LaurentPoly acc;
  for (std::uint64_t lab = begin; lab < end; ++lab) {
    Row row;
    LaurentPoly prod(1);
    bool zero = false;
    for (std::size_t e = 0; e < n && !zero; ++e) {
      const LaurentPoly* wt = apply_event(ev[e], label_of(lab, e, n), t, row);
      if (!wt) zero = true;
      else if (!(wt->is_monomial() && wt->terms()[0] == LaurentPoly::Term{0, 1})) prod *= *wt;
    }
    if (!zero) acc += prod;
  }
  return acc;
}

struct Node {
  std::size_t depth = 0;
  Row row;
  LaurentPoly partial{1};
};

// Depth-first completion of a partial labeling. Zero-weight branches are cut
// and forced cap labels are not branched on.
inline void dfs(const MorseWord& w, const WeightTable& t, std::size_t depth, const Row& row, const LaurentPoly& partial,
                LaurentPoly& acc, std::uint64_t& leaves) {
  const auto& ev = w.events();
  if (depth == ev.size()) {
    acc += partial;
    ++leaves;
    return;
  }
  const MorseEvent& e = ev[depth];
  const int forced = forced_label(e, row);
  for (int l : {1, -1}) {
    if (forced != 0 && l != forced) continue;
    Row next = row;
    const LaurentPoly* wt = apply_event(e, l, t, next);
    if (!wt) continue;
    dfs(w, t, depth + 1, next, partial * *wt, acc, leaves);
  }
}

// Breadth-first expansion to at least `target` open nodes (or exhaustion).
// Leaves reached during expansion are summed into acc.
inline std::vector<Node> expand_frontier(const MorseWord& w, const WeightTable& t, std::size_t target, LaurentPoly& acc,
                                         std::uint64_t& leaves) {
  const auto& ev = w.events();
  std::vector<Node> frontier(1);
  while (!frontier.empty() && frontier.size() < target && frontier.front().depth < ev.size()) {
    std::vector<Node> next;
    for (const Node& nd : frontier) {
      const MorseEvent& e = ev[nd.depth];
      const int forced = forced_label(e, nd.row);
      for (int l : {1, -1}) {
        if (forced != 0 && l != forced) continue;
        Node child{nd.depth + 1, nd.row, {}};
        const LaurentPoly* wt = apply_event(e, l, t, child.row);
        if (!wt) continue;
        child.partial = nd.partial * *wt;
        next.push_back(std::move(child));
      }
    }
    frontier = std::move(next);
  }
  if (!frontier.empty() && frontier.front().depth == ev.size()) {
    for (const Node& nd : frontier) {
      acc += nd.partial;
      ++leaves;
    }
    frontier.clear();
  }
  return frontier;
}

}  // namespace knotsum::detail
