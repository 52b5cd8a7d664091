#include "knotsum/diagram.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <sstream>
#include <utility>

namespace knotsum {

bool is_crossing(EventKind k) { return k == EventKind::CrossPos || k == EventKind::CrossNeg; }

ParseError::ParseError(int line, int column, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
      line_(line),
      column_(column) {}

namespace {

const char* keyword(EventKind k) {
  switch (k) {
    case EventKind::Cup: return "cup";
    case EventKind::Cap: return "cap";
    case EventKind::CrossPos: return "x+";
    case EventKind::CrossNeg: return "x-";
  }
  return "?";
}

// Empty string when the event is admissible at width n.
std::string check_event(const MorseEvent& e, int n) {
  if (e.position < 0) return "negative strand position " + std::to_string(e.position);
  if (e.kind == EventKind::Cup) {
    if (e.position > n)
      return "cup at position " + std::to_string(e.position) + " exceeds strand count " + std::to_string(n);
    return {};
  }
  if (n < 2)
    return std::string(keyword(e.kind)) + " with " + std::to_string(n) + " strands live";
  if (e.position > n - 2)
    return std::string(keyword(e.kind)) + " at position " + std::to_string(e.position) +
           " needs strands " + std::to_string(e.position) + "," + std::to_string(e.position + 1) +
           " but only " + std::to_string(n) + " are live";
  return {};
}

int width_after(const MorseEvent& e, int n) {
  if (e.kind == EventKind::Cup) return n + 2;
  if (e.kind == EventKind::Cap) return n - 2;
  return n;
}

}  // namespace

MorseWord::MorseWord(std::vector<MorseEvent> events) : events_(std::move(events)) {
  int n = 0;
  widths_.assign(1, 0);
  for (std::size_t i = 0; i < events_.size(); ++i) {
    if (auto err = check_event(events_[i], n); !err.empty())
      throw ValidationError("event " + std::to_string(i) + ": " + err);
    n = width_after(events_[i], n);
    widths_.push_back(n);
  }
  if (n != 0) throw ValidationError("word ends with " + std::to_string(n) + " open strands");
}

int MorseWord::max_width() const { return *std::max_element(widths_.begin(), widths_.end()); }

MorseWord parse_word(std::string_view text) {
  std::vector<MorseEvent> events;
  int n = 0;
  int line = 1;
  std::size_t i = 0;
  std::size_t line_start = 0;

  struct Token {
    std::string text;
    int column;
  };
  std::vector<Token> stmt;
  int stmt_line = 1;

  auto flush = [&]() {
    if (stmt.empty()) return;
    const Token& kw = stmt[0];
    MorseEvent ev{};
    if (kw.text == "cup") ev.kind = EventKind::Cup;
    else if (kw.text == "cap") ev.kind = EventKind::Cap;
    else if (kw.text == "x+") ev.kind = EventKind::CrossPos;
    else if (kw.text == "x-") ev.kind = EventKind::CrossNeg;
    else throw ParseError(stmt_line, kw.column, "unknown event '" + kw.text + "'");
    if (stmt.size() < 2) throw ParseError(stmt_line, kw.column, "missing strand position after '" + kw.text + "'");
    if (stmt.size() > 2) throw ParseError(stmt_line, stmt[2].column, "unexpected token '" + stmt[2].text + "'");
    const Token& num = stmt[1];
    int value = 0;
    const char* first = num.text.data();
    const char* last = first + num.text.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last)
      throw ParseError(stmt_line, num.column, "expected integer, got '" + num.text + "'");
    ev.position = value;
    if (auto err = check_event(ev, n); !err.empty()) throw ParseError(stmt_line, kw.column, err);
    n = width_after(ev, n);
    events.push_back(ev);
    stmt.clear();
  };

  while (i < text.size()) {
    const char c = text[i];
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') ++i;
      continue;
    }
    if (c == '\n' || c == ';') {
      flush();
      if (c == '\n') {
        ++line;
        line_start = i + 1;
      }
      ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i])) && text[i] != ';' &&
           text[i] != '#')
      ++i;
    if (stmt.empty()) stmt_line = line;
    stmt.push_back({std::string(text.substr(start, i - start)), static_cast<int>(start - line_start) + 1});
  }
  flush();
  if (n != 0)
    throw ParseError(line, static_cast<int>(text.size() - line_start) + 1,
                     "word ends with " + std::to_string(n) + " open strands");
  return MorseWord(std::move(events));
}

std::string to_text(const MorseWord& w) {
  std::ostringstream os;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) os << "; ";
    os << keyword(w.events()[i].kind) << ' ' << w.events()[i].position;
  }
  return os.str();
}

namespace {

const std::array<std::pair<const char*, const char*>, 7> kBuiltins{{
    {"unknot", "cup 0; cap 0"},
    {"trefoil_left", "cup 0; cup 2; x- 1; x- 1; x- 1; cap 2; cap 0"},
    {"trefoil_right", "cup 0; cup 2; x+ 1; x+ 1; x+ 1; cap 2; cap 0"},
    {"figure_eight", "cup 0; cup 2; x+ 1; x- 0; x+ 1; x+ 1; cap 2; cap 0"},
    {"hopf_pos", "cup 0; cup 2; x- 1; x- 1; cap 2; cap 0"},
    {"hopf_neg", "cup 0; cup 2; x+ 1; x+ 1; cap 2; cap 0"},
    {"unlink2", "cup 0; cap 0; cup 0; cap 0"},
}};

}  // namespace

const std::vector<std::string>& builtin_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [name, _] : kBuiltins) v.emplace_back(name);
    return v;
  }();
  return names;
}

MorseWord builtin(std::string_view name) {
  for (const auto& [n, text] : kBuiltins)
    if (name == n) return parse_word(text);
  throw std::out_of_range("unknown diagram '" + std::string(name) + "'");
}

ArcGraph arc_graph(const MorseWord& w) {
  ArcGraph g;
  g.inputs.resize(w.size());
  g.outputs.resize(w.size());
  std::vector<int> row;
  auto new_arc = [&](int event, int slot) {
    g.arcs.push_back({{event, slot}, {}});
    return static_cast<int>(g.arcs.size()) - 1;
  };
  for (std::size_t i = 0; i < w.size(); ++i) {
    const auto& e = w.events()[i];
    const int ev = static_cast<int>(i);
    const auto p = static_cast<std::size_t>(e.position);
    if (e.kind != EventKind::Cup) {
      for (int s = 0; s < 2; ++s) {
        const int a = row[p + static_cast<std::size_t>(s)];
        g.arcs[static_cast<std::size_t>(a)].top = {ev, s};
        g.inputs[i].push_back(a);
      }
      row.erase(row.begin() + static_cast<std::ptrdiff_t>(p), row.begin() + static_cast<std::ptrdiff_t>(p) + 2);
    }
    if (e.kind != EventKind::Cap) {
      const int left = new_arc(ev, 0);
      const int right = new_arc(ev, 1);
      g.outputs[i] = {left, right};
      row.insert(row.begin() + static_cast<std::ptrdiff_t>(p), {left, right});
    }
  }
  return g;
}

Traversal traverse(const MorseWord& w, const ArcGraph& g) {
  Traversal t;
  t.component_of_arc.assign(g.arcs.size(), -1);
  t.upward.assign(g.arcs.size(), 0);
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w.events()[i].kind != EventKind::Cup) continue;
    const int start = g.outputs[i][0];
    if (t.component_of_arc[static_cast<std::size_t>(start)] >= 0) continue;
    const int comp = t.components++;
    int arc = start;
    int dir = +1;
    do {
      const auto a = static_cast<std::size_t>(arc);
      t.component_of_arc[a] = comp;
      t.upward[a] = dir;
      if (dir > 0) {
        const auto [ev, slot] = g.arcs[a].top;
        const auto e = static_cast<std::size_t>(ev);
        if (w.events()[e].kind == EventKind::Cap) {
          arc = g.inputs[e][static_cast<std::size_t>(1 - slot)];
          dir = -1;
        } else {
          arc = g.outputs[e][static_cast<std::size_t>(1 - slot)];
        }
      } else {
        const auto [ev, slot] = g.arcs[a].bottom;
        const auto e = static_cast<std::size_t>(ev);
        if (w.events()[e].kind == EventKind::Cup) {
          arc = g.outputs[e][static_cast<std::size_t>(1 - slot)];
          dir = +1;
        } else {
          arc = g.inputs[e][static_cast<std::size_t>(1 - slot)];
        }
      }
    } while (!(arc == start && dir == +1));
  }
  return t;
}

std::vector<int> crossing_signs(const MorseWord& w) {
  const ArcGraph g = arc_graph(w);
  const Traversal t = traverse(w, g);
  std::vector<int> signs(w.size(), 0);
  for (std::size_t i = 0; i < w.size(); ++i) {
    const auto k = w.events()[i].kind;
    if (!is_crossing(k)) continue;
    const int base = k == EventKind::CrossPos ? 1 : -1;
    signs[i] = base * t.upward[static_cast<std::size_t>(g.inputs[i][0])] *
               t.upward[static_cast<std::size_t>(g.inputs[i][1])];
  }
  return signs;
}

DiagramStats stats(const MorseWord& w) {
  DiagramStats s;
  for (const auto& e : w.events()) {
    if (e.kind == EventKind::Cup) ++s.cups;
    else if (e.kind == EventKind::Cap) ++s.caps;
    else ++s.crossings;
  }
  s.segments = static_cast<int>(w.size());
  const ArcGraph g = arc_graph(w);
  s.components = traverse(w, g).components;
  for (int sign : crossing_signs(w)) s.writhe += sign;
  return s;
}

namespace {

MorseWord splice(const MorseWord& w, std::size_t at, std::size_t erase, const std::vector<MorseEvent>& insert) {
  std::vector<MorseEvent> ev = w.events();
  ev.erase(ev.begin() + static_cast<std::ptrdiff_t>(at), ev.begin() + static_cast<std::ptrdiff_t>(at + erase));
  ev.insert(ev.begin() + static_cast<std::ptrdiff_t>(at), insert.begin(), insert.end());
  return MorseWord(std::move(ev));
}

EventKind signed_crossing(int sign) { return sign > 0 ? EventKind::CrossPos : EventKind::CrossNeg; }
int sign_of(EventKind k) { return k == EventKind::CrossPos ? 1 : -1; }

}  // namespace

std::vector<Variant> reidemeister_variants(const MorseWord& w) {
  std::vector<Variant> out;
  for (std::size_t gap = 0; gap <= w.size(); ++gap) {
    const int n = w.width_before(gap);
    for (int j = 0; j < n; ++j)
      for (int sign : {+1, -1})
        out.push_back({MoveKind::R1, gap,
                       splice(w, gap, 0, {{EventKind::Cup, j + 1}, {signed_crossing(sign), j}, {EventKind::Cap, j + 1}})});
    for (int i = 0; i + 1 < n; ++i)
      for (int sign : {+1, -1})
        out.push_back({MoveKind::R2, gap, splice(w, gap, 0, {{signed_crossing(sign), i}, {signed_crossing(-sign), i}})});
  }
  const auto& ev = w.events();
  for (std::size_t s = 0; s + 3 <= ev.size(); ++s) {
    if (!is_crossing(ev[s].kind) || !is_crossing(ev[s + 1].kind) || !is_crossing(ev[s + 2].kind)) continue;
    const int a = ev[s].position;
    const int b = ev[s + 1].position;
    if (ev[s + 2].position != a || (b != a + 1 && b != a - 1)) continue;
    const int e0 = sign_of(ev[s].kind);
    const int e1 = sign_of(ev[s + 1].kind);
    const int e2 = sign_of(ev[s + 2].kind);
    if (e0 == e2 && e0 != e1) continue;  // alternating pattern admits no braid relation
    out.push_back({MoveKind::R3, s,
                   splice(w, s, 3, {{signed_crossing(e2), b}, {signed_crossing(e1), a}, {signed_crossing(e0), b}})});
  }
  return out;
}

MorseWord random_word(std::mt19937_64& rng, const RandomWordOptions& opt) {
  std::uniform_int_distribution<int> target_dist(0, opt.max_crossings);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  const int target = target_dist(rng);
  const auto pick = [&rng](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  std::vector<MorseEvent> ev;
  int n = 0;
  int crossings = 0;
  while (true) {
    if (crossings >= target) {
      if (n == 0 && !ev.empty()) break;
      if (n == 0) {
        ev.push_back({EventKind::Cup, 0});
        n = 2;
        continue;
      }
      ev.push_back({EventKind::Cap, pick(0, n - 2)});
      n -= 2;
      continue;
    }
    const double r = coin(rng);
    if (n == 0 || (r < 0.2 && n + 2 <= opt.max_strands)) {
      ev.push_back({EventKind::Cup, pick(0, n)});
      n += 2;
    } else if (r < 0.85 || n == 2) {
      ev.push_back({signed_crossing(coin(rng) < 0.5 ? 1 : -1), pick(0, n - 2)});
      ++crossings;
    } else {
      ev.push_back({EventKind::Cap, pick(0, n - 2)});
      n -= 2;
    }
  }
  return MorseWord(std::move(ev));
}

}  // namespace knotsum

namespace knotsum {

MorseWord random_plat(std::mt19937_64& rng, int bridges, int crossings) {
  if (bridges < 1) throw std::invalid_argument("random_plat: need at least one bridge");
  const int width = 2 * bridges;
  std::vector<MorseEvent> ev;
  for (int b = 0; b < bridges; ++b) ev.push_back({EventKind::Cup, 2 * b});
  std::uniform_int_distribution<int> pos(0, width - 2);
  std::uniform_int_distribution<int> sign(0, 1);
  for (int c = 0; c < crossings; ++c) ev.push_back({sign(rng) ? EventKind::CrossPos : EventKind::CrossNeg, pos(rng)});
  for (int b = bridges - 1; b >= 0; --b) ev.push_back({EventKind::Cap, 2 * b});
  return MorseWord(std::move(ev));
}

}  // namespace knotsum
