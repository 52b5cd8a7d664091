#pragma once

// Link diagrams as Morse words: a bottom-to-top sequence of cups (minima),
// caps (maxima) and crossings acting on densely numbered strand positions.

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace knotsum {

enum class EventKind { Cup, Cap, CrossPos, CrossNeg };

struct MorseEvent {
  EventKind kind;
  int position;
  friend bool operator==(const MorseEvent&, const MorseEvent&) = default;
};

[[nodiscard]] bool is_crossing(EventKind k);

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int column, const std::string& what);
  [[nodiscard]] int line() const { return line_; }
  [[nodiscard]] int column() const { return column_; }

 private:
  int line_;
  int column_;
};

// Raised when a word violates a strand-count invariant.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class MorseWord {
 public:
  MorseWord() = default;
  // Throws ValidationError naming the first violated invariant.
  explicit MorseWord(std::vector<MorseEvent> events);

  [[nodiscard]] const std::vector<MorseEvent>& events() const { return events_; }
  [[nodiscard]] std::size_t size() const { return events_.size(); }
  // Number of strands live just below event i (i == size() gives the final count, 0).
  [[nodiscard]] int width_before(std::size_t i) const { return widths_[i]; }
  [[nodiscard]] int max_width() const;

  friend bool operator==(const MorseWord& a, const MorseWord& b) { return a.events_ == b.events_; }

 private:
  std::vector<MorseEvent> events_;
  std::vector<int> widths_{0};
};

[[nodiscard]] MorseWord parse_word(std::string_view text);
[[nodiscard]] std::string to_text(const MorseWord& w);

[[nodiscard]] const std::vector<std::string>& builtin_names();
// Throws std::out_of_range for an unknown name.
[[nodiscard]] MorseWord builtin(std::string_view name);

// Arc incidence: one arc per strand piece between consecutive events.
struct ArcEnd {
  int event = -1;
  int slot = -1;  // 0 = left, 1 = right
};

struct Arc {
  ArcEnd bottom;  // producing event (cup or crossing output)
  ArcEnd top;     // consuming event (crossing input or cap)
};

struct ArcGraph {
  std::vector<Arc> arcs;
  // Per event: input arcs (bottom, left to right) and output arcs (top).
  std::vector<std::vector<int>> inputs;
  std::vector<std::vector<int>> outputs;
};

[[nodiscard]] ArcGraph arc_graph(const MorseWord& w);

// Canonical traversal: components ordered by earliest cup, each entered at
// that cup's left leg moving upward.
struct Traversal {
  std::vector<int> component_of_arc;
  std::vector<int> upward;  // +1 / -1 per arc
  int components = 0;
};

[[nodiscard]] Traversal traverse(const MorseWord& w, const ArcGraph& g);

// Sign of each crossing under the canonical orientation (0 for non-crossings).
[[nodiscard]] std::vector<int> crossing_signs(const MorseWord& w);

struct DiagramStats {
  int crossings = 0;
  int cups = 0;
  int caps = 0;
  int segments = 0;
  int components = 0;
  int writhe = 0;
  friend bool operator==(const DiagramStats&, const DiagramStats&) = default;
};

[[nodiscard]] DiagramStats stats(const MorseWord& w);

enum class MoveKind { R1, R2, R3 };

struct Variant {
  MoveKind move;
  std::size_t site;  // insertion/rewrite index in the event list
  MorseWord word;
};

// One variant per applicable site: free R1 kinks (both signs, every strand of
// every gap), R2 pairs (both orders, every adjacent pair of every gap) and R3
// slides of consecutive crossing triples (i, i+1, i) / (i+1, i, i+1) whose
// sign pattern admits the braid relation.
[[nodiscard]] std::vector<Variant> reidemeister_variants(const MorseWord& w);

struct RandomWordOptions {
  int max_crossings = 10;
  int max_strands = 6;
};

[[nodiscard]] MorseWord random_word(std::mt19937_64& rng, const RandomWordOptions& opt = {});

// Plat closure: `bridges` cups, `crossings` random crossings on 2*bridges
// strands, then caps. Dense in braid triples, so it exercises R3.
[[nodiscard]] MorseWord random_plat(std::mt19937_64& rng, int bridges, int crossings);

}  // namespace knotsum
