#include "knotsum/weight_table.hpp"

#include <sstream>

namespace knotsum {

namespace {

using Matrix = std::vector<std::vector<LaurentPoly>>;

Matrix zeros(std::size_t n) { return Matrix(n, std::vector<LaurentPoly>(n)); }

Matrix identity(std::size_t n) {
  Matrix m = zeros(n);
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

Matrix multiply(const Matrix& a, const Matrix& b) {
  const std::size_t n = a.size();
  Matrix c = zeros(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      if (a[i][k].is_zero()) continue;
      for (std::size_t j = 0; j < n; ++j)
        if (!b[k][j].is_zero()) c[i][j] += a[i][k] * b[k][j];
    }
  return c;
}

// 4x4 transfer matrix M[out][in] with row/col index (bit(l1) << 1) | bit(l2).
Matrix crossing_matrix(const WeightTable& t, bool positive) {
  Matrix m = zeros(4);
  for (int in = 0; in < 4; ++in)
    for (int out = 0; out < 4; ++out)
      m[static_cast<std::size_t>(out)][static_cast<std::size_t>(in)] =
          t.crossing(positive, bit_label(in >> 1), bit_label(in & 1), bit_label(out >> 1), bit_label(out & 1));
  return m;
}

// Embeds a 4x4 two-strand matrix into three strands at offset 0 or 1.
Matrix embed3(const Matrix& r, int offset) {
  Matrix m = zeros(8);
  for (int in = 0; in < 8; ++in)
    for (int out = 0; out < 8; ++out) {
      const int bits_in[3] = {(in >> 2) & 1, (in >> 1) & 1, in & 1};
      const int bits_out[3] = {(out >> 2) & 1, (out >> 1) & 1, out & 1};
      const int spectator = offset == 0 ? 2 : 0;
      if (bits_in[spectator] != bits_out[spectator]) continue;
      const int a = (bits_in[offset] << 1) | bits_in[offset + 1];
      const int b = (bits_out[offset] << 1) | bits_out[offset + 1];
      m[static_cast<std::size_t>(out)][static_cast<std::size_t>(in)] = r[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)];
    }
  return m;
}

}  // namespace

WeightTable default_table() {
  WeightTable t;
  const LaurentPoly a = LaurentPoly::monomial(-1);
  const LaurentPoly a_inv = LaurentPoly::monomial(1);
  t.cup[static_cast<std::size_t>(WeightTable::pair_index(+1, -1))] = LaurentPoly::monomial(-1, {0, 1});
  t.cup[static_cast<std::size_t>(WeightTable::pair_index(-1, +1))] = LaurentPoly::monomial(1, {0, -1});
  t.cap = t.cup;
  for (int i1 : {1, -1})
    for (int i2 : {1, -1})
      for (int o1 : {1, -1})
        for (int o2 : {1, -1}) {
          const LaurentPoly vertical = (i1 == o1 && i2 == o2) ? LaurentPoly(1) : LaurentPoly();
          const LaurentPoly turn = t.cap[static_cast<std::size_t>(WeightTable::pair_index(i1, i2))] *
                                   t.cup[static_cast<std::size_t>(WeightTable::pair_index(o1, o2))];
          const auto idx = static_cast<std::size_t>(WeightTable::crossing_index(i1, i2, o1, o2));
          t.crossing_pos[idx] = a * vertical + a_inv * turn;
          t.crossing_neg[idx] = a_inv * vertical + a * turn;
        }
  return t;
}

WeightTable corrupted_table() {
  WeightTable t = default_table();
  t.crossing_pos[static_cast<std::size_t>(WeightTable::crossing_index(-1, +1, -1, +1))] = LaurentPoly::monomial(-1);
  return t;
}

std::string label_key(int index, int width) {
  std::string s;
  for (int b = width - 1; b >= 0; --b) s += ((index >> b) & 1) ? '-' : '+';
  return s;
}

int parse_label_key(std::string_view key, int width) {
  if (static_cast<int>(key.size()) != width)
    throw std::invalid_argument("label key '" + std::string(key) + "' must have " + std::to_string(width) + " symbols");
  int idx = 0;
  for (char c : key) {
    if (c != '+' && c != '-') throw std::invalid_argument("label key '" + std::string(key) + "' may only contain + and -");
    idx = (idx << 1) | (c == '-' ? 1 : 0);
  }
  return idx;
}

std::vector<TableCheck> check_table(const WeightTable& t) {
  std::vector<TableCheck> out;

  TableCheck charge{"charge", true, {}};
  for (int positive = 0; positive < 2; ++positive)
    for (int idx = 0; idx < 16; ++idx) {
      const int i1 = bit_label((idx >> 3) & 1), i2 = bit_label((idx >> 2) & 1);
      const int o1 = bit_label((idx >> 1) & 1), o2 = bit_label(idx & 1);
      if (i1 + i2 != o1 + o2 && !t.crossing(positive != 0, i1, i2, o1, o2).is_zero()) {
        charge.passed = false;
        charge.detail += std::string(positive ? "crossing_pos " : "crossing_neg ") + label_key(idx, 4) + " nonzero; ";
      }
    }
  for (int idx : {0, 3}) {
    if (!t.cup[static_cast<std::size_t>(idx)].is_zero()) {
      charge.passed = false;
      charge.detail += "cup " + label_key(idx, 2) + " nonzero; ";
    }
    if (!t.cap[static_cast<std::size_t>(idx)].is_zero()) {
      charge.passed = false;
      charge.detail += "cap " + label_key(idx, 2) + " nonzero; ";
    }
  }
  out.push_back(charge);

  TableCheck snake{"snake", true, {}};
  for (int a : {1, -1})
    for (int c : {1, -1}) {
      LaurentPoly z1, z2;
      for (int b : {1, -1}) {
        z1 += t.cap[static_cast<std::size_t>(WeightTable::pair_index(a, b))] *
              t.cup[static_cast<std::size_t>(WeightTable::pair_index(b, c))];
        z2 += t.cup[static_cast<std::size_t>(WeightTable::pair_index(c, b))] *
              t.cap[static_cast<std::size_t>(WeightTable::pair_index(b, a))];
      }
      const LaurentPoly want = a == c ? LaurentPoly(1) : LaurentPoly();
      if (z1 != want || z2 != want) {
        snake.passed = false;
        snake.detail += "zig-zag fails for labels (" + label_key(WeightTable::pair_index(a, c), 2) + "); ";
      }
    }
  out.push_back(snake);

  const Matrix pos = crossing_matrix(t, true);
  const Matrix neg = crossing_matrix(t, false);
  TableCheck r2{"R2", true, {}};
  if (multiply(neg, pos) != identity(4)) {
    r2.passed = false;
    r2.detail += "x- after x+ is not the identity; ";
  }
  if (multiply(pos, neg) != identity(4)) {
    r2.passed = false;
    r2.detail += "x+ after x- is not the identity; ";
  }
  out.push_back(r2);

  TableCheck r3{"R3", true, {}};
  for (int e0 : {1, -1})
    for (int e1 : {1, -1})
      for (int e2 : {1, -1}) {
        if (e0 == e2 && e0 != e1) continue;
        const auto& m0 = e0 > 0 ? pos : neg;
        const auto& m1 = e1 > 0 ? pos : neg;
        const auto& m2 = e2 > 0 ? pos : neg;
        for (int a : {0, 1}) {
          const int b = 1 - a;
          // bottom-to-top (a, b, a) with signs (e0, e1, e2) versus (b, a, b) with (e2, e1, e0)
          const Matrix lhs = multiply(embed3(m2, a), multiply(embed3(m1, b), embed3(m0, a)));
          const Matrix rhs = multiply(embed3(m0, b), multiply(embed3(m1, a), embed3(m2, b)));
          if (lhs != rhs) {
            r3.passed = false;
            std::ostringstream os;
            os << "braid relation fails for signs (" << e0 << "," << e1 << "," << e2 << ") at offset " << a << "; ";
            r3.detail += os.str();
          }
        }
      }
  out.push_back(r3);
  return out;
}

bool table_ok(const std::vector<TableCheck>& checks) {
  for (const auto& c : checks)
    if (!c.passed) return false;
  return true;
}

void require_valid(const WeightTable& t) {
  const auto checks = check_table(t);
  if (table_ok(checks)) return;
  std::string msg = "weight table rejected:";
  for (const auto& c : checks)
    if (!c.passed) msg += " [" + c.name + "] " + c.detail;
  throw TableError(msg);
}

}  // namespace knotsum
