#include "knotsum/bigraded.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <utility>

namespace knotsum {

namespace {

std::int64_t add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("integer overflow");
  return r;
}

std::int64_t mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("integer overflow");
  return r;
}

std::int64_t sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) throw std::overflow_error("integer overflow");
  return r;
}

// Matrix operations applied in lockstep to D and its transform.
void row_axpy(IntMatrix& m, std::size_t dst, std::size_t src, std::int64_t c) {
  for (std::size_t j = 0; j < m.cols(); ++j) m(dst, j) = sub(m(dst, j), mul(c, m(src, j)));
}
void col_axpy(IntMatrix& m, std::size_t dst, std::size_t src, std::int64_t c) {
  for (std::size_t i = 0; i < m.rows(); ++i) m(i, dst) = sub(m(i, dst), mul(c, m(i, src)));
}
void row_swap(IntMatrix& m, std::size_t a, std::size_t b) {
  for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(a, j), m(b, j));
}
void col_swap(IntMatrix& m, std::size_t a, std::size_t b) {
  for (std::size_t i = 0; i < m.rows(); ++i) std::swap(m(i, a), m(i, b));
}
void row_negate(IntMatrix& m, std::size_t r) {
  for (std::size_t j = 0; j < m.cols(); ++j) m(r, j) = -m(r, j);
}

}  // namespace

Rational::Rational(std::int64_t n, std::int64_t d) {
  if (d == 0) throw std::domain_error("Rational: zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  const std::int64_t g = std::gcd(n, d);
  num = g ? n / g : 0;
  den = g ? d / g : 1;
}

std::string Rational::to_string() const {
  return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
}

Rational parse_rational(const std::string& s) {
  std::size_t pos = 0;
  try {
    const auto slash = s.find('/');
    const std::int64_t n = std::stoll(s.substr(0, slash), &pos);
    if (pos != (slash == std::string::npos ? s.size() : slash)) throw std::invalid_argument(s);
    if (slash == std::string::npos) return {n, 1};
    const std::string ds = s.substr(slash + 1);
    const std::int64_t d = std::stoll(ds, &pos);
    if (pos != ds.size()) throw std::invalid_argument(s);
    return {n, d};
  } catch (const std::logic_error&) {
    throw std::invalid_argument("malformed rational '" + s + "'");
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

bool IntMatrix::is_zero() const {
  return std::all_of(a_.begin(), a_.end(), [](std::int64_t v) { return v == 0; });
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("IntMatrix: shape mismatch");
  IntMatrix r(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const std::int64_t x = a(i, k);
      if (!x) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) r(i, j) = add(r(i, j), mul(x, b(k, j)));
    }
  return r;
}

std::int64_t determinant(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant: matrix not square");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMatrix a = m;
  std::int64_t sign = 1;
  std::int64_t prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      row_swap(a, k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        a(i, j) = sub(mul(a(i, j), a(k, k)), mul(a(i, k), a(k, j))) / prev;
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

std::vector<std::int64_t> SmithForm::invariant_factors() const {
  std::vector<std::int64_t> out;
  for (std::size_t i = 0; i < std::min(d.rows(), d.cols()); ++i)
    if (d(i, i) != 0) out.push_back(d(i, i));
  return out;
}

SmithForm smith_normal_form(const IntMatrix& a) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  SmithForm s{IntMatrix::identity(m), a, IntMatrix::identity(n)};
  IntMatrix& d = s.d;
  for (std::size_t t = 0; t < std::min(m, n); ++t) {
    for (;;) {
      // Smallest nonzero magnitude in the trailing block becomes the pivot.
      std::size_t pr = m, pc = n;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j)
          if (d(i, j) != 0 && (pr == m || std::abs(d(i, j)) < std::abs(d(pr, pc)))) {
            pr = i;
            pc = j;
          }
      if (pr == m) return s;
      if (pr != t) {
        row_swap(d, t, pr);
        row_swap(s.u, t, pr);
      }
      if (pc != t) {
        col_swap(d, t, pc);
        col_swap(s.v, t, pc);
      }
      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        const std::int64_t q = d(i, t) / d(t, t);
        if (q) {
          row_axpy(d, i, t, q);
          row_axpy(s.u, i, t, q);
        }
        if (d(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        const std::int64_t q = d(t, j) / d(t, t);
        if (q) {
          col_axpy(d, j, t, q);
          col_axpy(s.v, j, t, q);
        }
        if (d(t, j) != 0) clean = false;
      }
      if (!clean) continue;
      // Enforce divisibility of the remaining block by the pivot.
      bool divides = true;
      for (std::size_t i = t + 1; i < m && divides; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (d(i, j) % d(t, t) != 0) {
            row_axpy(d, t, i, -1);
            row_axpy(s.u, t, i, -1);
            divides = false;
            break;
          }
      if (divides) break;
    }
    if (d(t, t) < 0) {
      row_negate(d, t);
      row_negate(s.u, t);
    }
  }
  return s;
}

void validate(const BigradedComplex& c) {
  const std::size_t n = c.generators.size();
  if (c.q.rows() != n || c.q.cols() != n) {
    std::ostringstream os;
    os << "Q has shape " << c.q.rows() << "x" << c.q.cols() << ", expected " << n << "x" << n;
    throw ComplexError(os.str());
  }
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) {
      if (c.q(j, i) == 0) continue;
      const Generator& gi = c.generators[i];
      const Generator& gj = c.generators[j];
      if (gj.p != gi.p || gj.f != gi.f + 1) {
        std::ostringstream os;
        os << "grading error: Q[" << j << "][" << i << "] = " << c.q(j, i) << " maps (P=" << gi.p << ",F=" << gi.f
           << ") to (P=" << gj.p << ",F=" << gj.f << "); Q must preserve P and raise F by 1";
        throw ComplexError(os.str());
      }
    }
  const IntMatrix q2 = c.q * c.q;
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i)
      if (q2(j, i) != 0) {
        std::ostringstream os;
        os << "Q^2 != 0: (Q*Q)[" << j << "][" << i << "] = " << q2(j, i);
        throw ComplexError(os.str());
      }
}

namespace {

using Bigrade = std::pair<std::int64_t, int>;

std::map<Bigrade, std::vector<std::size_t>> bigrade_index(const BigradedComplex& c) {
  std::map<Bigrade, std::vector<std::size_t>> idx;
  for (std::size_t i = 0; i < c.generators.size(); ++i) idx[{c.generators[i].p, c.generators[i].f}].push_back(i);
  return idx;
}

IntMatrix block(const IntMatrix& q, const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) {
  IntMatrix b(rows.size(), cols.size());
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t s = 0; s < cols.size(); ++s) b(r, s) = q(rows[r], cols[s]);
  return b;
}

}  // namespace

std::vector<BigradeGroup> cohomology(const BigradedComplex& c) {
  validate(c);
  const auto idx = bigrade_index(c);
  const std::vector<std::size_t> none;
  auto gens = [&](std::int64_t p, int f) -> const std::vector<std::size_t>& {
    const auto it = idx.find({p, f});
    return it == idx.end() ? none : it->second;
  };
  std::vector<BigradeGroup> out;
  for (const auto& [grade, here] : idx) {
    const auto [p, f] = grade;
    const SmithForm outgoing = smith_normal_form(block(c.q, gens(p, f + 1), here));
    const SmithForm incoming = smith_normal_form(block(c.q, here, gens(p, f - 1)));
    BigradeGroup g;
    g.p = p;
    g.f = f;
    g.dim = static_cast<int>(here.size());
    g.free_rank = g.dim - static_cast<int>(outgoing.rank()) - static_cast<int>(incoming.rank());
    for (const std::int64_t d : incoming.invariant_factors())
      if (d > 1) g.torsion.push_back(d);
    out.push_back(std::move(g));
  }
  return out;
}

GradedEuler euler_V(const BigradedComplex& c) {
  validate(c);
  std::vector<LaurentPoly::Term> terms;
  for (const auto& g : c.generators)
    terms.push_back({static_cast<int>(4 * g.p), GaussInt{(g.f % 2 == 0) ? 1 : -1, 0}});
  return {LaurentPoly::from_terms(std::move(terms)), c.offset_c};
}

GradedEuler euler_H(const BigradedComplex& c) {
  std::vector<LaurentPoly::Term> terms;
  for (const auto& g : cohomology(c))
    if (g.free_rank) terms.push_back({static_cast<int>(4 * g.p), GaussInt{(g.f % 2 == 0) ? g.free_rank : -g.free_rank, 0}});
  return {LaurentPoly::from_terms(std::move(terms)), c.offset_c};
}

BigradedComplex change_basis(const BigradedComplex& c, const IntMatrix& t, const IntMatrix& t_inv) {
  const std::size_t n = c.generators.size();
  if (t.rows() != n || t.cols() != n || t_inv.rows() != n || t_inv.cols() != n)
    throw ComplexError("change_basis: shape mismatch");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (t(i, j) != 0 && (c.generators[i].p != c.generators[j].p || c.generators[i].f != c.generators[j].f))
        throw ComplexError("change_basis: transform mixes bigrades");
  if (t * t_inv != IntMatrix::identity(n)) throw ComplexError("change_basis: t_inv is not the inverse of t");
  BigradedComplex out = c;
  out.q = t * c.q * t_inv;
  return out;
}

namespace {

// Random unimodular transform within bigrades, and its inverse.
std::pair<IntMatrix, IntMatrix> random_unimodular(const BigradedComplex& c, std::mt19937_64& rng) {
  const std::size_t n = c.generators.size();
  IntMatrix t = IntMatrix::identity(n);
  IntMatrix ti = IntMatrix::identity(n);
  const auto idx = bigrade_index(c);
  std::uniform_int_distribution<int> coin(0, 1);
  for (const auto& [grade, members] : idx) {
    if (members.size() < 2) continue;
    std::uniform_int_distribution<std::size_t> pick(0, members.size() - 1);
    for (int step = 0; step < 3; ++step) {
      const std::size_t a = members[pick(rng)];
      const std::size_t b = members[pick(rng)];
      if (a == b) continue;
      const std::int64_t k = coin(rng) ? 1 : -1;
      // t <- E t with E = I + k e_ab; t_inv <- t_inv E^{-1}.
      row_axpy(t, a, b, -k);
      col_axpy(ti, b, a, k);
    }
  }
  return {t, ti};
}

BigradedComplex shuffled(const BigradedComplex& c, std::mt19937_64& rng) {
  const std::size_t n = c.generators.size();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  BigradedComplex out;
  out.offset_c = c.offset_c;
  out.q = IntMatrix(n, n);
  for (std::size_t i = 0; i < n; ++i) out.generators.push_back(c.generators[perm[i]]);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) out.q(j, i) = c.q(perm[j], perm[i]);
  return out;
}

struct Builder {
  BigradedComplex c;
  std::vector<std::tuple<std::size_t, std::size_t, std::int64_t>> entries;
  std::size_t add(std::int64_t p, int f) {
    c.generators.push_back({p, f});
    return c.generators.size() - 1;
  }
  BigradedComplex finish() {
    const std::size_t n = c.generators.size();
    c.q = IntMatrix(n, n);
    for (const auto& [j, i, v] : entries) c.q(j, i) = v;
    return c;
  }
};

void fill_random(Builder& b, std::mt19937_64& rng, const RandomComplexOptions& opt, int budget) {
  std::uniform_int_distribution<int> pd(opt.p_min, opt.p_max);
  std::uniform_int_distribution<int> fd(opt.f_min, opt.f_max - 1);
  std::uniform_int_distribution<int> kind(0, 3);
  std::uniform_int_distribution<int> weight(-3, 3);
  while (budget > 0) {
    const int k = kind(rng);
    const int p = pd(rng);
    const int f = fd(rng);
    if (k == 0 || budget < 2) {
      b.add(p, f);
      budget -= 1;
    } else {
      const std::size_t lo = b.add(p, f);
      const std::size_t hi = b.add(p, f + 1);
      int w = weight(rng);
      if (w == 0) w = 1;
      b.entries.emplace_back(hi, lo, w);
      budget -= 2;
    }
  }
}

}  // namespace

BigradedComplex random_complex(std::mt19937_64& rng, const RandomComplexOptions& opt) {
  std::uniform_int_distribution<int> size(1, opt.max_generators);
  Builder b;
  b.c.offset_c = Rational(std::uniform_int_distribution<int>(-3, 3)(rng), 2);
  fill_random(b, rng, opt, size(rng));
  BigradedComplex c = b.finish();
  const auto [t, ti] = random_unimodular(c, rng);
  return shuffled(change_basis(c, t, ti), rng);
}

BigradedComplex corrupted_complex(std::mt19937_64& rng, const RandomComplexOptions& opt) {
  std::uniform_int_distribution<int> size(0, std::max(0, opt.max_generators - 3));
  Builder b;
  fill_random(b, rng, opt, size(rng));
  const int p = std::uniform_int_distribution<int>(opt.p_min, opt.p_max)(rng);
  const int f = std::uniform_int_distribution<int>(opt.f_min, opt.f_max - 2)(rng);
  // Three generators in a row with both maps nonzero: Q^2 picks up x*y != 0.
  const std::size_t g0 = b.add(p, f), g1 = b.add(p, f + 1), g2 = b.add(p, f + 2);
  const std::int64_t x = std::uniform_int_distribution<int>(1, 3)(rng);
  const std::int64_t y = std::uniform_int_distribution<int>(1, 3)(rng);
  b.entries.emplace_back(g1, g0, x);
  b.entries.emplace_back(g2, g1, -y);
  BigradedComplex c = b.finish();
  const auto [t, ti] = random_unimodular(c, rng);
  return shuffled(change_basis(c, t, ti), rng);
}

}  // namespace knotsum
