#include "knotsum/laurent.hpp"

#include <algorithm>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace knotsum {

namespace {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("GaussInt: addition overflow");
  return r;
}

std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) throw std::overflow_error("GaussInt: subtraction overflow");
  return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("GaussInt: multiplication overflow");
  return r;
}

}  // namespace

GaussInt operator+(GaussInt a, GaussInt b) { return {checked_add(a.re, b.re), checked_add(a.im, b.im)}; }
GaussInt operator-(GaussInt a, GaussInt b) { return {checked_sub(a.re, b.re), checked_sub(a.im, b.im)}; }
GaussInt operator-(GaussInt a) { return GaussInt{0, 0} - a; }
GaussInt operator*(GaussInt a, GaussInt b) {
  return {checked_sub(checked_mul(a.re, b.re), checked_mul(a.im, b.im)),
          checked_add(checked_mul(a.re, b.im), checked_mul(a.im, b.re))};
}

GaussInt unit_inverse(GaussInt u) {
  if (!u.is_unit()) throw std::domain_error("unit_inverse: not a unit");
  return u.conj();
}

LaurentPoly::LaurentPoly(std::int64_t c) : LaurentPoly(GaussInt{c, 0}) {}

LaurentPoly::LaurentPoly(GaussInt c) {
  if (!c.is_zero()) terms_.push_back({0, c});
}

LaurentPoly LaurentPoly::monomial(int exp, GaussInt coeff) {
  LaurentPoly p;
  if (!coeff.is_zero()) p.terms_.push_back({exp, coeff});
  return p;
}

LaurentPoly LaurentPoly::from_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.exp < b.exp; });
  LaurentPoly p;
  for (const auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().exp == t.exp) {
      p.terms_.back().coeff += t.coeff;
    } else {
      p.terms_.push_back(t);
    }
  }
  std::erase_if(p.terms_, [](const Term& t) { return t.coeff.is_zero(); });
  return p;
}

int LaurentPoly::min_exp() const {
  if (terms_.empty()) throw std::domain_error("min_exp of zero polynomial");
  return terms_.front().exp;
}

int LaurentPoly::max_exp() const {
  if (terms_.empty()) throw std::domain_error("max_exp of zero polynomial");
  return terms_.back().exp;
}

GaussInt LaurentPoly::coeff(int exp) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), exp,
                             [](const Term& t, int e) { return t.exp < e; });
  return (it != terms_.end() && it->exp == exp) ? it->coeff : GaussInt{};
}

bool LaurentPoly::is_real() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const Term& t) { return t.coeff.im == 0; });
}

bool LaurentPoly::supported_on(int residue, int modulus) const {
  const auto mod = [modulus](int e) { return ((e % modulus) + modulus) % modulus; };
  return std::all_of(terms_.begin(), terms_.end(),
                     [&](const Term& t) { return mod(t.exp) == mod(residue); });
}

LaurentPoly LaurentPoly::mirror() const {
  LaurentPoly p;
  p.terms_.reserve(terms_.size());
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) p.terms_.push_back({-it->exp, it->coeff});
  return p;
}

LaurentPoly LaurentPoly::shifted(int by) const {
  LaurentPoly p = *this;
  for (auto& t : p.terms_) t.exp += by;
  return p;
}

LaurentPoly LaurentPoly::pow(unsigned n) const {
  LaurentPoly result(1);
  LaurentPoly base = *this;
  while (n) {
    if (n & 1u) result *= base;
    n >>= 1u;
    if (n) base *= base;
  }
  return result;
}

std::optional<LaurentPoly> LaurentPoly::divide_exact(const LaurentPoly& divisor) const {
  if (divisor.is_zero()) throw std::domain_error("division by zero polynomial");
  const GaussInt lead_inv = unit_inverse(divisor.terms_.back().coeff);
  const int dspan = divisor.max_exp() - divisor.min_exp();
  LaurentPoly rem = *this;
  std::vector<Term> quot;
  while (!rem.is_zero()) {
    if (rem.max_exp() - rem.min_exp() < dspan) return std::nullopt;
    const Term top = rem.terms_.back();
    const Term q{top.exp - divisor.max_exp(), top.coeff * lead_inv};
    quot.push_back(q);
    rem -= divisor * monomial(q.exp, q.coeff);
  }
  return from_terms(std::move(quot));
}

std::complex<double> LaurentPoly::eval(std::complex<double> u) const {
  std::complex<double> acc = 0.0;
  for (const auto& t : terms_) acc += t.coeff.to_complex() * std::pow(u, t.exp);
  return acc;
}

std::complex<double> LaurentPoly::eval_at_root_of_unity(int k) const {
  if (k + 2 == 0) throw std::domain_error("eval_at_root_of_unity: k + 2 must be nonzero");
  // Angles are reduced modulo one full turn in exact integer arithmetic first.
  const std::int64_t period = 4LL * (k + 2);
  std::complex<double> acc = 0.0;
  for (const auto& t : terms_) {
    const std::int64_t r = ((t.exp % period) + period) % period;
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(period);
    acc += t.coeff.to_complex() * std::polar(1.0, angle);
  }
  return acc;
}

std::string LaurentPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    const GaussInt c = t.coeff;
    std::string coeff;
    bool negative = false;
    if (c.im == 0) {
      negative = c.re < 0;
      const auto mag = negative ? -c.re : c.re;
      if (mag != 1 || t.exp == 0) coeff = std::to_string(mag);
    } else if (c.re == 0) {
      negative = c.im < 0;
      const auto mag = negative ? -c.im : c.im;
      coeff = (mag == 1 ? std::string() : std::to_string(mag)) + "i";
    } else {
      coeff = "(" + std::to_string(c.re) + (c.im < 0 ? "-" : "+") + std::to_string(c.im < 0 ? -c.im : c.im) + "i)";
    }
    if (first) {
      if (negative) os << '-';
    } else {
      os << (negative ? " - " : " + ");
    }
    os << coeff;
    if (t.exp != 0) {
      os << "u";
      if (t.exp != 1) os << '^' << t.exp;
    }
    first = false;
  }
  return os.str();
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  if (o.terms_.empty()) return *this;
  std::vector<Term> merged;
  merged.reserve(terms_.size() + o.terms_.size());
  auto a = terms_.begin();
  auto b = o.terms_.begin();
  while (a != terms_.end() || b != o.terms_.end()) {
    if (b == o.terms_.end() || (a != terms_.end() && a->exp < b->exp)) {
      merged.push_back(*a++);
    } else if (a == terms_.end() || b->exp < a->exp) {
      merged.push_back(*b++);
    } else {
      const GaussInt c = a->coeff + b->coeff;
      if (!c.is_zero()) merged.push_back({a->exp, c});
      ++a;
      ++b;
    }
  }
  terms_ = std::move(merged);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) { return *this += -o; }

LaurentPoly& LaurentPoly::operator*=(const LaurentPoly& o) { return *this = *this * o; }

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.terms_.empty() || b.terms_.empty()) return {};
  if (b.terms_.size() == 1) {
    LaurentPoly p;
    p.terms_.reserve(a.terms_.size());
    for (const auto& t : a.terms_) p.terms_.push_back({t.exp + b.terms_[0].exp, t.coeff * b.terms_[0].coeff});
    std::erase_if(p.terms_, [](const LaurentPoly::Term& t) { return t.coeff.is_zero(); });
    return p;
  }
  if (a.terms_.size() == 1) return b * a;
  // Dense accumulation over the exponent span.
  const int lo = a.terms_.front().exp + b.terms_.front().exp;
  const int hi = a.terms_.back().exp + b.terms_.back().exp;
  std::vector<GaussInt> acc(static_cast<std::size_t>(hi - lo + 1));
  for (const auto& x : a.terms_)
    for (const auto& y : b.terms_) acc[static_cast<std::size_t>(x.exp + y.exp - lo)] += x.coeff * y.coeff;
  LaurentPoly p;
  for (std::size_t i = 0; i < acc.size(); ++i)
    if (!acc[i].is_zero()) p.terms_.push_back({lo + static_cast<int>(i), acc[i]});
  return p;
}

LaurentPoly operator-(const LaurentPoly& a) {
  LaurentPoly p = a;
  for (auto& t : p.terms_) t.coeff = -t.coeff;
  return p;
}

}  // namespace knotsum
