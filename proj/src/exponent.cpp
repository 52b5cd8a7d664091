#include "knotsum/exponent.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace knotsum {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
const cplx kI{0.0, 1.0};

double wrap_angle(double a) {
  a = std::remainder(a, kTwoPi);
  if (a <= -std::numbers::pi) a += kTwoPi;
  return a;
}

}  // namespace

ExponentFamily ExponentFamily::bessel(cplx k, cplx n) {
  ExponentFamily f;
  f.kind_ = FamilyKind::Bessel;
  f.k_ = k;
  f.n_ = n;
  return f;
}

ExponentFamily ExponentFamily::airy(double k, double t) {
  ExponentFamily f;
  f.kind_ = FamilyKind::Airy;
  f.k_ = k;
  f.t_ = t;
  return f;
}

cplx ExponentFamily::lambda() const {
  if (kind_ != FamilyKind::Bessel) throw std::logic_error("lambda: Bessel family only");
  if (k_ == 0.0) throw std::domain_error("lambda: k = 0");
  return n_ / k_;
}

std::array<cplx, 5> ExponentFamily::jet(cplx w) const {
  if (kind_ == FamilyKind::Bessel) {
    const cplx ep = std::exp(w);
    const cplx em = std::exp(-w);
    const cplx odd = n_ * (ep - em);
    const cplx even = n_ * (ep + em);
    return {k_ * w + odd, k_ + even, odd, even, odd};
  }
  const cplx ik = kI * k_;
  return {ik * (w * w * w + t_ * w), ik * (3.0 * w * w + t_), ik * 6.0 * w, ik * 6.0, 0.0};
}

cplx ExponentFamily::value(cplx w) const {
  if (kind_ == FamilyKind::Bessel) return k_ * w + n_ * (std::exp(w) - std::exp(-w));
  return kI * k_ * (w * w * w + t_ * w);
}

cplx ExponentFamily::d1(cplx w) const {
  if (kind_ == FamilyKind::Bessel) return k_ + n_ * (std::exp(w) + std::exp(-w));
  return kI * k_ * (3.0 * w * w + t_);
}

cplx ExponentFamily::d2(cplx w) const {
  if (kind_ == FamilyKind::Bessel) return n_ * (std::exp(w) - std::exp(-w));
  return kI * k_ * 6.0 * w;
}

cplx ExponentFamily::measure() const {
  return kind_ == FamilyKind::Bessel ? 1.0 / (kTwoPi * kI) : cplx(1.0);
}

cplx ExponentFamily::deck_shift(int m) const { return kTwoPi * kI * k_ * static_cast<double>(m); }

cplx ExponentFamily::deck_factor(int m) const {
  if (kind_ != FamilyKind::Bessel) throw std::logic_error("deck_factor: Bessel family only");
  const double md = static_cast<double>(m);
  // e^{2 pi i k m} = e^{2 pi i Re(k) m} e^{-2 pi Im(k) m}; the turn count of the
  // first factor is reduced modulo 1 so integer k gives exactly 1.
  const double turns = std::fmod(k_.real() * md, 1.0);
  return std::polar(std::exp(-kTwoPi * k_.imag() * md), kTwoPi * turns);
}

double ExponentFamily::scale() const {
  if (kind_ == FamilyKind::Bessel) return std::max(1.0, std::abs(k_) + std::abs(n_));
  return std::max(1.0, std::abs(k_) * (1.0 + std::abs(t_)));
}

std::vector<cplx> descent_directions(const ExponentFamily& fam, cplx w, int order) {
  const auto j = fam.jet(w);
  const cplx lead = order == 2 ? j[2] / 2.0 : j[3] / 6.0;
  if (lead == 0.0) throw SaddleError("descent_directions: vanishing leading coefficient");
  std::vector<cplx> dirs;
  for (int r = 0; r < order; ++r) {
    const double ang = (std::numbers::pi - std::arg(lead) + kTwoPi * r) / order;
    dirs.push_back(std::polar(1.0, wrap_angle(ang)));
  }
  std::sort(dirs.begin(), dirs.end(), [](cplx a, cplx b) { return std::arg(a) < std::arg(b); });
  return dirs;
}

namespace {

SaddleDatum make_datum(const ExponentFamily& fam, cplx w) {
  SaddleDatum s;
  s.w = w;
  const auto j = fam.jet(w);
  s.value = j[0];
  s.hessian = j[2];
  s.residual = std::abs(j[1]);
  const double deg_tol = 1e-10 * fam.scale();
  s.degenerate = std::abs(j[2]) < deg_tol;
  s.order = s.degenerate ? 3 : 2;
  s.descent = descent_directions(fam, w, s.order);
  return s;
}

}  // namespace

SaddleDatum refine_saddle(const ExponentFamily& fam, cplx start, int max_iter) {
  cplx w = start;
  for (int it = 0; it < max_iter; ++it) {
    const auto j = fam.jet(w);
    if (j[2] == 0.0) break;
    const cplx step = j[1] / j[2];
    w -= step;
    if (std::abs(step) < 1e-15 * std::max(1.0, std::abs(w))) break;
  }
  return make_datum(fam, w);
}

std::vector<SaddleDatum> find_saddles(const ExponentFamily& fam, const SaddleWindow& window) {
  std::vector<SaddleDatum> out;
  if (fam.kind() == FamilyKind::Airy) {
    if (fam.k() == 0.0) throw SaddleError("find_saddles: k = 0");
    const cplx x = std::sqrt(cplx(-fam.t() / 3.0));
    if (x == 0.0) {
      SaddleDatum s = make_datum(fam, 0.0);
      s.degenerate = true;
      s.order = 3;
      s.descent = descent_directions(fam, 0.0, 3);
      if (window.include_degenerate) out.push_back(s);
      return out;
    }
    std::array<cplx, 2> roots{x, -x};
    std::sort(roots.begin(), roots.end(), [](cplx a, cplx b) {
      return a.real() != b.real() ? a.real() > b.real() : a.imag() > b.imag();
    });
    for (int r = 0; r < 2; ++r) {
      SaddleDatum s = refine_saddle(fam, roots[static_cast<std::size_t>(r)]);
      s.root = r;
      out.push_back(s);
    }
    return out;
  }

  const cplx k = fam.k();
  const cplx n = fam.n();
  if (n == 0.0 || k == 0.0) {
    // k = 0 still has critical points e^{2w} = -1; only n = 0 is excluded.
    if (n == 0.0) throw SaddleError("find_saddles: lambda = 0 has no critical points");
  }
  const cplx disc = k * k - 4.0 * n * n;
  const cplx sq = std::sqrt(disc);
  std::array<cplx, 2> z{(-k + sq) / (2.0 * n), (-k - sq) / (2.0 * n)};
  const bool collide = std::abs(sq) < 1e-12 * std::max(std::abs(k), std::abs(n));
  std::vector<cplx> base;
  for (int r = 0; r < (collide ? 1 : 2); ++r) {
    cplx w0 = std::log(z[static_cast<std::size_t>(r)]);
    base.push_back(w0);
  }
  for (std::size_t r = 0; r < base.size(); ++r) {
    // Polish on sheet 0, then translate; the imaginary part stays in (-pi, pi].
    SaddleDatum s0 = collide ? make_datum(fam, base[r]) : refine_saddle(fam, base[r]);
    if (collide) {
      s0.degenerate = true;
      s0.order = 3;
      s0.descent = descent_directions(fam, s0.w, 3);
    }
    const double im = wrap_angle(s0.w.imag());
    const cplx w_sheet0{s0.w.real(), im};
    for (int m = window.m0; m <= window.m1; ++m) {
      const cplx w = w_sheet0 + cplx(0.0, kTwoPi * m);
      SaddleDatum s = make_datum(fam, w);
      if (collide) {
        s.degenerate = true;
        s.order = 3;
        s.descent = descent_directions(fam, w, 3);
      }
      s.branch = m;
      s.root = static_cast<int>(r);
      if (s.degenerate && !window.include_degenerate) continue;
      out.push_back(s);
    }
  }
  std::sort(out.begin(), out.end(), [](const SaddleDatum& a, const SaddleDatum& b) {
    return a.branch != b.branch ? a.branch < b.branch : a.root < b.root;
  });
  return out;
}

}  // namespace knotsum
