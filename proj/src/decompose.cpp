#include "knotsum/decompose.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace knotsum {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

bool is_integer(cplx k) { return k.imag() == 0.0 && std::nearbyint(k.real()) == k.real(); }

bool is_real_params(const ExponentFamily& fam) {
  return fam.kind() == FamilyKind::Airy || (fam.k().imag() == 0.0 && fam.n().imag() == 0.0);
}

// Location of a saddle's deck class on sheet 0.
cplx class_point(const SaddleDatum& s) { return s.w - cplx(0.0, kTwoPi * s.branch); }

std::size_t nearest(const std::vector<SaddleDatum>& pool, cplx w) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < pool.size(); ++i)
    if (std::abs(pool[i].w - w) < std::abs(pool[best].w - w)) best = i;
  return best;
}

// Parameter points sharing the chamber of fam, base point first.
std::vector<ExponentFamily> parameter_points(const ExponentFamily& fam, Contour contour, bool degenerate) {
  std::vector<ExponentFamily> pts;
  static constexpr double kRel[] = {0.013, -0.011, 0.021, -0.017};
  static constexpr double kShift[] = {0.11, -0.07, 0.18, -0.13, 0.23, -0.19, 0.29, -0.26};
  switch (contour) {
    case Contour::UnitCircle:
      pts.push_back(fam);
      if (!degenerate)
        for (double d : kRel) pts.push_back(ExponentFamily::bessel(fam.k(), fam.n() * (1.0 + d)));
      break;
    case Contour::Continued: {
      if (!is_integer(fam.k())) pts.push_back(fam);
      const bool keep_lambda = std::abs(fam.k()) >= 0.5;
      for (double d : kShift) {
        const cplx k = fam.k() + d;
        pts.push_back(ExponentFamily::bessel(k, keep_lambda ? fam.n() / fam.k() * k : fam.n()));
      }
      break;
    }
    case Contour::RealLine: {
      pts.push_back(fam);
      if (!degenerate) {
        const double step = std::max(1.0, std::abs(fam.t()));
        for (double d : kRel) pts.push_back(ExponentFamily::airy(fam.k().real(), fam.t() + d * step));
      }
      break;
    }
  }
  return pts;
}

cplx reference_value(const ExponentFamily& fam, Contour contour) {
  return contour == Contour::Continued ? continued_quadrature(fam) : direct_integral(fam);
}

// Thimble classes on sheet 0 with their integrals, matched to `classes`.
struct ClassValue {
  SaddleDatum saddle;
  std::vector<ThimbleIntegral> cycles;  // per basis index
};

std::vector<ClassValue> class_values(const ExponentFamily& fam, const std::vector<SaddleDatum>& classes,
                                     const ThimbleOptions& opt) {
  const auto pool =
      fam.kind() == FamilyKind::Airy ? find_saddles(fam) : find_saddles(fam, SaddleWindow{0, 0, true});
  std::vector<ClassValue> out;
  for (const auto& c : classes) {
    const SaddleDatum& s = pool[nearest(pool, class_point(c))];
    if (s.degenerate != c.degenerate)
      throw DecompositionError("parameter point leaves the critical-point configuration", {});
    ClassValue cv{s, {}};
    for (int b = 0; b + 1 < static_cast<int>(s.descent.size()); ++b) {
      ThimbleOptions o = opt;
      o.basis = b;
      cv.cycles.push_back(integrate_thimble(fam, s, o));
    }
    out.push_back(std::move(cv));
  }
  return out;
}

std::vector<SaddleDatum> sheet0_classes(const ExponentFamily& fam) {
  return fam.kind() == FamilyKind::Airy ? find_saddles(fam) : find_saddles(fam, SaddleWindow{0, 0, true});
}

// Element index -> (class index, sheet).
std::pair<std::size_t, int> element_class(const BasisElement& e, const std::vector<SaddleDatum>& classes) {
  for (std::size_t c = 0; c < classes.size(); ++c)
    if (std::abs(class_point(e.saddle) - classes[c].w) < 1e-9 * std::max(1.0, std::abs(classes[c].w)))
      return {c, e.saddle.branch};
  throw std::logic_error("element_class: element not in class list");
}

cplx element_value(const ExponentFamily& fam, const BasisElement& e, const ClassValue& cv, int sheet) {
  const ThimbleIntegral& ti = cv.cycles.at(static_cast<std::size_t>(e.basis));
  cplx v = ti.value();
  if (fam.kind() == FamilyKind::Bessel && sheet != 0) v *= fam.deck_factor(sheet);
  return v;
}

}  // namespace

std::string to_string(Contour c) {
  switch (c) {
    case Contour::UnitCircle: return "unit_circle";
    case Contour::Continued: return "continued";
    case Contour::RealLine: return "real_line";
  }
  return "?";
}

Contour parse_contour(const std::string& s) {
  if (s == "unit_circle" || s == "circle") return Contour::UnitCircle;
  if (s == "continued") return Contour::Continued;
  if (s == "real_line" || s == "real") return Contour::RealLine;
  throw std::invalid_argument("unknown contour '" + s + "'");
}

std::string BasisElement::label() const {
  std::ostringstream os;
  os << (saddle.degenerate ? "deg" : "p") << saddle.root << "@m" << saddle.branch;
  if (saddle.degenerate) os << "/c" << basis;
  return os.str();
}

std::string chamber_of(const ExponentFamily& fam) {
  if (!is_real_params(fam)) return "complex";
  if (fam.kind() == FamilyKind::Airy) return fam.t() < 0 ? "oscillatory" : fam.t() > 0 ? "damped" : "degenerate";
  const double k = std::abs(fam.k().real());
  const double two_n = 2.0 * std::abs(fam.n().real());
  if (k == two_n) return "degenerate";
  return k < two_n ? "oscillatory" : "damped";
}

Decomposition decompose_contour(const ExponentFamily& fam, Contour contour, const DecompositionOptions& opt) {
  const bool airy = fam.kind() == FamilyKind::Airy;
  if (airy != (contour == Contour::RealLine))
    throw std::invalid_argument("decompose_contour: contour does not match the family");
  if (contour == Contour::UnitCircle && !is_integer(fam.k()))
    throw std::domain_error("decompose_contour: unit circle needs integer k");

  Decomposition d;
  d.contour = contour;
  d.chamber = chamber_of(fam);
  const auto classes = sheet0_classes(fam);
  const bool degenerate = std::any_of(classes.begin(), classes.end(), [](const auto& s) { return s.degenerate; });

  std::vector<SaddleDatum> sheet_saddles = classes;
  if (contour == Contour::Continued) sheet_saddles = find_saddles(fam, SaddleWindow{opt.m0, opt.m1, true});
  for (const auto& s : sheet_saddles)
    for (int b = 0; b + 1 < static_cast<int>(s.descent.size()); ++b) d.elements.push_back({s, b});

  const auto points = parameter_points(fam, contour, degenerate);
  d.parameter_points = static_cast<int>(points.size());
  const std::size_t nu = d.elements.size();
  Eigen::MatrixXd a(2 * points.size(), nu);
  Eigen::VectorXd rhs(2 * points.size());
  std::vector<std::vector<cplx>> values(points.size(), std::vector<cplx>(nu));
  std::vector<cplx> refs(points.size());
  for (std::size_t j = 0; j < points.size(); ++j) {
    const auto cvs = class_values(points[j], classes, opt.thimble);
    refs[j] = reference_value(points[j], contour);
    double scale = std::abs(refs[j]);
    for (std::size_t e = 0; e < nu; ++e) {
      const auto [c, sheet] = element_class(d.elements[e], classes);
      values[j][e] = element_value(points[j], d.elements[e], cvs[c], sheet);
      scale = std::max(scale, std::abs(values[j][e]));
    }
    for (std::size_t e = 0; e < nu; ++e) {
      a(static_cast<Eigen::Index>(2 * j), static_cast<Eigen::Index>(e)) = values[j][e].real() / scale;
      a(static_cast<Eigen::Index>(2 * j + 1), static_cast<Eigen::Index>(e)) = values[j][e].imag() / scale;
    }
    rhs(static_cast<Eigen::Index>(2 * j)) = refs[j].real() / scale;
    rhs(static_cast<Eigen::Index>(2 * j + 1)) = refs[j].imag() / scale;
  }

  for (std::size_t i = 0; i < nu; ++i)
    for (std::size_t j = i + 1; j < nu; ++j) {
      const cplx ds = d.elements[i].saddle.value - d.elements[j].saddle.value;
      const double tol = opt.stokes_tol * fam.scale();
      if (std::abs(ds.imag()) < tol && std::abs(ds.real()) > tol) d.stokes_pairs.emplace_back(i, j);
    }
  auto colliding = [&] {
    std::vector<std::pair<cplx, cplx>> out;
    for (auto [i, j] : d.stokes_pairs) out.emplace_back(d.elements[i].saddle.w, d.elements[j].saddle.w);
    return out;
  };

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a);
  qr.setThreshold(1e-9);
  if (qr.rank() < static_cast<Eigen::Index>(nu)) {
    std::ostringstream os;
    os << "decompose_contour: ill-conditioned system (rank " << qr.rank() << " of " << nu << ")";
    throw DecompositionError(os.str(), colliding());
  }
  const Eigen::VectorXd x = qr.solve(rhs);
  for (std::size_t e = 0; e < nu; ++e) {
    const double v = x(static_cast<Eigen::Index>(e));
    d.least_squares.push_back(v);
    d.coefficients.push_back(static_cast<int>(std::lround(v)));
    d.max_gap = std::max(d.max_gap, std::abs(v - std::round(v)));
  }
  if (d.max_gap > opt.integer_tol) {
    std::ostringstream os;
    os << "decompose_contour: coefficients are not integral (max gap " << d.max_gap << ")";
    throw DecompositionError(os.str(), colliding());
  }

  // Reconstruction at the base parameters. For an integer-k continued
  // contour the base point is not among the calibration points.
  const auto base_cvs = class_values(fam, classes, opt.thimble);
  d.reference = reference_value(fam, contour);
  d.reconstructed = 0.0;
  double best_h = -HUGE_VAL;
  for (std::size_t e = 0; e < nu; ++e) {
    const int a_e = d.coefficients[e];
    if (!a_e) continue;
    const auto [c, sheet] = element_class(d.elements[e], classes);
    d.reconstructed += static_cast<double>(a_e) * element_value(fam, d.elements[e], base_cvs[c], sheet);
    if (d.elements[e].saddle.value.real() > best_h + 1e-12 * fam.scale()) {
      best_h = d.elements[e].saddle.value.real();
      d.dominant = static_cast<int>(e);
    }
  }
  d.residual = d.reconstructed - d.reference;
  return d;
}

LogComplex continued_integral(const ExponentFamily& fam, const Decomposition& calibration, const ThimbleOptions& opt) {
  if (fam.kind() != FamilyKind::Bessel) throw std::invalid_argument("continued_integral: Bessel family only");
  const auto pool = find_saddles(fam, SaddleWindow{0, 0, true});
  // Calibration classes, matched by sheet-0 location.
  std::vector<cplx> cal_classes;
  for (const auto& e : calibration.elements) {
    const cplx p = class_point(e.saddle);
    if (std::none_of(cal_classes.begin(), cal_classes.end(), [&](cplx q) { return std::abs(q - p) < 1e-9; }))
      cal_classes.push_back(p);
  }
  struct Term {
    cplx mantissa;
    cplx exponent;
  };
  std::vector<Term> terms;
  for (const cplx cp : cal_classes) {
    const SaddleDatum& s = pool[nearest(pool, cp)];
    std::vector<cplx> deck_sum(s.descent.size(), 0.0);
    bool any = false;
    for (std::size_t e = 0; e < calibration.elements.size(); ++e) {
      const auto& el = calibration.elements[e];
      if (std::abs(class_point(el.saddle) - cp) >= 1e-9 || calibration.coefficients[e] == 0) continue;
      deck_sum.at(static_cast<std::size_t>(el.basis)) +=
          static_cast<double>(calibration.coefficients[e]) * fam.deck_factor(el.saddle.branch);
      any = true;
    }
    if (!any) continue;
    for (int b = 0; b + 1 < static_cast<int>(s.descent.size()); ++b) {
      if (deck_sum[static_cast<std::size_t>(b)] == 0.0) continue;
      ThimbleOptions o = opt;
      o.basis = b;
      const ThimbleIntegral ti = integrate_thimble(fam, s, o);
      terms.push_back({ti.normalized * deck_sum[static_cast<std::size_t>(b)], ti.exponent});
    }
  }
  LogComplex out{0.0, 0.0};
  if (terms.empty()) return out;
  double top = -HUGE_VAL;
  for (const auto& t : terms) top = std::max(top, t.exponent.real());
  for (const auto& t : terms) out.mantissa += t.mantissa * std::exp(t.exponent - top);
  out.log_scale = top;
  return out;
}

GrowthResult growth_dichotomy(double k0, std::span<const int> n_list, const GrowthOptions& opt) {
  if (n_list.size() < 2) throw std::invalid_argument("growth_dichotomy: need at least two n values");
  GrowthResult r;
  r.k0 = k0;
  r.lambda = opt.lambda;
  const double kc = opt.calibration_k;
  r.calibration = decompose_contour(ExponentFamily::bessel(kc, opt.lambda * kc), Contour::Continued, opt.decomposition);
  for (const int n : n_list) {
    const double k = k0 + n;
    const LogComplex v = continued_integral(ExponentFamily::bessel(k, opt.lambda * k), r.calibration,
                                            opt.decomposition.thimble);
    r.points.push_back({n, k, v.log_abs()});
  }
  // Least-squares line through (n, log|I|).
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double count = static_cast<double>(r.points.size());
  for (const auto& p : r.points) {
    sx += p.n;
    sy += p.log_abs;
    sxx += static_cast<double>(p.n) * p.n;
    sxy += p.n * p.log_abs;
  }
  r.rate = (count * sxy - sx * sy) / (count * sxx - sx * sx);
  r.intercept = (sy - r.rate * sx) / count;
  return r;
}

}  // namespace knotsum
