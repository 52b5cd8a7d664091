#include "knotsum/thimble.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "knotsum/ode.hpp"
#include "knotsum/quadrature.hpp"

namespace knotsum {

namespace {

constexpr double kPi = std::numbers::pi;
const cplx kI{0.0, 1.0};

TracePoint sample(const ExponentFamily& fam, double s, cplx w) {
  const cplx v = fam.value(w);
  return {s, w, v.real(), v.imag()};
}

}  // namespace

double FlowTrace::max_phase_drift() const {
  double d = 0.0;
  for (const auto& p : points) d = std::max(d, std::abs(p.phase - points.front().phase));
  return d;
}

bool FlowTrace::monotone(bool backward) const {
  for (std::size_t i = 1; i < points.size(); ++i) {
    const bool ok = backward ? points[i].h > points[i - 1].h : points[i].h < points[i - 1].h;
    if (!ok) return false;
  }
  return true;
}

FlowTrace flow(const ExponentFamily& fam, cplx start, double duration, const FlowOptions& opt) {
  FlowTrace trace;
  trace.points.push_back(sample(fam, 0.0, start));
  if (duration == 0.0) return trace;
  const double dir = duration > 0 ? -0.5 : 0.5;
  const double h0 = trace.points.front().h;
  StepControl ctl;
  ctl.rtol = opt.rtol;
  ctl.atol = opt.atol;
  ctl.max_step = opt.max_step;
  ctl.initial_step = std::min(opt.max_step, 1e-3);
  auto rhs = [&](double, const CState<1>& y) { return CState<1>{dir * std::conj(fam.d1(y[0]))}; };
  trace.stop = FlowStop::Duration;
  auto accept = [&](double t, const CState<1>& y) {
    if (!std::isfinite(y[0].real()) || !std::isfinite(y[0].imag()) || std::abs(y[0]) > opt.max_abs_w) {
      trace.stop = FlowStop::Escape;
      return false;
    }
    const TracePoint pt = sample(fam, duration > 0 ? t : -t, y[0]);
    trace.points.push_back(pt);
    if (std::abs(pt.h - h0) > opt.h_drop) {
      trace.stop = FlowStop::Cutoff;
      return false;
    }
    return true;
  };
  try {
    (void)dormand_prince<1>(rhs, 0.0, CState<1>{start}, std::abs(duration), ctl, accept);
  } catch (const StepUnderflow& e) {
    throw ThimbleError(std::string("flow: ") + e.what() + " (degenerate point nearby?)");
  }
  return trace;
}

namespace {

double root_m(double v, int m) { return m == 2 ? std::sqrt(v) : std::cbrt(v); }

struct Obstacle {
  const SaddleDatum* saddle;
  double tau;  // drop of h from p to the obstacle
};

}  // namespace

Ray trace_ray(const ExponentFamily& fam, const SaddleDatum& p, int direction, std::span<const SaddleDatum> others,
              const RayOptions& opt) {
  const int m = p.order;
  if (direction < 0 || direction >= static_cast<int>(p.descent.size()))
    throw ThimbleError("trace_ray: direction index out of range");
  const auto jp = fam.jet(p.w);
  const cplx lead = m == 2 ? jp[2] / 2.0 : jp[3] / 6.0;
  const cplx c1 = std::pow(std::abs(lead), -1.0 / m) * p.descent[static_cast<std::size_t>(direction)];
  const cplx c2 = m == 2 ? -jp[3] * c1 * c1 / (6.0 * jp[2]) : -jp[4] * c1 * c1 / (12.0 * jp[3]);
  const double sigma0 = (m == 2 ? 1e-4 : 1e-3) * opt.refine;
  const double tau0 = std::pow(sigma0, m);

  // Local expansion plus Newton polish onto S(w) = S(p) - sigma0^m.
  cplx w0 = p.w + c1 * sigma0 + c2 * sigma0 * sigma0;
  const cplx target0 = p.value - tau0;
  for (int it = 0; it < 4; ++it) {
    const cplx d = fam.d1(w0);
    if (d == 0.0) break;
    w0 -= (fam.value(w0) - target0) / d;
  }
  const cplx j0 = (w0 - p.w) - c1 * std::pow(sigma0, m + 1) / static_cast<double>(m + 1);

  Ray ray;
  if (opt.record) {
    ray.points.push_back(sample(fam, 0.0, p.w));
    ray.points.push_back(sample(fam, sigma0, w0));
  }

  std::vector<Obstacle> obstacles;
  const double phase_tol = opt.stokes_tol * std::max(1.0, std::abs(p.value));
  for (const auto& a : others) {
    if (a.degenerate || std::abs(a.w - p.w) < 1e-8) continue;
    const cplx ds = p.value - a.value;
    if (std::abs(ds.imag()) > phase_tol) continue;
    if (ds.real() <= 10.0 * tau0 || ds.real() >= opt.tau_max) continue;
    obstacles.push_back({&a, ds.real()});
  }
  std::sort(obstacles.begin(), obstacles.end(), [](const Obstacle& x, const Obstacle& y) { return x.tau < y.tau; });

  StepControl ctl;
  ctl.rtol = opt.rtol;
  ctl.atol = opt.atol;
  ctl.max_step = opt.max_step * opt.refine;
  ctl.initial_step = sigma0 * 0.5;
  const double md = m;
  auto rhs = [&](double s, const CState<2>& y) {
    const cplx dw = -md * std::pow(s, m - 1) / fam.d1(y[0]);
    return CState<2>{dw, std::exp(-std::pow(s, m)) * dw};
  };
  bool escaped = false;
  auto accept = [&](double s, const CState<2>& y) {
    if (!std::isfinite(y[0].real()) || !std::isfinite(y[0].imag()) || std::abs(y[0]) > opt.max_abs_w) {
      escaped = true;
      return false;
    }
    if (opt.record) ray.points.push_back(sample(fam, s, y[0]));
    return true;
  };

  double s = sigma0;
  CState<2> y{w0, j0};
  auto advance = [&](double s_end) {
    try {
      auto [s1, y1] = dormand_prince<2>(rhs, s, y, s_end, ctl, accept);
      s = s1;
      y = y1;
    } catch (const StepUnderflow& e) {
      throw ThimbleError(std::string("trace_ray: ") + e.what());
    }
    if (escaped) throw ThimbleError("trace_ray: branch escapes the window");
  };

  for (const auto& ob : obstacles) {
    const double rho = opt.hop_radius;
    const double tau_stop = ob.tau - rho * rho;
    if (tau_stop <= std::pow(s, m)) continue;
    advance(root_m(tau_stop, m));
    const SaddleDatum& a = *ob.saddle;
    const auto ja = fam.jet(a.w);
    const double local = rho * std::sqrt(2.0 / std::abs(ja[2]));
    if (std::abs(y[0] - a.w) > 4.0 * local) continue;

    // Remainder of the approach, w_stop -> a, along a's ascent direction.
    cplx c1a = std::sqrt(2.0 / ja[2]);
    if ((std::conj(c1a) * (y[0] - a.w)).real() < 0) c1a = -c1a;
    const cplx c2a = -ja[3] * c1a * c1a / (6.0 * ja[2]);
    const cplx c3a = -(ja[2] * c2a * c2a / 2.0 + ja[3] * c1a * c1a * c2a / 2.0 + ja[4] * std::pow(c1a, 4) / 24.0) /
                     (ja[2] * c1a);
    const double r2 = rho * rho;
    const cplx remainder = -(c1a * (rho + rho * r2 / 3.0) + c2a * r2 + c3a * rho * r2);

    const cplx v = (a.w - y[0]) / std::abs(a.w - y[0]);
    const cplx want = (opt.stokes_side > 0 ? kI : -kI) * v;
    int best = 0;
    for (int d = 1; d < static_cast<int>(a.descent.size()); ++d)
      if ((std::conj(a.descent[static_cast<std::size_t>(d)]) * want).real() >
          (std::conj(a.descent[static_cast<std::size_t>(best)]) * want).real())
        best = d;
    RayOptions sub = opt;
    sub.tau_max = std::max(opt.tau_max - ob.tau, 4.0);
    const Ray cont = trace_ray(fam, a, best, others, sub);
    const cplx factor = std::exp(a.value - p.value);
    ray.integral = y[1] + factor * (remainder + cont.integral);
    ray.hops.push_back(a.w);
    ray.hops.insert(ray.hops.end(), cont.hops.begin(), cont.hops.end());
    if (opt.record) {
      const double s_a = root_m(ob.tau, m);
      for (const auto& pt : cont.points) {
        TracePoint q = pt;
        q.s = s_a + pt.s;
        ray.points.push_back(q);
      }
    }
    ray.end = cont.end;
    return ray;
  }

  advance(root_m(opt.tau_max, m));
  ray.integral = y[1];
  ray.end = y[0];
  return ray;
}

std::vector<double> ThimbleTrace::h_values() const {
  std::vector<double> v;
  v.reserve(polyline.size());
  for (const auto& p : polyline) v.push_back(p.h);
  return v;
}

std::vector<double> ThimbleTrace::phases() const {
  std::vector<double> v;
  v.reserve(polyline.size());
  for (const auto& p : polyline) v.push_back(p.phase);
  return v;
}

double ThimbleTrace::max_phase_drift() const {
  double d = 0.0;
  for (const auto& p : polyline) d = std::max(d, std::abs(p.phase - saddle.value.imag()));
  return d;
}

std::vector<SaddleDatum> ray_obstacles(const ExponentFamily& fam, const SaddleDatum& p, int neighbour_sheets) {
  if (fam.kind() == FamilyKind::Airy) return find_saddles(fam, {0, 0, false});
  return find_saddles(fam, {p.branch - neighbour_sheets, p.branch + neighbour_sheets, false});
}

namespace {

std::pair<int, int> basis_rays(const SaddleDatum& p, int basis) {
  const int rays = static_cast<int>(p.descent.size());
  if (basis < 0 || basis + 1 >= rays) throw ThimbleError("thimble basis index out of range");
  return {basis, basis + 1};
}

}  // namespace

ThimbleTrace build_thimble(const ExponentFamily& fam, const SaddleDatum& p, double cutoff_h,
                           const ThimbleOptions& opt) {
  const double drop = p.value.real() - cutoff_h;
  if (!(drop > 0.0)) throw ThimbleError("build_thimble: cutoff must lie below h(p)");
  const auto [in, out] = basis_rays(p, opt.basis);
  const auto obstacles = ray_obstacles(fam, p, opt.neighbour_sheets);
  RayOptions ro = opt.ray;
  ro.tau_max = drop;
  ro.record = true;
  const Ray rin = trace_ray(fam, p, in, obstacles, ro);
  const Ray rout = trace_ray(fam, p, out, obstacles, ro);
  ThimbleTrace t;
  t.saddle = p;
  t.in_direction = in;
  t.out_direction = out;
  for (auto it = rin.points.rbegin(); it != rin.points.rend(); ++it) {
    TracePoint q = *it;
    q.s = -q.s;
    t.polyline.push_back(q);
  }
  t.saddle_index = t.polyline.size() - 1;
  t.polyline.insert(t.polyline.end(), rout.points.begin() + 1, rout.points.end());
  t.hops = rin.hops;
  t.hops.insert(t.hops.end(), rout.hops.begin(), rout.hops.end());
  return t;
}

cplx ThimbleIntegral::value() const { return normalized * std::exp(exponent); }

double ThimbleIntegral::log_abs() const { return std::log(std::abs(normalized)) + exponent.real(); }

ThimbleIntegral integrate_thimble(const ExponentFamily& fam, const SaddleDatum& p, const ThimbleOptions& opt) {
  const auto [in, out] = basis_rays(p, opt.basis);
  const auto obstacles = ray_obstacles(fam, p, opt.neighbour_sheets);
  RayOptions ro = opt.ray;
  ro.record = false;
  const Ray rin = trace_ray(fam, p, in, obstacles, ro);
  const Ray rout = trace_ray(fam, p, out, obstacles, ro);
  ThimbleIntegral r;
  r.normalized = fam.measure() * (rout.integral - rin.integral);
  r.exponent = p.value;
  r.hops = rin.hops;
  r.hops.insert(r.hops.end(), rout.hops.begin(), rout.hops.end());
  return r;
}

cplx direct_integral(const ExponentFamily& fam, double tol) {
  if (fam.kind() == FamilyKind::Bessel) {
    const cplx k = fam.k();
    if (k.imag() != 0.0 || std::nearbyint(k.real()) != k.real())
      throw std::domain_error("direct_integral: circle quadrature needs integer k");
    auto f = [&](double th) { return std::exp(fam.value(cplx(0.0, th))) / (2.0 * kPi); };
    // Split in quarters so the oscillation is resolved from the start.
    cplx sum = 0.0;
    for (int q = 0; q < 4; ++q)
      sum += integrate_adaptive(f, q * kPi / 2.0, (q + 1) * kPi / 2.0, tol / 4.0, tol).value;
    return sum;
  }
  const double k = fam.k().real();
  if (k == 0.0) throw std::domain_error("direct_integral: Airy needs k != 0");
  const double alpha = (k > 0 ? 1.0 : -1.0) * kPi / 6.0;
  const cplx e_right = std::polar(1.0, alpha);
  const cplx e_left = -std::polar(1.0, -alpha);
  const double ak = std::abs(k);
  const double at = std::abs(fam.t());
  double r_max = 1.0;
  while (ak * r_max * r_max * r_max - ak * at * r_max < 48.0) r_max *= 1.25;
  auto f = [&](double r) {
    return std::exp(fam.value(r * e_right)) * e_right - std::exp(fam.value(r * e_left)) * e_left;
  };
  cplx sum = 0.0;
  const int pieces = 8;
  for (int q = 0; q < pieces; ++q)
    sum += integrate_adaptive(f, r_max * q / pieces, r_max * (q + 1) / pieces, tol / pieces, tol).value;
  return sum;
}

cplx continued_quadrature(const ExponentFamily& fam, double tol) {
  if (fam.kind() != FamilyKind::Bessel) throw std::domain_error("continued_quadrature: Bessel family only");
  const cplx k = fam.k();
  const cplx n = fam.n();
  if (!(n.real() > 0.0)) throw std::domain_error("continued_quadrature: needs Re n > 0");
  // Arc of the unit circle, theta in (-pi, pi).
  auto arc = [&](double th) { return std::exp(fam.value(cplx(0.0, th))) / (2.0 * kPi); };
  cplx sum = 0.0;
  for (int q = 0; q < 4; ++q)
    sum += integrate_adaptive(arc, -kPi + q * kPi / 2.0, -kPi + (q + 1) * kPi / 2.0, tol / 4.0, tol).value;
  // Tails along Im w = +-pi out to Re w = +inf, where e^w is negative real.
  auto tail = [&](double x) { return std::exp(k * x - 2.0 * n * std::sinh(x)); };
  double x_max = 1.0;
  while (n.real() * std::exp(x_max) - std::abs(k) * x_max < 50.0) x_max += 0.5;
  cplx tails = 0.0;
  const int pieces = 8;
  for (int q = 0; q < pieces; ++q)
    tails += integrate_adaptive(tail, x_max * q / pieces, x_max * (q + 1) / pieces, tol / pieces, tol).value;
  const cplx jump = (std::exp(kI * kPi * k) - std::exp(-kI * kPi * k)) / (2.0 * kPi * kI);
  return sum + jump * tails;
}

AsymptoticFit asymptotic_fit(const std::function<ExponentFamily(double)>& family_at, cplx hint,
                             std::span<const double> ks, const ThimbleOptions& opt) {
  if (ks.size() < 3) throw std::invalid_argument("asymptotic_fit: need at least three scales");
  AsymptoticFit fit;
  bool first = true;
  for (const double k : ks) {
    const ExponentFamily fam = family_at(k);
    const SaddleDatum p = refine_saddle(fam, hint);
    if (p.degenerate) throw ThimbleError("asymptotic_fit: saddle is degenerate");
    const ThimbleIntegral ip = integrate_thimble(fam, p, opt);
    const cplx est = ip.normalized * std::sqrt(k);
    if (first) {
      const double fpp = std::abs(p.hessian) / k;
      fit.gaussian_c0 = fam.measure() * p.descent[static_cast<std::size_t>(opt.basis + 1)] * std::sqrt(2.0 * kPi / fpp);
      first = false;
    }
    fit.rows.push_back({k, est, 0.0});
  }
  for (auto& r : fit.rows) r.deviation = std::abs(r.estimate - fit.gaussian_c0);
  fit.converged = true;
  for (std::size_t i = 1; i < fit.rows.size(); ++i) {
    const double ratio = fit.rows[i - 1].deviation / fit.rows[i].deviation;
    fit.ratios.push_back(ratio);
    if (!(ratio >= 1.6 && ratio <= 2.4)) fit.converged = false;
  }
  const auto& a = fit.rows[fit.rows.size() - 2];
  const auto& b = fit.rows.back();
  const double r = b.k / a.k;
  fit.c0_estimate = (r * b.estimate - a.estimate) / (r - 1.0);
  return fit;
}

}  // namespace knotsum
