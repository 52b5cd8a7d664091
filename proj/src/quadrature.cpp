#include "knotsum/quadrature.hpp"

#include <array>
#include <cmath>
#include <queue>
#include <stdexcept>
#include <vector>

namespace knotsum {

namespace {

constexpr std::array<double, 8> kXgk{0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                                     0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                                     0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                                     0.207784955007898467600689403773245, 0.0};
constexpr std::array<double, 8> kWgk{0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                                     0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                                     0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                                     0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg{0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                                    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Piece {
  double a, b;
  std::complex<double> value;
  double error;
  bool operator<(const Piece& o) const { return error < o.error; }
};

Piece gk15(const ComplexIntegrand& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const std::complex<double> fc = f(c);
  std::complex<double> k = fc * kWgk[7];
  std::complex<double> g = fc * kWg[3];
  for (std::size_t j = 0; j < 7; ++j) {
    const double dx = h * kXgk[j];
    const std::complex<double> s = f(c - dx) + f(c + dx);
    k += kWgk[j] * s;
    if (j % 2 == 1) g += kWg[j / 2] * s;
  }
  return {a, b, k * h, std::abs((k - g) * h)};
}

}  // namespace

QuadratureResult integrate_adaptive(const ComplexIntegrand& f, double a, double b, double abs_tol, double rel_tol,
                                    int max_intervals) {
  std::priority_queue<Piece> heap;
  heap.push(gk15(f, a, b));
  std::complex<double> total = heap.top().value;
  double err = heap.top().error;
  int count = 1;
  while (err > std::max(abs_tol, rel_tol * std::abs(total))) {
    if (count >= max_intervals) throw std::runtime_error("integrate_adaptive: interval budget exhausted");
    const Piece worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    const Piece left = gk15(f, worst.a, mid);
    const Piece right = gk15(f, mid, worst.b);
    heap.push(left);
    heap.push(right);
    ++count;
    // Re-sum from the heap contents to avoid drift from repeated subtraction.
    if (count % 64 == 0) {
      std::vector<Piece> all;
      total = 0.0;
      err = 0.0;
      auto copy = heap;
      while (!copy.empty()) {
        total += copy.top().value;
        err += copy.top().error;
        copy.pop();
      }
    } else {
      total += left.value + right.value - worst.value;
      err += left.error + right.error - worst.error;
    }
  }
  return {total, err, count};
}

}  // namespace knotsum
