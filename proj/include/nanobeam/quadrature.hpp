#ifndef NANOBEAM_QUADRATURE_HPP
#define NANOBEAM_QUADRATURE_HPP

// Globally adaptive Gauss-Kronrod (7, 15) integration on a finite interval.

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

namespace nanobeam {

struct QuadratureResult {
  double value = 0.0;
  double abs_error = 0.0;  // Kronrod-Gauss difference summed over panels
  int intervals = 0;
  bool converged = false;
};

namespace detail {

// Kronrod abscissae (positive half, descending) and weights; odd indices are
// the 7-point Gauss nodes.
inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a, b, value, error;
};

template <class F>
Panel gauss_kronrod_15(F& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double kronrod = fc * kKronrodWeights[7];
  double gauss = fc * kGaussWeights[3];
  for (int i = 0; i < 7; ++i) {
    const double dx = half * kKronrodNodes[i];
    const double pair = f(center - dx) + f(center + dx);
    kronrod += kKronrodWeights[i] * pair;
    if (i % 2 == 1) gauss += kGaussWeights[i / 2] * pair;
  }
  return {a, b, kronrod * half, std::abs((kronrod - gauss) * half)};
}

}  // namespace detail

/// Bisects the panel with the largest error estimate until the summed
/// estimate drops below abs_tol or max_intervals panels are in use.
template <class F>
QuadratureResult integrate_adaptive(F&& f, double a, double b, double abs_tol,
                                    int max_intervals = 500) {
  std::vector<detail::Panel> panels{detail::gauss_kronrod_15(f, a, b)};
  auto total = [&panels](double detail::Panel::*field) {
    double sum = 0.0;
    for (const auto& p : panels) sum += p.*field;
    return sum;
  };
  double error = panels.front().error;
  while (error > abs_tol && static_cast<int>(panels.size()) < max_intervals) {
    auto worst = std::max_element(panels.begin(), panels.end(),
                                  [](const auto& x, const auto& y) { return x.error < y.error; });
    const double lo = worst->a;
    const double hi = worst->b;
    const double mid = 0.5 * (lo + hi);
    *worst = detail::gauss_kronrod_15(f, lo, mid);
    panels.push_back(detail::gauss_kronrod_15(f, mid, hi));
    error = total(&detail::Panel::error);
  }
  return {total(&detail::Panel::value), error, static_cast<int>(panels.size()),
          error <= abs_tol};
}

}  // namespace nanobeam

#endif  // NANOBEAM_QUADRATURE_HPP
