#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <queue>
#include <span>
#include <vector>

namespace dbubble {

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;

  QuadratureResult& operator+=(const QuadratureResult& other) {
    value += other.value;
    error += other.error;
    return *this;
  }
};

namespace detail {

// Gauss-Kronrod 7/15 nodes on [-1, 1] (non-negative half).
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
  double a;
  double b;
  QuadratureResult estimate;
  int depth;
  bool operator<(const Panel& other) const { return estimate.error < other.estimate.error; }
};

template <class F>
QuadratureResult gauss_kronrod_15(F& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double kronrod = fc * kKronrodWeights[7];
  double gauss = fc * kGaussWeights[3];
  for (std::size_t j = 0; j < 7; ++j) {
    const double dx = half * kKronrodNodes[j];
    const double sum = f(center - dx) + f(center + dx);
    kronrod += kKronrodWeights[j] * sum;
    // Odd Kronrod nodes coincide with the 7-point Gauss nodes.
    if (j % 2 == 1) gauss += kGaussWeights[j / 2] * sum;
  }
  return {kronrod * half, std::abs((kronrod - gauss) * half)};
}

}  // namespace detail

/// Globally adaptive Gauss-Kronrod integration of f over [a, b]. Panels with
/// the largest error estimate are bisected until the summed estimate drops to
/// `tol` or `max_panels` is reached; the caller decides whether the returned
/// error is acceptable.
template <class F>
QuadratureResult integrate_adaptive(F&& f, double a, double b, double tol, int max_panels = 4000) {
  if (a == b) return {};
  std::priority_queue<detail::Panel> queue;
  QuadratureResult total = detail::gauss_kronrod_15(f, a, b);
  queue.push({a, b, total, 0});
  int panels = 1;
  while (total.error > tol && panels < max_panels) {
    const detail::Panel worst = queue.top();
    if (worst.depth > 60) break;
    queue.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    const auto left = detail::gauss_kronrod_15(f, worst.a, mid);
    const auto right = detail::gauss_kronrod_15(f, mid, worst.b);
    queue.push({worst.a, mid, left, worst.depth + 1});
    queue.push({mid, worst.b, right, worst.depth + 1});
    ++panels;
    total.value += left.value + right.value - worst.estimate.value;
    total.error += left.error + right.error - worst.estimate.error;
  }
  // Final re-sum so cancellation in the running totals cannot drift.
  total = {};
  while (!queue.empty()) {
    total += queue.top().estimate;
    queue.pop();
  }
  return total;
}

/// Integral of sampled values g(t_i) with 8m+1 samples: composite trapezoid
/// on four nested grids and three Richardson levels. The error estimate is
/// that of the second-level value, so it bounds the returned one generously.
inline QuadratureResult integrate_samples(std::span<const double> t, std::span<const double> g) {
  const std::size_t n = t.size();
  auto trapezoid = [&](std::size_t stride) {
    double sum = 0.0;
    for (std::size_t i = 0; i + stride < n; i += stride) {
      sum += 0.5 * (t[i + stride] - t[i]) * (g[i] + g[i + stride]);
    }
    return sum;
  };
  const double t1 = trapezoid(1);
  const double t2 = trapezoid(2);
  const double t4 = trapezoid(4);
  const double t8 = trapezoid(8);
  const double r1 = t1 + (t1 - t2) / 3.0;
  const double r2 = t2 + (t2 - t4) / 3.0;
  const double r4 = t4 + (t4 - t8) / 3.0;
  const double q1 = r1 + (r1 - r2) / 15.0;
  const double q2 = r2 + (r2 - r4) / 15.0;
  return {q1 + (q1 - q2) / 63.0, std::abs(q1 - q2) / 63.0};
}

}  // namespace dbubble
