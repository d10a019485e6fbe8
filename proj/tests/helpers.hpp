#pragma once

// Shared test oracles: deterministic quadrature, moment statistics, and
// empirical-CDF machinery. These stay independent of the library paths they
// check; only svkit/random.hpp is reused, as the seeded source of test data.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace testutil {

/// Composite Simpson on [a, b] with n intervals (n made even internally).
template <class F>
double simpson(F&& f, double a, double b, std::size_t n) {
  if (n % 2 == 1) ++n;
  const double h = (b - a) / static_cast<double>(n);
  double acc = f(a) + f(b);
  for (std::size_t i = 1; i < n; ++i) {
    acc += f(a + h * static_cast<double>(i)) * (i % 2 == 1 ? 4.0 : 2.0);
  }
  return acc * h / 3.0;
}

/// Tensor-product Simpson over [ax,bx] x [ay,by].
template <class F>
double simpson2d(F&& f, double ax, double bx, double ay, double by, std::size_t n) {
  return simpson(
      [&](double x) {
        return simpson([&](double y) { return f(x, y); }, ay, by, n);
      },
      ax, bx, n);
}

struct GridDensity {
  std::vector<double> xs;
  std::vector<double> pdf;  // normalized
  std::vector<double> cdf;  // trapezoid cumulative, cdf.back() == 1
};

/// Normalize exp(log_kernel) on a uniform grid (trapezoid weights).
template <class F>
GridDensity normalize_on_grid(F&& log_kernel, double a, double b, std::size_t points) {
  GridDensity g;
  g.xs.resize(points);
  g.pdf.resize(points);
  const double h = (b - a) / static_cast<double>(points - 1);
  double m = -1e300;
  for (std::size_t i = 0; i < points; ++i) {
    g.xs[i] = a + h * static_cast<double>(i);
    g.pdf[i] = log_kernel(g.xs[i]);
    m = std::max(m, g.pdf[i]);
  }
  double z = 0.0;
  for (std::size_t i = 0; i < points; ++i) {
    g.pdf[i] = std::exp(g.pdf[i] - m);
    z += g.pdf[i] * (i == 0 || i + 1 == points ? 0.5 : 1.0);
  }
  z *= h;
  for (double& v : g.pdf) v /= z;
  g.cdf.resize(points);
  g.cdf[0] = 0.0;
  for (std::size_t i = 1; i < points; ++i) {
    g.cdf[i] = g.cdf[i - 1] + 0.5 * (g.pdf[i] + g.pdf[i - 1]) * h;
  }
  const double total = g.cdf.back();
  for (double& v : g.cdf) v /= total;
  return g;
}

/// Linear interpolation of a grid CDF at x (clamped).
inline double grid_cdf_at(const GridDensity& g, double x) {
  if (x <= g.xs.front()) return 0.0;
  if (x >= g.xs.back()) return 1.0;
  const auto it = std::upper_bound(g.xs.begin(), g.xs.end(), x);
  const std::size_t i = static_cast<std::size_t>(it - g.xs.begin());
  const double frac = (x - g.xs[i - 1]) / (g.xs[i] - g.xs[i - 1]);
  return g.cdf[i - 1] + frac * (g.cdf[i] - g.cdf[i - 1]);
}

/// Smallest x on the grid with CDF(x) >= p.
inline double grid_quantile(const GridDensity& g, double p) {
  const auto it = std::lower_bound(g.cdf.begin(), g.cdf.end(), p);
  return g.xs[static_cast<std::size_t>(it - g.cdf.begin())];
}

inline double mean_of(std::span<const double> xs) {
  double m = 0.0;
  for (double x : xs) m += x;
  return m / static_cast<double>(xs.size());
}

inline double variance_of(std::span<const double> xs) {
  const double m = mean_of(xs);
  double ss = 0.0;
  for (double x : xs) ss += (x - m) * (x - m);
  return ss / (static_cast<double>(xs.size()) - 1.0);
}

inline double correlation_of(std::span<const double> xs, std::span<const double> ys) {
  const double mx = mean_of(xs);
  const double my = mean_of(ys);
  double sxy = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  return sxy / std::sqrt(sxx * syy);
}

inline double skewness_of(std::span<const double> xs) {
  const double m = mean_of(xs);
  double s2 = 0.0;
  double s3 = 0.0;
  for (double x : xs) {
    const double d = x - m;
    s2 += d * d;
    s3 += d * d * d;
  }
  const double n = static_cast<double>(xs.size());
  s2 /= n;
  s3 /= n;
  return s3 / std::pow(s2, 1.5);
}

inline double kurtosis_of(std::span<const double> xs) {
  const double m = mean_of(xs);
  double s2 = 0.0;
  double s4 = 0.0;
  for (double x : xs) {
    const double d = x - m;
    s2 += d * d;
    s4 += d * d * d * d;
  }
  const double n = static_cast<double>(xs.size());
  s2 /= n;
  s4 /= n;
  return s4 / (s2 * s2);
}

inline double empirical_cdf_at(std::span<const double> sorted, double x) {
  const auto it = std::upper_bound(sorted.begin(), sorted.end(), x);
  return static_cast<double>(it - sorted.begin()) / static_cast<double>(sorted.size());
}

/// Dvoretzky-Kiefer-Wolfowitz band half-width at confidence 1-alpha.
inline double dkw_epsilon(std::size_t n, double alpha) {
  return std::sqrt(std::log(2.0 / alpha) / (2.0 * static_cast<double>(n)));
}

}  // namespace testutil
