#include "svkit/kde.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "svkit/errors.hpp"

namespace svkit {

namespace {



double sample_sd(std::span<const double> xs) {
  const double n = static_cast<double>(xs.size());
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= n;
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / (n - 1.0));
}

// Type-7 quantile: linear interpolation at position 1 + (n-1)p.
double quantile_type7(const std::vector<double>& sorted, double p) {
  const double pos = (static_cast<double>(sorted.size()) - 1.0) * p;
  const std::size_t lo = static_cast<std::size_t>(pos);
  if (lo + 1 >= sorted.size()) return sorted.back();
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

void check_paired_finite(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) {
    throw InvalidInput("kde2d_fit: xs and ys must have equal length");
  }
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!std::isfinite(xs[i]) || !std::isfinite(ys[i])) {
      throw InvalidInput("kde2d_fit: samples must be finite");
    }
  }
}

}  // namespace

double bandwidth_nrd(std::span<const double> sample) {
  if (sample.size() < 2) {
    throw DegenerateSample("bandwidth_nrd: need at least 2 points");
  }
  const double sd = sample_sd(sample);
  if (!(sd > 0.0)) {
    throw DegenerateSample("bandwidth_nrd: zero-variance sample");
  }
  std::vector<double> sorted(sample.begin(), sample.end());
  std::sort(sorted.begin(), sorted.end());
  const double iqr = quantile_type7(sorted, 0.75) - quantile_type7(sorted, 0.25);
  const double spread = iqr > 0.0 ? std::min(sd, iqr / 1.34) : sd;
  return 1.06 * spread * std::pow(static_cast<double>(sample.size()), -0.2);
}

double kde1d_mode(std::span<const double> sample) {
  const double b = bandwidth_nrd(sample);  // validates the sample
  std::vector<double> sorted(sample.begin(), sample.end());
  std::sort(sorted.begin(), sorted.end());

  // Kernel terms beyond 10 bandwidths are below 2e-22 relative and cannot
  // affect the argmax; a sliding window over the sorted sample keeps the
  // scan near-linear for concentrated samples.
  const double cutoff = 10.0 * b;
  const std::size_t n = sorted.size();
  double best_x = sorted.front();
  double best_d = -1.0;
  std::size_t lo = 0;
  std::size_t hi = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = sorted[i];
    while (lo < n && sorted[lo] < x - cutoff) ++lo;
    while (hi < n && sorted[hi] <= x + cutoff) ++hi;
    double d = 0.0;
    for (std::size_t j = lo; j < hi; ++j) {
      const double z = (x - sorted[j]) / b;
      d += std::exp(-0.5 * z * z);
    }
    if (d > best_d) {  // strict: ties keep the smallest sample value
      best_d = d;
      best_x = x;
    }
  }
  return best_x;
}

BivariateKde::BivariateKde(std::vector<double> xs, std::vector<double> ys, double bx,
                           double by)
    : xs_(std::move(xs)), ys_(std::move(ys)), bx_(bx), by_(by) {
  if (xs_.empty() || xs_.size() != ys_.size()) {
    throw InvalidInput("BivariateKde: need non-empty paired samples");
  }
  if (!(bx_ > 0.0) || !(by_ > 0.0) || !std::isfinite(bx_) || !std::isfinite(by_)) {
    throw InvalidInput("BivariateKde: bandwidths must be positive");
  }
  log_norm_ = std::log(static_cast<double>(xs_.size()) * bx_ * by_ * 2.0 *
                       std::numbers::pi);
}

double BivariateKde::log_density(double x, double y) const {
  static thread_local std::vector<double> expo;
  const std::size_t n = xs_.size();
  expo.resize(n);
  double* e = expo.data();
  const double* px = xs_.data();
  const double* py = ys_.data();
  const double inv_bx = 1.0 / bx_;
  const double inv_by = 1.0 / by_;
  double m = -1e300;  // finite sentinel; exponents are always <= 0
  for (std::size_t i = 0; i < n; ++i) {
    const double zx = (x - px[i]) * inv_bx;
    const double zy = (y - py[i]) * inv_by;
    e[i] = -0.5 * (zx * zx + zy * zy);
    m = std::max(m, e[i]);
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) sum += std::exp(e[i] - m);
  const double v = m + std::log(sum) - log_norm_;
  return std::max(v, kKdeLogFloor);
}

double BivariateKde::density(double x, double y) const {
  const double lg = log_density(x, y);
  return lg <= kKdeLogFloor ? 0.0 : std::exp(lg);
}

BivariateKde kde2d_fit(std::span<const double> xs, std::span<const double> ys) {
  check_paired_finite(xs, ys);
  if (xs.size() < 2) {
    throw InvalidInput("kde2d_fit: need at least 2 paired points");
  }
  const double bx = bandwidth_nrd(xs);
  const double by = bandwidth_nrd(ys);
  return BivariateKde(std::vector<double>(xs.begin(), xs.end()),
                      std::vector<double>(ys.begin(), ys.end()), bx, by);
}

double kde2d_eval(const BivariateKde& k, double x, double y) {
  return k.density(x, y);
}

double kde2d_log_eval(const BivariateKde& k, double x, double y) {
  return k.log_density(x, y);
}

double StdBivariateNormal::log_density(double x, double y) const {
  return -std::log(2.0 * std::numbers::pi) - 0.5 * (x * x + y * y);
}

}  // namespace svkit
