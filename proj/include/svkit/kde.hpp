#pragma once

// Gaussian-product kernel density estimation. The bivariate estimator is the
// semiparametric likelihood object: it is fit once on standardized pilot
// residuals and then evaluated millions of times inside the phase-2 chain,
// so evaluation is the exact O(n) kernel sum (no grid, no interpolation).

#include <span>
#include <vector>

namespace svkit {

/// Normal-reference bandwidth 1.06 * min(sd, IQR/1.34) * n^(-1/5).
/// Quantiles for the IQR use linear interpolation at position 1+(n-1)p.
/// Falls back to sd when the IQR is zero; throws DegenerateSample when the
/// sample has zero variance.
double bandwidth_nrd(std::span<const double> sample);

/// Univariate KDE mode estimate: fits a Gaussian KDE with bandwidth_nrd and
/// returns the sample point with the highest density (ties break to the
/// smallest value).
double kde1d_mode(std::span<const double> sample);

/// Log-density floor: near the smallest representable positive double in log
/// space. Evaluations at or below this are outside the density's numerical
/// support.
inline constexpr double kKdeLogFloor = -745.0;

/// Anything that can stand in for the fitted joint error density.
class BivariateDensity {
public:
  virtual ~BivariateDensity() = default;
  virtual double log_density(double x, double y) const = 0;
};

/// Fitted product-kernel estimate
///   k(x, y) = 1/(n bx by) * sum_i phi((x-xs_i)/bx) phi((y-ys_i)/by).
/// Immutable after construction and safe to share across threads.
class BivariateKde final : public BivariateDensity {
public:
  /// Direct construction with explicit bandwidths (n >= 1). Use kde2d_fit
  /// for data-driven bandwidths.
  BivariateKde(std::vector<double> xs, std::vector<double> ys, double bx, double by);

  std::size_t size() const noexcept { return xs_.size(); }
  double bx() const noexcept { return bx_; }
  double by() const noexcept { return by_; }
  const std::vector<double>& xs() const noexcept { return xs_; }
  const std::vector<double>& ys() const noexcept { return ys_; }

  /// Log density by log-sum-exp over the kernel terms, floored at -745 so
  /// MH log-ratios stay finite in regions the data cannot distinguish.
  double log_density(double x, double y) const override;
  double density(double x, double y) const;

private:
  std::vector<double> xs_;
  std::vector<double> ys_;
  double bx_;
  double by_;
  double log_norm_;  // log(n bx by 2 pi)
};

/// Fit with bandwidth_nrd on each coordinate (paired samples, n >= 2).
BivariateKde kde2d_fit(std::span<const double> xs, std::span<const double> ys);

double kde2d_eval(const BivariateKde& k, double x, double y);
double kde2d_log_eval(const BivariateKde& k, double x, double y);

/// Independent standard bivariate normal; stands in for a fitted KDE in
/// diagnostics where the error law is known exactly.
class StdBivariateNormal final : public BivariateDensity {
public:
  double log_density(double x, double y) const override;
};

}  // namespace svkit
