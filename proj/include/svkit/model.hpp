#pragma once

// Shared domain types for the stochastic volatility samplers: the return
// model is y_t = sqrt(h_t) u_t with ln h_t = alpha + delta ln h_{t-1} +
// sigma_nu nu_t, so every module trades in (alpha, delta, sigma_nu^2),
// latent paths h, and their sufficient statistics.

#include <cstdint>
#include <span>
#include <vector>

namespace svkit {

/// Observed returns y_1..y_N (log-return scale).
class ReturnSeries {
public:
  /// Validates: all finite, N >= 3 (the interior h_t update needs both
  /// neighbors for at least one index).
  explicit ReturnSeries(std::vector<double> values);

  const std::vector<double>& values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const noexcept { return values_[i]; }

private:
  std::vector<double> values_;
};

/// (alpha, delta, sigma_nu^2). |delta| < 1 is deliberately not enforced:
/// the delta conditional has full support and chains legitimately visit
/// values at or above 1 when the true persistence is near the boundary.
struct ModelParams {
  double alpha = 0.0;
  double delta = 0.0;
  double sigma_nu2 = 1.0;

  void validate() const;  // finite fields, sigma_nu2 > 0
};

/// Hyperparameters: delta ~ N(delta0, sigma_delta2), alpha ~ N(alpha0,
/// sigma_alpha2), sigma_nu^2 ~ InvGamma(nu0/2, s0/2).
struct PriorSpec {
  double delta0 = 0.9;
  double sigma_delta2 = 10.0;
  double alpha0 = 0.0;
  double sigma_alpha2 = 10.0;
  double nu0 = 2.0;
  double s0 = 0.05;

  void validate() const;  // variance/shape/scale fields strictly positive
};

/// Latent volatility path. h and ln h are kept in lockstep because every
/// sampler consumes both; all mutation goes through the setters.
class VolPath {
public:
  explicit VolPath(std::vector<double> h);
  static VolPath constant(double h, std::size_t n);

  std::size_t size() const noexcept { return h_.size(); }
  double h(std::size_t t) const noexcept { return h_[t]; }
  double ln_h(std::size_t t) const noexcept { return ln_h_[t]; }

  void set_h(std::size_t t, double value);
  void set_ln_h(std::size_t t, double value);

  std::span<const double> h_values() const noexcept { return h_; }
  std::span<const double> ln_h_values() const noexcept { return ln_h_; }

private:
  std::vector<double> h_;
  std::vector<double> ln_h_;
};

/// Chain length bookkeeping plus the envelope inflation factor c*.
struct McmcConfig {
  std::uint64_t total_iterations = 10000;
  std::uint64_t burn_in = 5000;
  double c_star = 1.2;
  std::uint64_t seed = 0;

  std::uint64_t retained() const noexcept { return total_iterations - burn_in; }
  void validate() const;  // burn_in < total_iterations, c_star > 1
};

/// Post-burn-in draws. h_draws is row-major, one row of length n_series per
/// retained iteration.
struct ChainOutput {
  std::vector<double> alpha_draws;
  std::vector<double> delta_draws;
  std::vector<double> sigma_nu2_draws;
  std::size_t n_series = 0;
  std::vector<double> h_draws;

  std::size_t retained() const noexcept { return alpha_draws.size(); }
  std::span<const double> h_row(std::size_t r) const {
    return {h_draws.data() + r * n_series, n_series};
  }
  double h_at(std::size_t r, std::size_t t) const {
    return h_draws[r * n_series + t];
  }
  /// Column means of h_draws (the posterior-mean volatility path).
  std::vector<double> h_posterior_mean() const;
};

struct SuffStats {
  double s1 = 0.0;  // sum of ln h_t
  double s2 = 0.0;  // sum of (ln h_t)^2
  double s3 = 0.0;  // sum over t >= 2 of ln h_t * ln h_{t-1}
};

/// Sufficient statistics of a log-volatility path (length >= 2).
SuffStats suff_stats(std::span<const double> ln_h);

/// Quadratic form feeding the sigma_nu^2 conditional:
///   s = s0 + (N-1) alpha^2 + (1+delta^2) s2 - delta^2 (ln h_N)^2
///       - (ln h_1)^2 - 2 alpha ((1-delta) s1 - ln h_1 + delta ln h_N)
///       - 2 delta s3.
/// Identically s0 plus the AR(1) residual sum of squares
/// sum_{t=2..N} (ln h_t - alpha - delta ln h_{t-1})^2.
double s_quadratic(const ModelParams& params, const PriorSpec& prior,
                   std::span<const double> ln_h, const SuffStats& stats);

}  // namespace svkit
