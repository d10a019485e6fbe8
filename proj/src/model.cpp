#include "svkit/model.hpp"

#include <cmath>

#include "svkit/errors.hpp"

namespace svkit {

namespace {

bool all_finite(std::span<const double> xs) {
  for (double x : xs) {
    if (!std::isfinite(x)) return false;
  }
  return true;
}

}  // namespace

ReturnSeries::ReturnSeries(std::vector<double> values) : values_(std::move(values)) {
  if (values_.size() < 3) {
    throw InvalidInput("ReturnSeries needs at least 3 observations");
  }
  if (!all_finite(values_)) {
    throw InvalidInput("ReturnSeries contains a non-finite value");
  }
}

void ModelParams::validate() const {
  if (!std::isfinite(alpha) || !std::isfinite(delta) || !std::isfinite(sigma_nu2) ||
      sigma_nu2 <= 0.0) {
    throw InvalidInput("ModelParams: fields must be finite with sigma_nu2 > 0");
  }
}

void PriorSpec::validate() const {
  const bool finite = std::isfinite(delta0) && std::isfinite(sigma_delta2) &&
                      std::isfinite(alpha0) && std::isfinite(sigma_alpha2) &&
                      std::isfinite(nu0) && std::isfinite(s0);
  if (!finite || sigma_delta2 <= 0.0 || sigma_alpha2 <= 0.0 || nu0 <= 0.0 || s0 <= 0.0) {
    throw InvalidInput("PriorSpec: variance/shape/scale fields must be positive");
  }
}

VolPath::VolPath(std::vector<double> h) : h_(std::move(h)) {
  ln_h_.resize(h_.size());
  for (std::size_t t = 0; t < h_.size(); ++t) {
    if (!(h_[t] > 0.0) || !std::isfinite(h_[t])) {
      throw InvalidInput("VolPath: h_t must be positive and finite");
    }
    ln_h_[t] = std::log(h_[t]);
  }
}

VolPath VolPath::constant(double h, std::size_t n) {
  return VolPath(std::vector<double>(n, h));
}

void VolPath::set_h(std::size_t t, double value) {
  h_[t] = value;
  ln_h_[t] = std::log(value);
}

void VolPath::set_ln_h(std::size_t t, double value) {
  ln_h_[t] = value;
  h_[t] = std::exp(value);
}

void McmcConfig::validate() const {
  if (total_iterations == 0 || burn_in >= total_iterations) {
    throw InvalidInput("McmcConfig: need burn_in < total_iterations");
  }
  if (!(c_star > 1.0) || !std::isfinite(c_star)) {
    throw InvalidInput("McmcConfig: c_star must exceed 1");
  }
}

std::vector<double> ChainOutput::h_posterior_mean() const {
  std::vector<double> mean(n_series, 0.0);
  const std::size_t rows = retained();
  for (std::size_t r = 0; r < rows; ++r) {
    const double* row = h_draws.data() + r * n_series;
    for (std::size_t t = 0; t < n_series; ++t) mean[t] += row[t];
  }
  for (double& m : mean) m /= static_cast<double>(rows);
  return mean;
}

SuffStats suff_stats(std::span<const double> ln_h) {
  if (ln_h.size() < 2) {
    throw InvalidInput("suff_stats: need at least 2 elements");
  }
  SuffStats s;
  s.s1 = ln_h[0];
  s.s2 = ln_h[0] * ln_h[0];
  for (std::size_t t = 1; t < ln_h.size(); ++t) {
    s.s1 += ln_h[t];
    s.s2 += ln_h[t] * ln_h[t];
    s.s3 += ln_h[t] * ln_h[t - 1];
  }
  return s;
}

double s_quadratic(const ModelParams& params, const PriorSpec& prior,
                   std::span<const double> ln_h, const SuffStats& stats) {
  const double n = static_cast<double>(ln_h.size());
  const double a = params.alpha;
  const double d = params.delta;
  const double x1 = ln_h.front();
  const double xn = ln_h.back();
  return prior.s0 + (n - 1.0) * a * a + (1.0 + d * d) * stats.s2 - d * d * xn * xn -
         x1 * x1 - 2.0 * a * ((1.0 - d) * stats.s1 - x1 + d * xn) - 2.0 * d * stats.s3;
}

}  // namespace svkit
