#include "svkit/random.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "svkit/errors.hpp"

namespace svkit {

namespace {

constexpr double kInvSqrt2Pi = 0.3989422804014327;

}  // namespace

double RngStream::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = uniform01_pos();
  const double u2 = uniform01();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(theta);
  has_spare_ = true;
  return r * std::cos(theta);
}

double RngStream::gamma(double shape) {
  if (!(shape > 0.0) || !std::isfinite(shape)) {
    throw InvalidInput("gamma draw: shape must be positive and finite");
  }
  if (shape < 1.0) {
    // boost: Gamma(a) = Gamma(a+1) * U^(1/a)
    const double g = gamma(shape + 1.0);
    return g * std::pow(uniform01_pos(), 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x;
    double v;
    do {
      x = normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = uniform01_pos();
    if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
    if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
  }
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
  std::uint64_t z = base + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

void InvGammaParams::validate() const {
  if (!(shape > 0.0) || !(scale > 0.0) || !std::isfinite(shape) || !std::isfinite(scale)) {
    throw InvalidInput("InvGammaParams: shape and scale must be positive");
  }
}

double normal_pdf(double x, double mean, double sd) {
  if (!(sd > 0.0)) throw InvalidInput("normal_pdf: sd must be positive");
  const double z = (x - mean) / sd;
  return kInvSqrt2Pi / sd * std::exp(-0.5 * z * z);
}

double normal_log_pdf(double x, double mean, double sd) {
  if (!(sd > 0.0)) throw InvalidInput("normal_log_pdf: sd must be positive");
  const double z = (x - mean) / sd;
  return -0.5 * z * z - std::log(sd) - 0.5 * std::log(2.0 * std::numbers::pi);
}

double invgamma_pdf(double x, const InvGammaParams& p) {
  if (x <= 0.0) return 0.0;
  return std::exp(invgamma_log_pdf(x, p));
}

double invgamma_log_pdf(double x, const InvGammaParams& p) {
  p.validate();
  if (x <= 0.0) return -std::numeric_limits<double>::infinity();
  return p.shape * std::log(p.scale) - std::lgamma(p.shape) -
         (p.shape + 1.0) * std::log(x) - p.scale / x;
}

double draw_invgamma(RngStream& rng, const InvGammaParams& p) {
  p.validate();
  for (;;) {
    const double g = rng.gamma(p.shape);
    if (g > 0.0) return p.scale / g;
  }
}

std::pair<double, double> draw_bivariate_normal(RngStream& rng, double rho) {
  if (!(std::abs(rho) < 1.0)) {
    throw InvalidInput("draw_bivariate_normal: need |rho| < 1");
  }
  const double z1 = rng.normal();
  const double z2 = rng.normal();
  return {z1, rho * z1 + std::sqrt(1.0 - rho * rho) * z2};
}

std::pair<double, double> draw_bivariate_t(RngStream& rng, double df, double rho) {
  if (!(df > 0.0) || !std::isfinite(df)) {
    throw InvalidInput("draw_bivariate_t: df must be positive and finite");
  }
  const auto [z1, z2] = draw_bivariate_normal(rng, rho);
  const double w = rng.chi_square(df);
  const double s = std::sqrt(df / w);
  return {z1 * s, z2 * s};
}

}  // namespace svkit
