#pragma once

// Seedable random streams plus the handful of densities and samplers the
// chains need. Draw algorithms are spelled out here (Box-Muller,
// Marsaglia-Tsang) rather than delegated to std:: distributions so that a
// seed pins the exact draw sequence independently of the standard library.

#include <cstdint>
#include <random>
#include <utility>

namespace svkit {

/// Deterministic generator: same seed + same call sequence -> same draws.
/// Single-owner; never share one stream across threads.
class RngStream {
public:
  explicit RngStream(std::uint64_t seed) : engine_(seed), seed_(seed) {}

  std::uint64_t seed() const noexcept { return seed_; }

  /// Uniform on [0,1), 53-bit resolution.
  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  /// Uniform on (0,1]; safe to pass through log().
  double uniform01_pos() {
    return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
  }

  /// Standard normal via Box-Muller; the pair's second value is cached.
  double normal();
  double normal(double mean, double sd) { return mean + sd * normal(); }

  /// Gamma(shape, 1) via Marsaglia-Tsang (with the shape<1 boost).
  double gamma(double shape);

  double chi_square(double df) { return 2.0 * gamma(0.5 * df); }

private:
  std::mt19937_64 engine_;
  std::uint64_t seed_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// Deterministic per-stream seed derivation (splitmix64 finalizer over
/// base combined with the stream index), used to give each replication
/// and each chain phase its own independent stream.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream);

/// Inverse gamma with density phi^lambda / Gamma(lambda) *
/// x^-(lambda+1) * exp(-phi/x): `shape` is lambda, `scale` is phi.
struct InvGammaParams {
  double shape = 1.0;
  double scale = 1.0;

  void validate() const;  // both strictly positive
  double mode() const noexcept { return scale / (shape + 1.0); }
};

double normal_pdf(double x, double mean, double sd);
double normal_log_pdf(double x, double mean, double sd);

/// Zero (resp. -inf) for x <= 0; that is a tail value, not an error.
double invgamma_pdf(double x, const InvGammaParams& p);
double invgamma_log_pdf(double x, const InvGammaParams& p);

/// InvGamma(shape, scale) draw, implemented as scale / Gamma(shape, 1).
double draw_invgamma(RngStream& rng, const InvGammaParams& p);

/// Standard-normal marginals with correlation rho:
/// u = z1, v = rho z1 + sqrt(1-rho^2) z2.
std::pair<double, double> draw_bivariate_normal(RngStream& rng, double rho);

/// Bivariate Student-t: (z1, z2)/sqrt(w/df) with correlated unit-scale
/// normals and w ~ chi-square(df). Marginals are t(df); the scale matrix is
/// left unscaled, so the marginal variance is df/(df-2), not 1.
std::pair<double, double> draw_bivariate_t(RngStream& rng, double df, double rho);

}  // namespace svkit
