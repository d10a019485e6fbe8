#pragma once

// The parametric Gaussian sampler: conjugate draws for delta, alpha and
// sigma_nu^2 plus the inverse-gamma envelope update for each interior h_t.

#include <cmath>
#include <span>

#include "svkit/envelope.hpp"
#include "svkit/errors.hpp"
#include "svkit/model.hpp"
#include "svkit/random.hpp"

namespace svkit {

/// Moment-matched inverse-gamma envelope for one h_t update.
struct HProposal {
  double mu_t = 0.0;    // conditional mean of ln h_t given both neighbors
  double sigma2 = 1.0;  // sigma_nu^2 / (1 + delta^2)
  double lambda = 0.0;  // proposal shape
  double phi = 0.0;     // proposal scale
  double log_c = 0.0;   // log envelope constant, anchored at the proposal mode
};

/// Conditional mean/variance of ln h_t and the matched (lambda, phi), without
/// the envelope constant. lambda or phi may come out non-finite for extreme
/// sigma2; callers must check before use.
struct HProposalMoments {
  double mu_t = 0.0;
  double sigma2 = 1.0;
  double lambda = 0.0;
  double phi = 0.0;

  bool usable() const noexcept {
    return std::isfinite(lambda) && std::isfinite(phi) && lambda > 1.0 && phi > 0.0;
  }
};

HProposalMoments h_proposal_moments(double y, double alpha, double delta,
                                    double sigma_nu2, double ln_h_prev,
                                    double ln_h_next) noexcept;

/// Log of the h_t conditional (up to a constant):
///   -(3/2) ln h - y^2/(2h) - (ln h - mu_t)^2 / (2 sigma2).
double h_conditional_log_target(double h, double y, double mu_t, double sigma2);

/// Full envelope proposal with log_c computed against the Gaussian-model
/// target at the proposal mode. Throws DegenerateProposal when the matched
/// lambda/phi are unusable.
HProposal make_h_proposal(double y, double alpha, double delta, double sigma_nu2,
                          double ln_h_prev, double ln_h_next, double c_star);

/// One update of an interior h_t against an arbitrary log target (the
/// Gaussian chain binds the conditional above; the semiparametric chain binds
/// its KDE target). Falls back to a lognormal random walk with step sd
/// sqrt(sigma2) when the envelope proposal is degenerate.
template <class Target>
double sample_h_with_target(RngStream& rng, Target&& log_target,
                            const HProposalMoments& m, double h_current,
                            double c_star) {
  if (m.usable()) {
    const InvGammaProposal q{InvGammaParams{m.lambda, m.phi}};
    return envelope_mh_step(rng, log_target, q, h_current, c_star);
  }
  const double step = std::sqrt(m.sigma2);
  const double x_cur = std::log(h_current);
  const double x_cand = x_cur + step * rng.normal();
  const double h_cand = std::exp(x_cand);
  // symmetric walk on ln h; the h-space Jacobian contributes x_cand - x_cur
  const double log_ratio =
      log_target(h_cand) - log_target(h_current) + (x_cand - x_cur);
  if (std::log(rng.uniform01()) <= log_ratio) return h_cand;
  return h_current;
}

/// Gaussian-model h_t update (two-stage envelope scheme, Eq.-exact target).
double sample_h_t(RngStream& rng, double y, const ModelParams& params,
                  double ln_h_prev, double ln_h_next, double h_current,
                  double c_star);

struct NormalMoments {
  double mean = 0.0;
  double var = 1.0;

  double sd() const noexcept { return std::sqrt(var); }
};

/// Conditional of delta:
///   N((sn2 d0 + sd2 (s3 - alpha (s1 - ln hN))) / D, sn2 sd2 / D),
///   D = sn2 + sd2 (s2 - (ln hN)^2).
NormalMoments delta_conditional(const PriorSpec& prior, const SuffStats& stats,
                                std::span<const double> ln_h, double alpha,
                                double sigma_nu2);

/// Conditional of alpha:
///   N((sn2 a0 + sa2 ((1-d) s1 - ln h1 + d ln hN)) / D, sn2 sa2 / D),
///   D = sn2 + (N-1) sa2.
NormalMoments alpha_conditional(const PriorSpec& prior, const SuffStats& stats,
                                std::span<const double> ln_h, double delta,
                                double sigma_nu2);

/// Conditional of sigma_nu^2: InvGamma((nu0 + N - 1)/2, s/2).
InvGammaParams sigma_nu2_conditional(const PriorSpec& prior, double s, std::size_t n);

double draw_delta(RngStream& rng, const PriorSpec& prior, const SuffStats& stats,
                  std::span<const double> ln_h, double alpha, double sigma_nu2);
double draw_alpha(RngStream& rng, const PriorSpec& prior, const SuffStats& stats,
                  std::span<const double> ln_h, double delta, double sigma_nu2);
double draw_sigma_nu2(RngStream& rng, const PriorSpec& prior, double s,
                      std::size_t n);

/// Full Gaussian-model chain: cold start (delta=1, alpha=0, sigma_nu^2=0.1,
/// h_t = var(y)), sweeps of interior h updates, AR endpoint draws, then
/// sigma_nu^2, alpha, delta; retains draws after burn-in.
ChainOutput run_gaussian_chain(const ReturnSeries& y, const PriorSpec& prior,
                               const McmcConfig& cfg);

}  // namespace svkit
