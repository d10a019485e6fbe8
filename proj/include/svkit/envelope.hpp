#pragma once

// Two-stage envelope sampler shared by the latent-volatility and parameter
// updates: rejection sampling against c * q with c anchored at q's mode,
// followed by a Hastings correction whenever the target pierced the
// envelope. The target is the invariant distribution of the step whether or
// not c * q actually dominates.

#include <cmath>

#include "svkit/errors.hpp"
#include "svkit/random.hpp"

namespace svkit {

inline constexpr int kMaxEnvelopeRejects = 10000;

/// Normal proposal; mode == mean.
struct NormalProposal {
  double mean = 0.0;
  double sd = 1.0;

  double draw(RngStream& rng) const { return rng.normal(mean, sd); }
  double log_pdf(double x) const { return normal_log_pdf(x, mean, sd); }
  double mode() const noexcept { return mean; }
};

/// Inverse-gamma proposal; mode == scale/(shape+1).
struct InvGammaProposal {
  InvGammaParams params;

  double draw(RngStream& rng) const { return draw_invgamma(rng, params); }
  double log_pdf(double x) const { return invgamma_log_pdf(x, params); }
  double mode() const noexcept { return params.mode(); }
};

/// One envelope accept/reject + MH-corrected step.
///
/// log_c is the log of c = c_star * p(mode)/q(mode); `current` is the value
/// the step falls back to when the Hastings correction rejects. All ratio
/// arithmetic stays in log space. Throws StuckSampler after
/// kMaxEnvelopeRejects consecutive envelope rejections.
template <class Target, class Proposal>
double envelope_mh_step(RngStream& rng, Target&& log_target, const Proposal& q,
                        double current, double c_star) {
  const double mode = q.mode();
  const double log_c = std::log(c_star) + log_target(mode) - q.log_pdf(mode);
  for (int tries = 0; tries < kMaxEnvelopeRejects; ++tries) {
    const double cand = q.draw(rng);
    const double lt_cand = log_target(cand);
    const double lq_cand = q.log_pdf(cand);
    const double log_accept1 = lt_cand - log_c - lq_cand;
    const double roll = rng.uniform01();
    if (std::log(roll) > log_accept1) continue;
    if (log_accept1 >= 0.0) {
      // Envelope failed to dominate at cand; correct against the previous
      // state so the target stays invariant.
      const double log_accept2 =
          (lt_cand - lq_cand) - (log_target(current) - q.log_pdf(current));
      if (std::log(rng.uniform01()) > log_accept2) return current;
    }
    return cand;
  }
  throw StuckSampler("envelope sampler: rejection budget exhausted");
}

}  // namespace svkit
