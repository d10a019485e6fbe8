#include "svkit/gaussian.hpp"

#include <cmath>

namespace svkit {

HProposalMoments h_proposal_moments(double y, double alpha, double delta,
                                    double sigma_nu2, double ln_h_prev,
                                    double ln_h_next) noexcept {
  HProposalMoments m;
  const double dd = 1.0 + delta * delta;
  m.mu_t = (delta * (ln_h_prev + ln_h_next) + (1.0 - delta) * alpha) / dd;
  m.sigma2 = sigma_nu2 / dd;
  // lambda = 0.5 + (1 - 2 e^s2)/(1 - e^s2), rewritten with expm1 so large
  // sigma2 tends to 2.5 instead of overflowing.
  const double a = -std::expm1(-m.sigma2);
  m.lambda = 1.5 + 1.0 / a;
  m.phi = 0.5 * y * y + (m.lambda - 1.0) * std::exp(m.mu_t + 0.5 * m.sigma2);
  return m;
}

double h_conditional_log_target(double h, double y, double mu_t, double sigma2) {
  if (!(h > 0.0)) throw InvalidInput("h_conditional_log_target: h must be positive");
  const double x = std::log(h);
  const double z = x - mu_t;
  return -1.5 * x - 0.5 * y * y / h - 0.5 * z * z / sigma2;
}

HProposal make_h_proposal(double y, double alpha, double delta, double sigma_nu2,
                          double ln_h_prev, double ln_h_next, double c_star) {
  const HProposalMoments m =
      h_proposal_moments(y, alpha, delta, sigma_nu2, ln_h_prev, ln_h_next);
  if (!m.usable()) {
    throw DegenerateProposal("make_h_proposal: lambda/phi not usable");
  }
  const InvGammaParams q{m.lambda, m.phi};
  const double h_m = q.mode();
  HProposal p;
  p.mu_t = m.mu_t;
  p.sigma2 = m.sigma2;
  p.lambda = m.lambda;
  p.phi = m.phi;
  p.log_c = std::log(c_star) + h_conditional_log_target(h_m, y, m.mu_t, m.sigma2) -
            invgamma_log_pdf(h_m, q);
  return p;
}

double sample_h_t(RngStream& rng, double y, const ModelParams& params,
                  double ln_h_prev, double ln_h_next, double h_current,
                  double c_star) {
  const HProposalMoments m = h_proposal_moments(y, params.alpha, params.delta,
                                                params.sigma_nu2, ln_h_prev, ln_h_next);
  const auto target = [&](double h) {
    return h_conditional_log_target(h, y, m.mu_t, m.sigma2);
  };
  return sample_h_with_target(rng, target, m, h_current, c_star);
}

NormalMoments delta_conditional(const PriorSpec& prior, const SuffStats& stats,
                                std::span<const double> ln_h, double alpha,
                                double sigma_nu2) {
  const double xn = ln_h.back();
  const double denom = sigma_nu2 + prior.sigma_delta2 * (stats.s2 - xn * xn);
  if (!(denom > 0.0)) {
    throw DegeneratePosterior("delta_conditional: non-positive denominator");
  }
  const double mean =
      (sigma_nu2 * prior.delta0 +
       prior.sigma_delta2 * (stats.s3 - alpha * (stats.s1 - xn))) /
      denom;
  return NormalMoments{mean, sigma_nu2 * prior.sigma_delta2 / denom};
}

NormalMoments alpha_conditional(const PriorSpec& prior, const SuffStats& stats,
                                std::span<const double> ln_h, double delta,
                                double sigma_nu2) {
  const double n = static_cast<double>(ln_h.size());
  const double x1 = ln_h.front();
  const double xn = ln_h.back();
  const double denom = sigma_nu2 + (n - 1.0) * prior.sigma_alpha2;
  const double mean =
      (sigma_nu2 * prior.alpha0 +
       prior.sigma_alpha2 * ((1.0 - delta) * stats.s1 - x1 + delta * xn)) /
      denom;
  return NormalMoments{mean, sigma_nu2 * prior.sigma_alpha2 / denom};
}

InvGammaParams sigma_nu2_conditional(const PriorSpec& prior, double s, std::size_t n) {
  if (!(s > 0.0)) {
    throw DegeneratePosterior("sigma_nu2_conditional: s must be positive");
  }
  return InvGammaParams{0.5 * (prior.nu0 + static_cast<double>(n) - 1.0), 0.5 * s};
}

double draw_delta(RngStream& rng, const PriorSpec& prior, const SuffStats& stats,
                  std::span<const double> ln_h, double alpha, double sigma_nu2) {
  const NormalMoments m = delta_conditional(prior, stats, ln_h, alpha, sigma_nu2);
  return rng.normal(m.mean, m.sd());
}

double draw_alpha(RngStream& rng, const PriorSpec& prior, const SuffStats& stats,
                  std::span<const double> ln_h, double delta, double sigma_nu2) {
  const NormalMoments m = alpha_conditional(prior, stats, ln_h, delta, sigma_nu2);
  return rng.normal(m.mean, m.sd());
}

double draw_sigma_nu2(RngStream& rng, const PriorSpec& prior, double s,
                      std::size_t n) {
  return draw_invgamma(rng, sigma_nu2_conditional(prior, s, n));
}

namespace {

double sample_variance(const std::vector<double>& xs) {
  const double n = static_cast<double>(xs.size());
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= n;
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return ss / (n - 1.0);
}

}  // namespace

ChainOutput run_gaussian_chain(const ReturnSeries& y, const PriorSpec& prior,
                               const McmcConfig& cfg) {
  prior.validate();
  cfg.validate();
  const std::size_t n = y.size();
  RngStream rng(cfg.seed);

  ModelParams params{0.0, 1.0, 0.1};
  double init_h = sample_variance(y.values());
  if (!(init_h > 0.0)) init_h = 1e-8;  // constant series: any positive level works
  VolPath h = VolPath::constant(init_h, n);

  const std::size_t keep = cfg.retained();
  ChainOutput out;
  out.alpha_draws.reserve(keep);
  out.delta_draws.reserve(keep);
  out.sigma_nu2_draws.reserve(keep);
  out.n_series = n;
  out.h_draws.reserve(keep * n);

  for (std::uint64_t ite = 1; ite <= cfg.total_iterations; ++ite) {
    for (std::size_t t = 1; t + 1 < n; ++t) {
      const double h_new = sample_h_t(rng, y[t], params, h.ln_h(t - 1),
                                      h.ln_h(t + 1), h.h(t), cfg.c_star);
      h.set_h(t, h_new);
    }
    const double sd_nu = std::sqrt(params.sigma_nu2);
    h.set_ln_h(0, rng.normal(params.alpha + params.delta * h.ln_h(1), sd_nu));
    h.set_ln_h(n - 1,
               rng.normal(params.alpha + params.delta * h.ln_h(n - 2), sd_nu));

    const SuffStats stats = suff_stats(h.ln_h_values());
    const double s = s_quadratic(params, prior, h.ln_h_values(), stats);
    params.sigma_nu2 = draw_sigma_nu2(rng, prior, s, n);
    params.alpha =
        draw_alpha(rng, prior, stats, h.ln_h_values(), params.delta, params.sigma_nu2);
    params.delta =
        draw_delta(rng, prior, stats, h.ln_h_values(), params.alpha, params.sigma_nu2);

    if (ite > cfg.burn_in) {
      out.alpha_draws.push_back(params.alpha);
      out.delta_draws.push_back(params.delta);
      out.sigma_nu2_draws.push_back(params.sigma_nu2);
      out.h_draws.insert(out.h_draws.end(), h.h_values().begin(), h.h_values().end());
    }
  }
  return out;
}

}  // namespace svkit
