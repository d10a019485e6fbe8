#include "svkit/semiparametric.hpp"

#include <cmath>
#include <limits>

#include "svkit/errors.hpp"

namespace svkit {

namespace {

double mean_of(std::span<const double> xs) {
  double m = 0.0;
  for (double x : xs) m += x;
  return m / static_cast<double>(xs.size());
}

void standardize(const std::vector<double>& raw, std::vector<double>& out) {
  const double m = mean_of(raw);
  double ss = 0.0;
  for (double x : raw) ss += (x - m) * (x - m);
  const double sd = std::sqrt(ss / (static_cast<double>(raw.size()) - 1.0));
  if (!(sd > 0.0)) {
    throw DegenerateSample("extract_residuals: zero-variance residuals");
  }
  out.resize(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) out[i] = (raw[i] - m) / sd;
}

}  // namespace

ResidualSet extract_residuals(const ReturnSeries& y, const ChainOutput& pilot,
                              ResidualSource source) {
  if (pilot.retained() == 0 || pilot.n_series != y.size()) {
    throw InvalidPilot("extract_residuals: empty or mismatched pilot chain");
  }
  const double delta_hat = mean_of(pilot.delta_draws);
  const double alpha_hat = mean_of(pilot.alpha_draws);
  const double sigma_nu2_hat = mean_of(pilot.sigma_nu2_draws);
  if (!(sigma_nu2_hat > 0.0)) {
    throw InvalidPilot("extract_residuals: pilot sigma_nu^2 estimate not positive");
  }
  const double sigma_nu_hat = std::sqrt(sigma_nu2_hat);

  std::vector<double> h_hat;
  if (source == ResidualSource::posterior_mean) {
    h_hat = pilot.h_posterior_mean();
  } else {
    const std::span<const double> row = pilot.h_row(pilot.retained() - 1);
    h_hat.assign(row.begin(), row.end());
  }
  const std::size_t n = h_hat.size();
  std::vector<double> ln_h_hat(n);
  for (std::size_t t = 0; t < n; ++t) ln_h_hat[t] = std::log(h_hat[t]);

  const double dd = 1.0 + delta_hat * delta_hat;
  ResidualSet res;
  res.u_hat.reserve(n - 2);
  res.w_hat.reserve(n - 2);
  for (std::size_t t = 1; t + 1 < n; ++t) {
    res.u_hat.push_back(y[t] / std::sqrt(h_hat[t]));
    const double mu_t =
        (delta_hat * (ln_h_hat[t + 1] + ln_h_hat[t - 1]) + (1.0 - delta_hat) * alpha_hat) /
        dd;
    res.w_hat.push_back((ln_h_hat[t] - mu_t) / sigma_nu_hat);
  }
  standardize(res.u_hat, res.u_std);
  standardize(res.w_hat, res.w_std);
  return res;
}

double np_h_log_target(double h, double y, double mu_t, double w_scale,
                       const BivariateDensity& joint, double u_scale) {
  if (!(h > 0.0)) throw InvalidInput("np_h_log_target: h must be positive");
  const double x = std::log(h);
  const double ld =
      joint.log_density(u_scale * y / std::sqrt(h), (x - mu_t) / w_scale);
  // Outside the density's numerical support the -1.5 ln h term would make the
  // kernel improper toward h -> 0; such states are unreachable instead.
  if (ld <= kKdeLogFloor) return -std::numeric_limits<double>::infinity();
  return -1.5 * x + ld;
}

double np_param_log_target(ParamKind kind, double value,
                           const ParamTargetState& state, const PriorSpec& prior,
                           const BivariateDensity& joint) {
  double alpha = state.params.alpha;
  double delta = state.params.delta;
  double sigma_nu2 = state.params.sigma_nu2;
  double log_prior;
  switch (kind) {
    case ParamKind::delta:
      delta = value;
      log_prior = normal_log_pdf(value, prior.delta0, std::sqrt(prior.sigma_delta2));
      break;
    case ParamKind::alpha:
      alpha = value;
      log_prior = normal_log_pdf(value, prior.alpha0, std::sqrt(prior.sigma_alpha2));
      break;
    case ParamKind::sigma_nu2:
      if (!(value > 0.0)) throw InvalidInput("np_param_log_target: sigma_nu^2 <= 0");
      sigma_nu2 = value;
      log_prior =
          invgamma_log_pdf(value, InvGammaParams{0.5 * prior.nu0, 0.5 * prior.s0});
      break;
    default:
      throw InvalidInput("np_param_log_target: unknown parameter kind");
  }
  const double sigma_nu = std::sqrt(sigma_nu2);
  const double log_sigma_nu = std::log(sigma_nu);
  const double w_factor = state.w_scale / sigma_nu;
  const std::span<const double> x = state.ln_h;
  double acc = 0.0;
  for (std::size_t t = 1; t < x.size(); ++t) {
    const double w = (x[t] - alpha - delta * x[t - 1]) * w_factor;
    acc += joint.log_density(state.u_scale * state.u_hat[t - 1], w) - log_sigma_nu;
  }
  return log_prior + acc;
}

double mh_param_step(RngStream& rng, ParamKind kind, double current,
                     const ParamTargetState& state, const PriorSpec& prior,
                     const BivariateDensity& joint, const SuffStats& stats,
                     double s_quad, double c_star) {
  const auto target = [&](double v) {
    return np_param_log_target(kind, v, state, prior, joint);
  };
  switch (kind) {
    case ParamKind::delta: {
      const NormalMoments m = delta_conditional(prior, stats, state.ln_h,
                                                state.params.alpha,
                                                state.params.sigma_nu2);
      return envelope_mh_step(rng, target, NormalProposal{m.mean, m.sd()}, current,
                              c_star);
    }
    case ParamKind::alpha: {
      const NormalMoments m = alpha_conditional(prior, stats, state.ln_h,
                                                state.params.delta,
                                                state.params.sigma_nu2);
      return envelope_mh_step(rng, target, NormalProposal{m.mean, m.sd()}, current,
                              c_star);
    }
    case ParamKind::sigma_nu2: {
      const InvGammaProposal q{sigma_nu2_conditional(prior, s_quad, state.ln_h.size())};
      return envelope_mh_step(rng, target, q, current, c_star);
    }
  }
  throw InvalidInput("mh_param_step: unknown parameter kind");
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

Nsvm3Result run_nsvm3(const ReturnSeries& y, const PriorSpec& prior,
                      const McmcConfig& cfg_pilot, const McmcConfig& cfg_main,
                      const Nsvm3Options& options) {
  prior.validate();
  cfg_pilot.validate();
  cfg_main.validate();

  const ChainOutput pilot = run_gaussian_chain(y, prior, cfg_pilot);
  const ResidualSet residuals = extract_residuals(y, pilot, options.residual_source);
  BivariateKde kde = kde2d_fit(residuals.u_std, residuals.w_std);
  const ModelParams pilot_params{mean_of(pilot.alpha_draws), mean_of(pilot.delta_draws),
                                 mean_of(pilot.sigma_nu2_draws)};
  std::vector<double> pilot_h = pilot.h_posterior_mean();

  const StdBivariateNormal oracle;
  const BivariateDensity& joint =
      options.gaussian_oracle_density ? static_cast<const BivariateDensity&>(oracle)
                                      : static_cast<const BivariateDensity&>(kde);
  const bool correct_scales =
      options.kde_scale_correction && !options.gaussian_oracle_density;
  const double u_units =
      correct_scales ? std::sqrt(1.0 + kde.bx() * kde.bx()) : 1.0;
  const double w_units =
      correct_scales ? std::sqrt(1.0 + kde.by() * kde.by()) : 1.0;

  const std::size_t n = y.size();
  RngStream rng(cfg_main.seed);

  ModelParams params = pilot_params;
  VolPath h(pilot_h);
  if (options.cold_start) {
    params = ModelParams{0.0, 1.0, 0.1};
    double init_h = sample_variance(y.values());
    if (!(init_h > 0.0)) init_h = 1e-8;
    h = VolPath::constant(init_h, n);
  }

  const std::size_t keep = cfg_main.retained();
  ChainOutput out;
  out.alpha_draws.reserve(keep);
  out.delta_draws.reserve(keep);
  out.sigma_nu2_draws.reserve(keep);
  out.n_series = n;
  out.h_draws.reserve(keep * n);

  std::vector<double> u_hat(n - 1);

  for (std::uint64_t ite = 1; ite <= cfg_main.total_iterations; ++ite) {
    const double w_scale =
        (options.w_scale == WScale::conditional
             ? std::sqrt(params.sigma_nu2 / (1.0 + params.delta * params.delta))
             : std::sqrt(params.sigma_nu2)) /
        w_units;
    for (std::size_t t = 1; t + 1 < n; ++t) {
      const HProposalMoments m =
          h_proposal_moments(y[t], params.alpha, params.delta, params.sigma_nu2,
                             h.ln_h(t - 1), h.ln_h(t + 1));
      const auto target = [&](double hv) {
        return np_h_log_target(hv, y[t], m.mu_t, w_scale, joint, u_units);
      };
      h.set_h(t, sample_h_with_target(rng, target, m, h.h(t), cfg_main.c_star));
    }
    const double sd_nu = std::sqrt(params.sigma_nu2);
    h.set_ln_h(0, rng.normal(params.alpha + params.delta * h.ln_h(1), sd_nu));
    h.set_ln_h(n - 1,
               rng.normal(params.alpha + params.delta * h.ln_h(n - 2), sd_nu));

    const SuffStats stats = suff_stats(h.ln_h_values());
    if (options.semiparametric_params) {
      for (std::size_t t = 1; t < n; ++t) u_hat[t - 1] = y[t] / std::sqrt(h.h(t));
      ParamTargetState state{u_hat, h.ln_h_values(), params, u_units, w_units};
      const double s = s_quadratic(params, prior, h.ln_h_values(), stats);
      params.sigma_nu2 = mh_param_step(rng, ParamKind::sigma_nu2, params.sigma_nu2,
                                       state, prior, joint, stats, s, cfg_main.c_star);
      state.params = params;
      params.alpha = mh_param_step(rng, ParamKind::alpha, params.alpha, state, prior,
                                   joint, stats, s, cfg_main.c_star);
      state.params = params;
      params.delta = mh_param_step(rng, ParamKind::delta, params.delta, state, prior,
                                   joint, stats, s, cfg_main.c_star);
    } else {
      const double s = s_quadratic(params, prior, h.ln_h_values(), stats);
      params.sigma_nu2 = draw_sigma_nu2(rng, prior, s, n);
      params.alpha = draw_alpha(rng, prior, stats, h.ln_h_values(), params.delta,
                                params.sigma_nu2);
      params.delta = draw_delta(rng, prior, stats, h.ln_h_values(), params.alpha,
                                params.sigma_nu2);
    }

    if (ite > cfg_main.burn_in) {
      out.alpha_draws.push_back(params.alpha);
      out.delta_draws.push_back(params.delta);
      out.sigma_nu2_draws.push_back(params.sigma_nu2);
      out.h_draws.insert(out.h_draws.end(), h.h_values().begin(), h.h_values().end());
    }
  }

  return Nsvm3Result{SemiparModel{std::move(kde), pilot_params, std::move(pilot_h)},
                     std::move(out)};
}

}  // namespace svkit
