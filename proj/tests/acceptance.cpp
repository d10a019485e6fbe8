// Acceptance suite: one pass/fail line per criterion.
//
// Each criterion pins its tolerances in code; quadrature oracles are
// implemented here, independent of the library paths they check. Run with
// --only k[,k...] to select criteria, --cli PATH for the executable under
// test (criterion 9), --threads N for the replication studies.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "svkit/gaussian.hpp"
#include "svkit/io.hpp"
#include "svkit/kde.hpp"
#include "svkit/metrics.hpp"
#include "svkit/random.hpp"
#include "svkit/replicate.hpp"
#include "svkit/semiparametric.hpp"
#include "svkit/simulate.hpp"

using namespace svkit;
namespace fs = std::filesystem;

namespace {

unsigned g_threads = 0;
std::string g_cli;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double mean_of(std::span<const double> xs) {
  double m = 0.0;
  for (double x : xs) m += x;
  return m / static_cast<double>(xs.size());
}

double variance_of(std::span<const double> xs) {
  const double m = mean_of(xs);
  double ss = 0.0;
  for (double x : xs) ss += (x - m) * (x - m);
  return ss / (static_cast<double>(xs.size()) - 1.0);
}

// ---------------------------------------------------------------------------
// criterion 1: closed-form delta/alpha conditionals vs brute-force
// normalization of the joint on a 2001-point grid
// ---------------------------------------------------------------------------

double joint_log_kernel(double delta, double alpha, std::span<const double> ln_h,
                        double sigma_nu2, const PriorSpec& prior) {
  double lk = -0.5 * (delta - prior.delta0) * (delta - prior.delta0) /
                  prior.sigma_delta2 -
              0.5 * (alpha - prior.alpha0) * (alpha - prior.alpha0) /
                  prior.sigma_alpha2;
  for (std::size_t t = 1; t < ln_h.size(); ++t) {
    const double r = ln_h[t] - alpha - delta * ln_h[t - 1];
    lk += -0.5 * r * r / sigma_nu2;
  }
  return lk;
}

Outcome criterion1() {
  RngStream rng(41);
  std::vector<double> ln_h(5);
  for (double& x : ln_h) x = rng.normal(-5.0, 0.9);
  PriorSpec prior;
  prior.delta0 = 0.5;
  prior.sigma_delta2 = 4.0;
  prior.alpha0 = 0.0;
  prior.sigma_alpha2 = 4.0;
  const double alpha_fixed = -0.3;
  const double delta_fixed = 0.8;
  const double sigma_nu2 = 0.09;
  const SuffStats stats = suff_stats(ln_h);

  auto grid_check = [&](const NormalMoments& m,
                        const std::function<double(double)>& log_kernel) {
    const std::size_t points = 2001;
    const double lo = m.mean - 6.0 * m.sd();
    const double hi = m.mean + 6.0 * m.sd();
    const double step = (hi - lo) / static_cast<double>(points - 1);
    std::vector<double> lk(points);
    double peak = -1e300;
    for (std::size_t i = 0; i < points; ++i) {
      lk[i] = log_kernel(lo + step * static_cast<double>(i));
      peak = std::max(peak, lk[i]);
    }
    double z = 0.0;
    for (std::size_t i = 0; i < points; ++i) {
      z += std::exp(lk[i] - peak) * (i == 0 || i + 1 == points ? 0.5 : 1.0);
    }
    z *= step;
    double max_rel = 0.0;
    for (std::size_t i = 0; i < points; ++i) {
      const double quad = std::exp(lk[i] - peak) / z;
      const double closed =
          normal_pdf(lo + step * static_cast<double>(i), m.mean, m.sd());
      max_rel = std::max(max_rel, std::abs(quad - closed) / closed);
    }
    return max_rel;
  };

  const double err_delta =
      grid_check(delta_conditional(prior, stats, ln_h, alpha_fixed, sigma_nu2),
                 [&](double d) {
                   return joint_log_kernel(d, alpha_fixed, ln_h, sigma_nu2, prior);
                 });
  const double err_alpha =
      grid_check(alpha_conditional(prior, stats, ln_h, delta_fixed, sigma_nu2),
                 [&](double a) {
                   return joint_log_kernel(delta_fixed, a, ln_h, sigma_nu2, prior);
                 });

  std::ostringstream os;
  os << "max relative density error: delta " << err_delta << ", alpha " << err_alpha
     << " (tolerance 1e-4)";
  return {err_delta < 1e-4 && err_alpha < 1e-4, os.str()};
}

// ---------------------------------------------------------------------------
// criterion 2: inverse-gamma sampler moments
// ---------------------------------------------------------------------------

Outcome criterion2() {
  const std::size_t n = 1000000;
  RngStream rng(42);
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += draw_invgamma(rng, {3.0, 2.0});
  const double mean = acc / static_cast<double>(n);

  RngStream rng2(43);
  std::vector<double> draws(n);
  for (double& d : draws) d = draw_invgamma(rng2, {4.0, 3.0});
  const double var = variance_of(draws);

  std::ostringstream os;
  os << "InvGamma(3,2) mean " << mean << " (want 1 +- 1%), InvGamma(4,3) variance "
     << var << " (want 0.5 +- 5%)";
  return {std::abs(mean - 1.0) < 0.01 && std::abs(var - 0.5) < 0.025, os.str()};
}

// ---------------------------------------------------------------------------
// criterion 3: h-sampler stationarity against the quadrature-normalized
// conditional
// ---------------------------------------------------------------------------

Outcome criterion3() {
  const double y = 0.3;
  const ModelParams params{-0.5, 0.9, 0.2};
  const double dd = 1.0 + params.delta * params.delta;
  const double ln_h_prev = -5.0;
  const double ln_h_next = -5.0;
  const double mu =
      (params.delta * (ln_h_prev + ln_h_next) + (1.0 - params.delta) * params.alpha) /
      dd;
  const double sigma2 = params.sigma_nu2 / dd;

  // normalize the target over x = ln h (the integrand picks up e^x)
  auto log_kernel_x = [&](double x) {
    return -0.5 * x - 0.5 * y * y * std::exp(-x) - 0.5 * (x - mu) * (x - mu) / sigma2;
  };
  const double lo = mu - 12.0 * std::sqrt(sigma2);
  const double hi = mu + 12.0 * std::sqrt(sigma2);
  const std::size_t points = 40001;
  const double step = (hi - lo) / static_cast<double>(points - 1);
  std::vector<double> pdf(points);
  double peak = -1e300;
  for (std::size_t i = 0; i < points; ++i) {
    pdf[i] = log_kernel_x(lo + step * static_cast<double>(i));
    peak = std::max(peak, pdf[i]);
  }
  double z = 0.0;
  for (std::size_t i = 0; i < points; ++i) {
    pdf[i] = std::exp(pdf[i] - peak);
    z += pdf[i] * (i == 0 || i + 1 == points ? 0.5 : 1.0);
  }
  z *= step;
  std::vector<double> cdf(points, 0.0);
  for (std::size_t i = 1; i < points; ++i) {
    cdf[i] = cdf[i - 1] + 0.5 * (pdf[i] + pdf[i - 1]) * step / z;
  }

  auto quantile_x = [&](double p) {
    const auto it = std::lower_bound(cdf.begin(), cdf.end(), p);
    return lo + step * static_cast<double>(it - cdf.begin());
  };

  const std::size_t n = 100000;
  RngStream rng(44);
  std::vector<double> draws(n);
  double h = std::exp(mu);
  for (std::size_t i = 0; i < n; ++i) {
    h = sample_h_t(rng, y, params, ln_h_prev, ln_h_next, h, 1.2);
    draws[i] = std::log(h);
  }
  std::sort(draws.begin(), draws.end());

  double worst = 0.0;
  for (double p : {0.1, 0.25, 0.5, 0.75, 0.9}) {
    const double q = quantile_x(p);
    const double ecdf =
        static_cast<double>(std::upper_bound(draws.begin(), draws.end(), q) -
                            draws.begin()) /
        static_cast<double>(n);
    worst = std::max(worst, std::abs(ecdf - p));
  }
  std::ostringstream os;
  os << "max |ecdf - cdf| over 5 quantiles: " << worst << " (tolerance 0.01)";
  return {worst < 0.01, os.str()};
}

// ---------------------------------------------------------------------------
// criterion 4: KDE normalization and the single-kernel value
// ---------------------------------------------------------------------------

Outcome criterion4() {
  RngStream rng(45);
  std::vector<double> xs(80);
  std::vector<double> ys(80);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    xs[i] = rng.normal(0.3, 1.2);
    ys[i] = rng.normal(-0.6, 0.8);
  }
  const BivariateKde k = kde2d_fit(xs, ys);

  const double mx = mean_of(xs);
  const double my = mean_of(ys);
  const double sx = std::sqrt(variance_of(xs));
  const double sy = std::sqrt(variance_of(ys));
  const std::size_t n = 800;  // Simpson intervals per axis
  const double ax = mx - 8.0 * sx;
  const double bx = mx + 8.0 * sx;
  const double ay = my - 8.0 * sy;
  const double by = my + 8.0 * sy;
  const double hx = (bx - ax) / n;
  const double hy = (by - ay) / n;
  auto wsimp = [&](std::size_t i) {
    return i == 0 || i == n ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
  };
  double integral = 0.0;
  for (std::size_t i = 0; i <= n; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j <= n; ++j) {
      row += wsimp(j) * kde2d_eval(k, ax + hx * i, ay + hy * j);
    }
    integral += wsimp(i) * row;
  }
  integral *= hx * hy / 9.0;

  const BivariateKde point({0.0}, {0.0}, 1.0, 1.0);
  const double center = kde2d_eval(point, 0.0, 0.0);
  const double center_err = std::abs(center - 1.0 / (2.0 * std::numbers::pi));

  std::ostringstream os;
  os << "integral " << integral << " (1 +- 1e-3), single-kernel center error "
     << center_err << " (tolerance 1e-12)";
  return {std::abs(integral - 1.0) < 1e-3 && center_err < 1e-12, os.str()};
}

// ---------------------------------------------------------------------------
// criterion 5: Gaussian-oracle equivalence of the NSVM-3 chain
// ---------------------------------------------------------------------------

double batch_mcse(std::span<const double> xs, std::size_t batch_len) {
  const std::size_t batches = xs.size() / batch_len;
  std::vector<double> means(batches);
  for (std::size_t b = 0; b < batches; ++b) {
    means[b] = mean_of(xs.subspan(b * batch_len, batch_len));
  }
  return std::sqrt(variance_of(means) / static_cast<double>(batches));
}

Outcome criterion5() {
  RngStream rng(2000);
  DgpSpec spec;  // Gaussian-error benchmark parameters, n = 500
  const SimPath sim = generate(rng, spec);

  PriorSpec prior;
  McmcConfig cfg;
  cfg.total_iterations = 100000;
  cfg.burn_in = 50000;
  cfg.seed = 2001;
  const ChainOutput gauss = run_gaussian_chain(sim.y, prior, cfg);

  Nsvm3Options opt;
  opt.gaussian_oracle_density = true;
  McmcConfig pilot = cfg;
  pilot.total_iterations = 10000;
  pilot.burn_in = 5000;
  pilot.seed = 2002;
  McmcConfig main_cfg = cfg;
  main_cfg.seed = 2003;
  const Nsvm3Result np = run_nsvm3(sim.y, prior, pilot, main_cfg, opt);

  const std::size_t batch_len = 2500;
  std::ostringstream os;
  bool pass = true;
  const char* names[] = {"delta", "alpha", "sigma_nu2"};
  const std::span<const double> gs[] = {gauss.delta_draws, gauss.alpha_draws,
                                        gauss.sigma_nu2_draws};
  const std::span<const double> ns[] = {np.chain.delta_draws, np.chain.alpha_draws,
                                        np.chain.sigma_nu2_draws};
  for (int i = 0; i < 3; ++i) {
    const double diff = std::abs(mean_of(gs[i]) - mean_of(ns[i]));
    const double se = std::sqrt(std::pow(batch_mcse(gs[i], batch_len), 2) +
                                std::pow(batch_mcse(ns[i], batch_len), 2));
    const double ratio = diff / (2.0 * se);
    if (ratio > 1.0) pass = false;
    os << names[i] << " |diff|/2MCSE " << ratio << (i < 2 ? ", " : "");
  }
  return {pass, os.str()};
}

// ---------------------------------------------------------------------------
// criteria 6-8: desk-scale replication studies
// ---------------------------------------------------------------------------

ReplicationReport run_study(ErrorFamily family, std::uint64_t seed) {
  ReplicateConfig cfg;
  cfg.dgp = DgpSpec{};
  cfg.dgp.family = family;
  cfg.main.total_iterations = 10000;
  cfg.main.burn_in = 5000;
  cfg.pilot = cfg.main;
  cfg.replications = 20;
  cfg.threads = g_threads;
  cfg.seed = seed;
  return run_replications(cfg);
}

const ReplicationReport& gaussian_study() {
  static const ReplicationReport rep = run_study(ErrorFamily::gaussian, 777);
  return rep;
}

Outcome criterion6() {
  const ReplicationReport& rep = gaussian_study();
  const double g =
      rep.param_srmse_cells[static_cast<std::size_t>(ModelKind::gaussian)]
                           [static_cast<std::size_t>(ParamId::delta)]
                           [static_cast<std::size_t>(SummaryId::mean)];
  const double s =
      rep.param_srmse_cells[static_cast<std::size_t>(ModelKind::nsvm3)]
                           [static_cast<std::size_t>(ParamId::delta)]
                           [static_cast<std::size_t>(SummaryId::mean)];
  const bool in_range = g >= 0.001 && g <= 0.1 && s >= 0.001 && s <= 0.1;
  std::ostringstream os;
  os << "delta-mean srMSE: gaussian " << g << ", nsvm3 " << s << ", ratio " << (s / g)
     << " (need < 0.7 and both in [0.001, 0.1])";
  return {s < 0.7 * g && in_range, os.str()};
}

Outcome criterion7() {
  const ReplicationReport rep = run_study(ErrorFamily::student_t, 778);
  const double g =
      rep.param_srmse_cells[static_cast<std::size_t>(ModelKind::gaussian)]
                           [static_cast<std::size_t>(ParamId::delta)]
                           [static_cast<std::size_t>(SummaryId::mean)];
  const double s =
      rep.param_srmse_cells[static_cast<std::size_t>(ModelKind::nsvm3)]
                           [static_cast<std::size_t>(ParamId::delta)]
                           [static_cast<std::size_t>(SummaryId::mean)];
  std::ostringstream os;
  os << "delta-mean srMSE: gaussian " << g << ", nsvm3 " << s << ", ratio " << (s / g)
     << " (need < 0.5)";
  return {s < 0.5 * g, os.str()};
}

Outcome criterion8() {
  const ReplicationReport& rep = gaussian_study();
  bool pass = true;
  std::ostringstream os;
  for (std::size_t m = 0; m < kNumModels; ++m) {
    const VolErrors& v = rep.vol_cells[m][static_cast<std::size_t>(SummaryId::mean)];
    if (v.srmse < 0.004 || v.srmse > 0.016) pass = false;
    if (v.mape < 0.05 || v.mape > 0.2) pass = false;
    os << to_string(static_cast<ModelKind>(m)) << " srMSE " << v.srmse << ", MAPE "
       << v.mape << (m == 0 ? "; " : "");
  }
  os << " (srMSE in [0.004, 0.016], MAPE in [0.05, 0.2])";
  return {pass, os.str()};
}

// ---------------------------------------------------------------------------
// criterion 9: byte-identical CLI outputs across reruns and thread counts
// ---------------------------------------------------------------------------

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

bool run_cli(const std::string& args) {
  const std::string cmd = g_cli + " " + args + " > /dev/null 2>&1";
  return std::system(cmd.c_str()) == 0;
}

Outcome criterion9() {
  if (g_cli.empty()) return {false, "no --cli path given"};
  const fs::path root = fs::temp_directory_path() / "svkit_acceptance9";
  fs::remove_all(root);
  fs::create_directories(root);
  const std::string sim1 = (root / "sim1.csv").string();
  const std::string sim2 = (root / "sim2.csv").string();

  bool ok = run_cli("simulate --n 60 --seed 9 --output " + sim1) &&
            run_cli("simulate --n 60 --seed 9 --output " + sim2);
  if (!ok) return {false, "simulate invocation failed"};
  if (slurp(sim1) != slurp(sim2)) return {false, "simulate outputs differ"};

  const std::string fit1 = (root / "fit1").string();
  const std::string fit2 = (root / "fit2").string();
  ok = run_cli("fit --model nsvm3 --data " + sim1 +
               " --iterations 60 --burn-in 20 --pilot-iterations 80 "
               "--pilot-burn-in 40 --seed 11 --output-dir " +
               fit1) &&
       run_cli("fit --model nsvm3 --data " + sim1 +
               " --iterations 60 --burn-in 20 --pilot-iterations 80 "
               "--pilot-burn-in 40 --seed 11 --output-dir " +
               fit2);
  if (!ok) return {false, "fit invocation failed"};
  for (const char* f : {"draws.csv", "volatility.csv", "run_meta.txt"}) {
    if (slurp(fs::path(fit1) / f) != slurp(fs::path(fit2) / f)) {
      return {false, std::string("fit output differs: ") + f};
    }
  }

  const std::string rep1 = (root / "rep1").string();
  const std::string rep2 = (root / "rep2").string();
  const std::string common =
      "replicate --replications 2 --n 40 --iterations 60 --burn-in 20 "
      "--seed 5 --output-dir ";
  ok = run_cli(common + rep1 + " --threads 1") &&
       run_cli(common + rep2 + " --threads 2");
  if (!ok) return {false, "replicate invocation failed"};
  for (const char* f : {"report.csv", "estimates.csv", "vol_errors.csv"}) {
    if (slurp(fs::path(rep1) / f) != slurp(fs::path(rep2) / f)) {
      return {false,
              std::string("replicate output differs across thread counts: ") + f};
    }
  }

  fs::remove_all(root);
  return {true,
          "simulate/fit/replicate outputs byte-identical across reruns "
          "and thread counts"};
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> only;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--cli" && i + 1 < argc) {
      g_cli = argv[++i];
    } else if (arg == "--threads" && i + 1 < argc) {
      g_threads = static_cast<unsigned>(std::atoi(argv[++i]));
    } else if (arg == "--only" && i + 1 < argc) {
      std::stringstream ss(argv[++i]);
      std::string tok;
      while (std::getline(ss, tok, ',')) only.insert(std::atoi(tok.c_str()));
    }
  }

  const std::pair<int, std::function<Outcome()>> criteria[] = {
      {1, criterion1}, {2, criterion2}, {3, criterion3},
      {4, criterion4}, {5, criterion5}, {6, criterion6},
      {7, criterion7}, {8, criterion8}, {9, criterion9},
  };

  int failures = 0;
  for (const auto& [id, fn] : criteria) {
    if (!only.empty() && only.count(id) == 0) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = fn();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    std::printf("[%s] criterion %d: %s (%.1fs)\n", outcome.pass ? "PASS" : "FAIL", id,
                outcome.detail.c_str(), secs);
    std::fflush(stdout);
    if (!outcome.pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
