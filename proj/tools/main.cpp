// svkit command line: simulate / fit / replicate / report.

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "svkit/errors.hpp"
#include "svkit/gaussian.hpp"
#include "svkit/io.hpp"
#include "svkit/replicate.hpp"
#include "svkit/semiparametric.hpp"
#include "svkit/simulate.hpp"

namespace fs = std::filesystem;
using namespace svkit;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitIo = 2;
constexpr int kExitSampler = 3;

struct DgpFlags {
  DgpSpec spec;
  std::string family = "gaussian";

  void attach(CLI::App* cmd) {
    cmd->add_option("--alpha", spec.alpha, "DGP intercept")->capture_default_str();
    cmd->add_option("--delta", spec.delta, "DGP persistence")->capture_default_str();
    cmd->add_option("--sigma-nu", spec.sigma_nu, "DGP shock sd")->capture_default_str();
    cmd->add_option("--rho", spec.rho, "error correlation")->capture_default_str();
    cmd->add_option("--n", spec.n, "series length")->capture_default_str();
    cmd->add_option("--family", family, "error family: gaussian or student-t")
        ->check(CLI::IsMember({"gaussian", "student-t"}))
        ->capture_default_str();
    cmd->add_option("--df", spec.df, "student-t degrees of freedom")
        ->capture_default_str();
    cmd->add_option("--ln-h0-mean", spec.ln_h0_mean, "initial ln h mean")
        ->capture_default_str();
    cmd->add_option("--ln-h0-sd", spec.ln_h0_sd, "initial ln h sd")
        ->capture_default_str();
  }

  DgpSpec resolve() const {
    DgpSpec out = spec;
    out.family = family == "gaussian" ? ErrorFamily::gaussian : ErrorFamily::student_t;
    return out;
  }
};

struct PriorFlags {
  PriorSpec prior;

  void attach(CLI::App* cmd) {
    cmd->add_option("--prior-delta0", prior.delta0)->capture_default_str();
    cmd->add_option("--prior-sigma-delta2", prior.sigma_delta2)->capture_default_str();
    cmd->add_option("--prior-alpha0", prior.alpha0)->capture_default_str();
    cmd->add_option("--prior-sigma-alpha2", prior.sigma_alpha2)->capture_default_str();
    cmd->add_option("--prior-nu0", prior.nu0)->capture_default_str();
    cmd->add_option("--prior-s0", prior.s0)->capture_default_str();
  }
};

constexpr std::uint64_t kSameAsMain = ~0ULL;

struct McmcFlags {
  McmcConfig cfg;
  std::uint64_t pilot_iterations = kSameAsMain;
  std::uint64_t pilot_burn_in = kSameAsMain;

  void attach(CLI::App* cmd) {
    cmd->add_option("--iterations", cfg.total_iterations, "total MCMC iterations")
        ->capture_default_str();
    cmd->add_option("--burn-in", cfg.burn_in, "discarded iterations")
        ->capture_default_str();
    cmd->add_option("--c-star", cfg.c_star, "envelope inflation factor")
        ->capture_default_str();
    cmd->add_option("--pilot-iterations", pilot_iterations,
                    "pilot chain iterations (default: same as --iterations)");
    cmd->add_option("--pilot-burn-in", pilot_burn_in,
                    "pilot chain burn-in (default: same as --burn-in)");
  }

  McmcConfig pilot(std::uint64_t seed) const {
    McmcConfig p = cfg;
    if (pilot_iterations != kSameAsMain) p.total_iterations = pilot_iterations;
    if (pilot_burn_in != kSameAsMain) p.burn_in = pilot_burn_in;
    p.seed = seed;
    return p;
  }
};

struct NsvmFlags {
  Nsvm3Options options;
  bool literal_params = false;
  std::string w_scale = "conditional";

  void attach(CLI::App* cmd) {
    cmd->add_flag("--literal-params", literal_params,
                  "keep parametric conjugate parameter draws in phase 2");
    cmd->add_flag("--cold-start", options.cold_start,
                  "start phase 2 from the cold-start state");
    cmd->add_flag("--oracle-density", options.gaussian_oracle_density,
                  "use the exact standard bivariate normal instead of the KDE");
    cmd->add_option("--w-scale", w_scale,
                    "volatility residual scale in the h target")
        ->check(CLI::IsMember({"conditional", "sigma-nu"}))
        ->capture_default_str();
  }

  Nsvm3Options resolve() const {
    Nsvm3Options out = options;
    out.semiparametric_params = !literal_params;
    out.w_scale = w_scale == "conditional" ? WScale::conditional : WScale::sigma_nu;
    return out;
  }
};

std::string bool_str(bool b) { return b ? "true" : "false"; }

void add_config_option(CLI::App* cmd) {
  cmd->set_config("--config", "", "config file with key = value lines");
}

int run_simulate(const DgpFlags& dgp, std::uint64_t seed, const std::string& output) {
  const DgpSpec spec = dgp.resolve();
  RngStream rng(seed);
  const SimPath sim = generate(rng, spec);
  write_sim_csv(output, sim);
  std::cout << "wrote " << output << " (" << spec.n << " rows)\n";
  return kExitOk;
}

ReturnSeries load_series(const std::string& data, const std::string& prices) {
  if (!data.empty()) {
    SimTable table = read_sim_csv(data);
    return ReturnSeries(std::move(table.y));
  }
  return ingest_prices(prices);
}

int run_fit(const std::string& model, const std::string& data,
            const std::string& prices, const std::string& output_dir,
            const PriorFlags& priors, const McmcFlags& mcmc, const NsvmFlags& nsvm,
            std::uint64_t seed) {
  const ReturnSeries y = load_series(data, prices);
  fs::create_directories(output_dir);
  const fs::path dir(output_dir);

  McmcConfig cfg = mcmc.cfg;
  cfg.seed = seed;

  std::vector<std::pair<std::string, std::string>> meta{
      {"command", "fit"},
      {"model", model},
      {"input", data.empty() ? prices : data},
      {"n", std::to_string(y.size())},
      {"iterations", std::to_string(cfg.total_iterations)},
      {"burn_in", std::to_string(cfg.burn_in)},
      {"c_star", format_double(cfg.c_star)},
      {"seed", std::to_string(seed)},
      {"prior_delta0", format_double(priors.prior.delta0)},
      {"prior_sigma_delta2", format_double(priors.prior.sigma_delta2)},
      {"prior_alpha0", format_double(priors.prior.alpha0)},
      {"prior_sigma_alpha2", format_double(priors.prior.sigma_alpha2)},
      {"prior_nu0", format_double(priors.prior.nu0)},
      {"prior_s0", format_double(priors.prior.s0)},
  };

  ChainOutput chain;
  if (model == "gaussian") {
    chain = run_gaussian_chain(y, priors.prior, cfg);
  } else {
    const McmcConfig pilot = mcmc.pilot(derive_seed(seed, 1));
    McmcConfig main_cfg = cfg;
    main_cfg.seed = derive_seed(seed, 2);
    const Nsvm3Options options = nsvm.resolve();
    Nsvm3Result result = run_nsvm3(y, priors.prior, pilot, main_cfg, options);
    chain = std::move(result.chain);
    meta.emplace_back("pilot_iterations", std::to_string(pilot.total_iterations));
    meta.emplace_back("pilot_burn_in", std::to_string(pilot.burn_in));
    meta.emplace_back("semiparametric_params",
                      bool_str(options.semiparametric_params));
    meta.emplace_back("cold_start", bool_str(options.cold_start));
    meta.emplace_back("oracle_density", bool_str(options.gaussian_oracle_density));
    meta.emplace_back("w_scale", options.w_scale == WScale::conditional
                                     ? "conditional"
                                     : "sigma-nu");
  }

  write_draws_csv(dir / "draws.csv", chain);
  write_vol_summary_csv(dir / "volatility.csv", chain);
  write_run_meta(dir / "run_meta.txt", meta);
  std::cout << "wrote " << (dir / "draws.csv").string() << ", "
            << (dir / "volatility.csv").string() << ", "
            << (dir / "run_meta.txt").string() << "\n";
  return kExitOk;
}

int run_replicate(const DgpFlags& dgp, const PriorFlags& priors, const McmcFlags& mcmc,
                  const NsvmFlags& nsvm, std::size_t replications, unsigned threads,
                  std::uint64_t seed, const std::string& output_dir) {
  ReplicateConfig cfg;
  cfg.dgp = dgp.resolve();
  cfg.prior = priors.prior;
  cfg.main = mcmc.cfg;
  cfg.pilot = mcmc.pilot(0);
  cfg.nsvm = nsvm.resolve();
  cfg.replications = replications;
  cfg.threads = threads;
  cfg.seed = seed;

  const ReplicationReport rep = run_replications(
      cfg, [&](std::size_t i) { std::cerr << "replication " << (i + 1) << " done\n"; });

  fs::create_directories(output_dir);
  const fs::path dir(output_dir);
  write_report_csv(dir / "report.csv", rep);
  write_estimates_csv(dir / "estimates.csv", rep);
  write_vol_errors_csv(dir / "vol_errors.csv", rep);
  write_run_meta(dir / "run_meta.txt",
                 {{"command", "replicate"},
                  {"replications", std::to_string(replications)},
                  {"seed", std::to_string(seed)},
                  {"iterations", std::to_string(cfg.main.total_iterations)},
                  {"burn_in", std::to_string(cfg.main.burn_in)},
                  {"family", dgp.family},
                  {"alpha", format_double(cfg.dgp.alpha)},
                  {"delta", format_double(cfg.dgp.delta)},
                  {"sigma_nu", format_double(cfg.dgp.sigma_nu)},
                  {"rho", format_double(cfg.dgp.rho)},
                  {"n", std::to_string(cfg.dgp.n)}});
  render_report_text(std::cout, rep);
  return kExitOk;
}

int run_report(const std::string& input_dir, const std::string& output_dir) {
  const StoredReport stored = read_report_dir(input_dir);
  const fs::path dir(output_dir.empty() ? input_dir : output_dir);
  fs::create_directories(dir);

  std::ofstream text(dir / "report.txt", std::ios::binary);
  render_report_text(text, stored);
  write_plot_csvs(dir, stored);
  render_report_text(std::cout, stored);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bayesian stochastic volatility estimation (Gaussian and NSVM-3)"};
  app.require_subcommand(1);

  // simulate
  auto* sim_cmd = app.add_subcommand("simulate", "generate a synthetic return series");
  DgpFlags sim_dgp;
  std::uint64_t sim_seed = 0;
  std::string sim_output = "sim.csv";
  sim_dgp.attach(sim_cmd);
  sim_cmd->add_option("--seed", sim_seed, "RNG seed")->capture_default_str();
  sim_cmd->add_option("--output", sim_output, "output CSV path")->capture_default_str();
  add_config_option(sim_cmd);

  // fit
  auto* fit_cmd = app.add_subcommand("fit", "fit one model to a return series");
  std::string fit_model = "gaussian";
  std::string fit_data;
  std::string fit_prices;
  std::string fit_output = "fit_out";
  std::uint64_t fit_seed = 0;
  PriorFlags fit_priors;
  McmcFlags fit_mcmc;
  NsvmFlags fit_nsvm;
  fit_cmd->add_option("--model", fit_model, "gaussian or nsvm3")
      ->check(CLI::IsMember({"gaussian", "nsvm3"}))
      ->capture_default_str();
  auto* data_opt = fit_cmd->add_option("--data", fit_data,
                                       "CSV with a y column (simulate output)");
  auto* prices_opt =
      fit_cmd->add_option("--prices", fit_prices, "price CSV with date,close columns");
  data_opt->excludes(prices_opt);
  fit_cmd->add_option("--output-dir", fit_output, "output directory")
      ->capture_default_str();
  fit_cmd->add_option("--seed", fit_seed, "RNG seed")->capture_default_str();
  fit_priors.attach(fit_cmd);
  fit_mcmc.attach(fit_cmd);
  fit_nsvm.attach(fit_cmd);
  add_config_option(fit_cmd);

  // replicate
  auto* rep_cmd = app.add_subcommand(
      "replicate", "paired gaussian + nsvm3 fits over simulated replications");
  DgpFlags rep_dgp;
  PriorFlags rep_priors;
  McmcFlags rep_mcmc;
  NsvmFlags rep_nsvm;
  std::size_t rep_count = 100;
  unsigned rep_threads = 0;
  std::uint64_t rep_seed = 0;
  std::string rep_output = "replicate_out";
  rep_dgp.attach(rep_cmd);
  rep_priors.attach(rep_cmd);
  rep_mcmc.attach(rep_cmd);
  rep_nsvm.attach(rep_cmd);
  rep_cmd->add_option("--replications", rep_count, "number of replications")
      ->capture_default_str();
  rep_cmd->add_option("--threads", rep_threads, "worker threads (0 = hardware)")
      ->capture_default_str();
  rep_cmd->add_option("--seed", rep_seed, "base RNG seed")->capture_default_str();
  rep_cmd->add_option("--output-dir", rep_output, "output directory")
      ->capture_default_str();
  add_config_option(rep_cmd);

  // report
  auto* report_cmd =
      app.add_subcommand("report", "render stored replication results");
  std::string report_input;
  std::string report_output;
  report_cmd->add_option("--input-dir", report_input, "replicate output directory")
      ->required();
  report_cmd->add_option("--output-dir", report_output,
                         "where to write report.txt and plot CSVs "
                         "(default: input dir)");
  add_config_option(report_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (sim_cmd->parsed()) return run_simulate(sim_dgp, sim_seed, sim_output);
    if (fit_cmd->parsed()) {
      if (fit_data.empty() && fit_prices.empty()) {
        std::cerr << "fit: need --data or --prices\n";
        return kExitConfig;
      }
      return run_fit(fit_model, fit_data, fit_prices, fit_output, fit_priors, fit_mcmc,
                     fit_nsvm, fit_seed);
    }
    if (rep_cmd->parsed()) {
      return run_replicate(rep_dgp, rep_priors, rep_mcmc, rep_nsvm, rep_count,
                           rep_threads, rep_seed, rep_output);
    }
    if (report_cmd->parsed()) return run_report(report_input, report_output);
  } catch (const IoError& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return kExitIo;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const InvalidInput& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return kExitIo;
  } catch (const Error& e) {
    std::cerr << "sampler error: " << e.what() << "\n";
    return kExitSampler;
  }
  return kExitConfig;
}
