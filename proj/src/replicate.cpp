#include "svkit/replicate.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

#include "svkit/gaussian.hpp"

namespace svkit {

namespace {

// Stream ids for per-replication seed derivation.
enum : std::uint64_t { kStreamData = 0, kStreamGauss = 1, kStreamPilot = 2, kStreamMain = 3 };

// Per-index posterior summaries of the volatility sd sqrt(h_t).
void column_summary_paths(const ChainOutput& chain, std::vector<double>& mean_path,
                          std::vector<double>& median_path,
                          std::vector<double>& mode_path) {
  const std::size_t rows = chain.retained();
  std::vector<double> column(rows);
  mean_path.resize(chain.n_series);
  median_path.resize(chain.n_series);
  mode_path.resize(chain.n_series);
  for (std::size_t t = 0; t < chain.n_series; ++t) {
    for (std::size_t r = 0; r < rows; ++r) column[r] = std::sqrt(chain.h_at(r, t));
    const Summary s = summarize(column);
    mean_path[t] = s.mean;
    median_path[t] = s.median;
    mode_path[t] = s.mode;
  }
}

}  // namespace

FitSummaries summarize_fit(const ChainOutput& chain, const VolPath& h_true) {
  FitSummaries out;
  out.params[static_cast<std::size_t>(ParamId::alpha)] = summarize(chain.alpha_draws);
  out.params[static_cast<std::size_t>(ParamId::delta)] = summarize(chain.delta_draws);

  std::vector<double> sigma_nu_draws(chain.sigma_nu2_draws.size());
  for (std::size_t i = 0; i < sigma_nu_draws.size(); ++i) {
    sigma_nu_draws[i] = std::sqrt(chain.sigma_nu2_draws[i]);
  }
  out.params[static_cast<std::size_t>(ParamId::sigma_nu)] = summarize(sigma_nu_draws);

  std::vector<double> mean_path;
  std::vector<double> median_path;
  std::vector<double> mode_path;
  column_summary_paths(chain, mean_path, median_path, mode_path);
  std::vector<double> sd_true(h_true.size());
  for (std::size_t t = 0; t < sd_true.size(); ++t) {
    sd_true[t] = std::sqrt(h_true.h(t));
  }
  out.vol[static_cast<std::size_t>(SummaryId::mean)] = vol_errors(sd_true, mean_path);
  out.vol[static_cast<std::size_t>(SummaryId::median)] =
      vol_errors(sd_true, median_path);
  out.vol[static_cast<std::size_t>(SummaryId::mode)] = vol_errors(sd_true, mode_path);
  return out;
}

ReplicationReport run_replications(const ReplicateConfig& cfg,
                                   const std::function<void(std::size_t)>& on_done) {
  cfg.dgp.validate();
  cfg.prior.validate();
  cfg.pilot.validate();
  cfg.main.validate();
  if (cfg.replications == 0) throw InvalidInput("run_replications: R must be >= 1");

  std::vector<PairedReplication> rows(cfg.replications);
  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr first_error;

  auto worker = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= cfg.replications) return;
      {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (first_error) return;
      }
      try {
        const std::uint64_t rep_seed = derive_seed(cfg.seed, i);
        RngStream data_rng(derive_seed(rep_seed, kStreamData));
        const SimPath sim = generate(data_rng, cfg.dgp);

        McmcConfig gauss_cfg = cfg.main;
        gauss_cfg.seed = derive_seed(rep_seed, kStreamGauss);
        const ChainOutput gauss = run_gaussian_chain(sim.y, cfg.prior, gauss_cfg);

        McmcConfig pilot_cfg = cfg.pilot;
        pilot_cfg.seed = derive_seed(rep_seed, kStreamPilot);
        McmcConfig main_cfg = cfg.main;
        main_cfg.seed = derive_seed(rep_seed, kStreamMain);
        const Nsvm3Result nsvm =
            run_nsvm3(sim.y, cfg.prior, pilot_cfg, main_cfg, cfg.nsvm);

        rows[i].by_model[static_cast<std::size_t>(ModelKind::gaussian)] =
            summarize_fit(gauss, sim.h_true);
        rows[i].by_model[static_cast<std::size_t>(ModelKind::nsvm3)] =
            summarize_fit(nsvm.chain, sim.h_true);
        if (on_done) on_done(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };

  unsigned threads = cfg.threads != 0 ? cfg.threads : std::thread::hardware_concurrency();
  if (threads == 0) threads = 1;
  threads = static_cast<unsigned>(
      std::min<std::size_t>(threads, cfg.replications));

  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();

  if (first_error) std::rethrow_exception(first_error);

  return aggregate(std::move(rows),
                   TruthParams{cfg.dgp.alpha, cfg.dgp.delta, cfg.dgp.sigma_nu});
}

}  // namespace svkit
