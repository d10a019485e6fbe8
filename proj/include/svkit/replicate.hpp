#pragma once

// Replication harness: R paired fits (Gaussian and NSVM-3 on identical
// simulated data) on a bounded worker pool. Every replication derives its
// own seeds from the base seed, so results are independent of thread count
// and individually reproducible.

#include <cstdint>
#include <functional>

#include "svkit/metrics.hpp"
#include "svkit/model.hpp"
#include "svkit/semiparametric.hpp"
#include "svkit/simulate.hpp"

namespace svkit {

struct ReplicateConfig {
  DgpSpec dgp;
  PriorSpec prior;
  McmcConfig pilot;  // seed field ignored; per-replication seeds are derived
  McmcConfig main;
  Nsvm3Options nsvm;
  std::size_t replications = 100;
  unsigned threads = 0;  // 0 = hardware concurrency
  std::uint64_t seed = 0;
};

/// Posterior summaries plus volatility errors of one fitted chain against
/// the simulated truth. sigma_nu^2 draws are summarized on the sd scale,
/// and the volatility error metrics compare sqrt(h) paths (the volatility
/// itself, not the variance), matching how the benchmark tables are scaled.
FitSummaries summarize_fit(const ChainOutput& chain, const VolPath& h_true);

/// Run the full paired study and aggregate. The optional callback fires
/// once per finished replication (from worker threads).
ReplicationReport run_replications(const ReplicateConfig& cfg,
                                   const std::function<void(std::size_t)>& on_done = {});

}  // namespace svkit
