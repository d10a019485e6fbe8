#pragma once

// File formats: price/simulation CSV ingestion and all output writers.
// Numbers serialize with 17 significant digits so round-trips are exact;
// all writers emit UTF-8 with LF line endings.

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "svkit/metrics.hpp"
#include "svkit/model.hpp"
#include "svkit/simulate.hpp"

namespace svkit {

/// Shortest representation that round-trips a double (up to 17 significant
/// digits).
std::string format_double(double v);

/// Read a price CSV (header with `date` and `close` columns, ascending
/// dates) and return log returns ln(P_t / P_{t-1}). Throws IoError naming
/// the offending line for non-positive prices, unparsable rows, or fewer
/// than 4 data rows.
ReturnSeries ingest_prices(const std::filesystem::path& path);

/// Simulation CSV: header `t,y,h_true`, indices 1..n.
void write_sim_csv(const std::filesystem::path& path, const SimPath& sim);

struct SimTable {
  std::vector<double> y;
  std::vector<double> h_true;  // empty when the column is absent
};

/// Read a CSV with a `y` column (and optional `h_true`), as written by
/// write_sim_csv.
SimTable read_sim_csv(const std::filesystem::path& path);

/// Draws CSV: header `iteration,alpha,delta,sigma_nu2`, iterations counted
/// from 1 within the retained window.
void write_draws_csv(const std::filesystem::path& path, const ChainOutput& chain);

/// Volatility summary CSV: header `t,h_mean,h_median,h_mode`, one row per
/// series index.
void write_vol_summary_csv(const std::filesystem::path& path, const ChainOutput& chain);

/// Deterministic run metadata (seed and a config echo; no timing, so reruns
/// stay byte-identical).
void write_run_meta(const std::filesystem::path& path,
                    const std::vector<std::pair<std::string, std::string>>& entries);

/// Aggregate report CSV: one row per model x summary x metric.
void write_report_csv(const std::filesystem::path& path, const ReplicationReport& rep);

/// Per-replication parameter estimates (long format) and volatility error
/// triples, the inputs the `report` command renders.
void write_estimates_csv(const std::filesystem::path& path,
                         const ReplicationReport& rep);
void write_vol_errors_csv(const std::filesystem::path& path,
                          const ReplicationReport& rep);

/// Replication outputs reloaded from a directory written by the replicate
/// command.
struct StoredReport {
  std::size_t replications = 0;
  // aggregate: model,summary,metric -> value
  std::vector<std::tuple<std::string, std::string, std::string, double>> cells;
  // estimates: replication,model,parameter,summary -> value
  std::vector<std::tuple<std::size_t, std::string, std::string, std::string, double>>
      estimates;
};

StoredReport read_report_dir(const std::filesystem::path& dir);

/// Human-readable tables (parameter srMSE and volatility metrics).
void render_report_text(std::ostream& os, const ReplicationReport& rep);
void render_report_text(std::ostream& os, const StoredReport& rep);

/// Plot-data CSVs: per parameter x summary, rows `replication,<model...>`.
void write_plot_csvs(const std::filesystem::path& dir, const StoredReport& rep);

}  // namespace svkit
