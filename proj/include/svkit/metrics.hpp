#pragma once

// Posterior summaries, accuracy metrics, and the cross-replication report.

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace svkit {

struct Summary {
  double mean = 0.0;
  double median = 0.0;
  double mode = 0.0;
};

/// Arithmetic mean, midpoint-interpolated median, and KDE-argmax mode of a
/// draw sequence. Constant samples get (c, c, c) without touching the KDE.
Summary summarize(std::span<const double> draws);

/// sqrt((1/R) sum_i (estimate_i - truth)^2).
double param_srmse(std::span<const double> estimates, double truth);

struct VolErrors {
  double srmse = 0.0;
  double mae = 0.0;
  double mape = 0.0;  // fraction, not percent
};

/// srmse = sqrt(sum (h_i - hhat_i)^2 / N), mae = sum |h_i - hhat_i| / N,
/// mape = sum(|h_i - hhat_i| / h_i) / N. True values must be positive.
VolErrors vol_errors(std::span<const double> h_true, std::span<const double> h_est);

enum class ModelKind { gaussian, nsvm3 };
inline constexpr std::size_t kNumModels = 2;

enum class ParamId { alpha, delta, sigma_nu };
inline constexpr std::size_t kNumParams = 3;

enum class SummaryId { mean, median, mode };
inline constexpr std::size_t kNumSummaries = 3;

const char* to_string(ModelKind m);
const char* to_string(ParamId p);
const char* to_string(SummaryId s);

/// Per-model results of one replication: parameter summaries (sigma_nu is
/// summarized on the sd scale, matching how the tables report it) and the
/// volatility error triple under each summary of the posterior h path.
struct FitSummaries {
  std::array<Summary, kNumParams> params;
  std::array<VolErrors, kNumSummaries> vol;

  double param_estimate(ParamId p, SummaryId s) const;
};

struct PairedReplication {
  std::array<FitSummaries, kNumModels> by_model;
};

struct TruthParams {
  double alpha = 0.0;
  double delta = 0.0;
  double sigma_nu = 1.0;

  double value(ParamId p) const;
};

/// Aggregate over replications: srMSE against the truth for every
/// model x parameter x summary cell, and the replication mean of every
/// volatility metric. With R = 1 the aggregate reduces to the single
/// replication's values.
struct ReplicationReport {
  std::size_t replications = 0;
  TruthParams truth;
  std::vector<PairedReplication> rows;
  std::array<std::array<std::array<double, kNumSummaries>, kNumParams>, kNumModels>
      param_srmse_cells{};
  std::array<std::array<VolErrors, kNumSummaries>, kNumModels> vol_cells{};
};

ReplicationReport aggregate(std::vector<PairedReplication> rows,
                            const TruthParams& truth);

}  // namespace svkit
