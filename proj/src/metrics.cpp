#include "svkit/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "svkit/errors.hpp"
#include "svkit/kde.hpp"

namespace svkit {

Summary summarize(std::span<const double> draws) {
  if (draws.empty()) throw InvalidInput("summarize: empty draw list");
  Summary s;
  for (double d : draws) s.mean += d;
  s.mean /= static_cast<double>(draws.size());

  std::vector<double> sorted(draws.begin(), draws.end());
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = sorted.size();
  s.median = (n % 2 == 1) ? sorted[n / 2]
                          : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);

  const bool constant = sorted.front() == sorted.back();
  s.mode = constant || n < 2 ? sorted.front() : kde1d_mode(sorted);
  return s;
}

double param_srmse(std::span<const double> estimates, double truth) {
  if (estimates.empty()) throw InvalidInput("param_srmse: empty estimate list");
  double ss = 0.0;
  for (double e : estimates) ss += (e - truth) * (e - truth);
  return std::sqrt(ss / static_cast<double>(estimates.size()));
}

VolErrors vol_errors(std::span<const double> h_true, std::span<const double> h_est) {
  if (h_true.size() != h_est.size() || h_true.empty()) {
    throw InvalidInput("vol_errors: length mismatch");
  }
  VolErrors e;
  for (std::size_t i = 0; i < h_true.size(); ++i) {
    if (!(h_true[i] > 0.0)) {
      throw InvalidInput("vol_errors: true volatilities must be positive");
    }
    const double d = h_true[i] - h_est[i];
    e.srmse += d * d;
    e.mae += std::abs(d);
    e.mape += std::abs(d) / h_true[i];
  }
  const double n = static_cast<double>(h_true.size());
  e.srmse = std::sqrt(e.srmse / n);
  e.mae /= n;
  e.mape /= n;
  return e;
}

const char* to_string(ModelKind m) {
  return m == ModelKind::gaussian ? "gaussian" : "nsvm3";
}

const char* to_string(ParamId p) {
  switch (p) {
    case ParamId::alpha: return "alpha";
    case ParamId::delta: return "delta";
    default: return "sigma_nu";
  }
}

const char* to_string(SummaryId s) {
  switch (s) {
    case SummaryId::mean: return "mean";
    case SummaryId::median: return "median";
    default: return "mode";
  }
}

double FitSummaries::param_estimate(ParamId p, SummaryId s) const {
  const Summary& sm = params[static_cast<std::size_t>(p)];
  switch (s) {
    case SummaryId::mean: return sm.mean;
    case SummaryId::median: return sm.median;
    default: return sm.mode;
  }
}

double TruthParams::value(ParamId p) const {
  switch (p) {
    case ParamId::alpha: return alpha;
    case ParamId::delta: return delta;
    default: return sigma_nu;
  }
}

ReplicationReport aggregate(std::vector<PairedReplication> rows,
                            const TruthParams& truth) {
  if (rows.empty()) throw InvalidInput("aggregate: no replications");
  ReplicationReport rep;
  rep.replications = rows.size();
  rep.truth = truth;

  std::vector<double> estimates(rows.size());
  for (std::size_t m = 0; m < kNumModels; ++m) {
    for (std::size_t p = 0; p < kNumParams; ++p) {
      for (std::size_t s = 0; s < kNumSummaries; ++s) {
        for (std::size_t r = 0; r < rows.size(); ++r) {
          estimates[r] = rows[r].by_model[m].param_estimate(static_cast<ParamId>(p),
                                                            static_cast<SummaryId>(s));
        }
        rep.param_srmse_cells[m][p][s] =
            param_srmse(estimates, truth.value(static_cast<ParamId>(p)));
      }
    }
    for (std::size_t s = 0; s < kNumSummaries; ++s) {
      VolErrors acc;
      for (const PairedReplication& r : rows) {
        const VolErrors& e = r.by_model[m].vol[s];
        acc.srmse += e.srmse;
        acc.mae += e.mae;
        acc.mape += e.mape;
      }
      const double n = static_cast<double>(rows.size());
      rep.vol_cells[m][s] = VolErrors{acc.srmse / n, acc.mae / n, acc.mape / n};
    }
  }
  rep.rows = std::move(rows);
  return rep;
}

}  // namespace svkit
