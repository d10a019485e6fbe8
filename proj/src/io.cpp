#include "svkit/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "svkit/errors.hpp"

namespace svkit {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

std::string strip(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& s, std::size_t line_no) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw IoError("unparsable numeric field '" + s + "' at line " +
                      std::to_string(line_no),
                  line_no);
  }
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream os(path, std::ios::binary);  // binary: keep LF endings everywhere
  if (!os) throw IoError("cannot open for writing: " + path.string());
  return os;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open for reading: " + path.string());
  return is;
}

std::size_t find_column(const std::vector<std::string>& header, const std::string& name,
                        const std::filesystem::path& path) {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (strip(header[i]) == name) return i;
  }
  throw IoError(path.string() + ": missing required column '" + name + "'", 1);
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  // %.17g always round-trips; prefer the shortest representation that does.
  for (int prec = 15; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) return buf;
  }
  return buf;
}

ReturnSeries ingest_prices(const std::filesystem::path& path) {
  std::ifstream is = open_in(path);
  std::string line;
  if (!std::getline(is, line)) throw IoError(path.string() + ": empty file", 1);
  const std::vector<std::string> header = split_csv_line(strip(line));
  const std::size_t close_col = find_column(header, "close", path);
  find_column(header, "date", path);

  std::vector<double> closes;
  std::size_t line_no = 1;
  while (std::getline(is, line)) {
    ++line_no;
    const std::string stripped = strip(line);
    if (stripped.empty()) continue;
    const std::vector<std::string> fields = split_csv_line(stripped);
    if (fields.size() <= close_col) {
      throw IoError("too few fields at line " + std::to_string(line_no), line_no);
    }
    const double close = parse_double(strip(fields[close_col]), line_no);
    if (!(close > 0.0)) {
      throw IoError("non-positive price at line " + std::to_string(line_no), line_no);
    }
    closes.push_back(close);
  }
  if (closes.size() < 4) {
    throw IoError(path.string() + ": need at least 4 price rows, got " +
                      std::to_string(closes.size()),
                  line_no);
  }
  std::vector<double> returns(closes.size() - 1);
  for (std::size_t t = 1; t < closes.size(); ++t) {
    returns[t - 1] = std::log(closes[t] / closes[t - 1]);
  }
  return ReturnSeries(std::move(returns));
}

void write_sim_csv(const std::filesystem::path& path, const SimPath& sim) {
  std::ofstream os = open_out(path);
  os << "t,y,h_true\n";
  for (std::size_t t = 0; t < sim.y.size(); ++t) {
    os << (t + 1) << ',' << format_double(sim.y[t]) << ','
       << format_double(sim.h_true.h(t)) << '\n';
  }
}

SimTable read_sim_csv(const std::filesystem::path& path) {
  std::ifstream is = open_in(path);
  std::string line;
  if (!std::getline(is, line)) throw IoError(path.string() + ": empty file", 1);
  const std::vector<std::string> header = split_csv_line(strip(line));
  const std::size_t y_col = find_column(header, "y", path);
  std::optional<std::size_t> h_col;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (strip(header[i]) == "h_true") h_col = i;
  }

  SimTable table;
  std::size_t line_no = 1;
  while (std::getline(is, line)) {
    ++line_no;
    const std::string stripped = strip(line);
    if (stripped.empty()) continue;
    const std::vector<std::string> fields = split_csv_line(stripped);
    if (fields.size() <= y_col || (h_col && fields.size() <= *h_col)) {
      throw IoError("too few fields at line " + std::to_string(line_no), line_no);
    }
    table.y.push_back(parse_double(strip(fields[y_col]), line_no));
    if (h_col) table.h_true.push_back(parse_double(strip(fields[*h_col]), line_no));
  }
  return table;
}

void write_draws_csv(const std::filesystem::path& path, const ChainOutput& chain) {
  std::ofstream os = open_out(path);
  os << "iteration,alpha,delta,sigma_nu2\n";
  for (std::size_t r = 0; r < chain.retained(); ++r) {
    os << (r + 1) << ',' << format_double(chain.alpha_draws[r]) << ','
       << format_double(chain.delta_draws[r]) << ','
       << format_double(chain.sigma_nu2_draws[r]) << '\n';
  }
}

void write_vol_summary_csv(const std::filesystem::path& path,
                           const ChainOutput& chain) {
  std::ofstream os = open_out(path);
  os << "t,h_mean,h_median,h_mode\n";
  const std::size_t rows = chain.retained();
  std::vector<double> column(rows);
  for (std::size_t t = 0; t < chain.n_series; ++t) {
    for (std::size_t r = 0; r < rows; ++r) column[r] = chain.h_at(r, t);
    const Summary s = summarize(column);
    os << (t + 1) << ',' << format_double(s.mean) << ',' << format_double(s.median)
       << ',' << format_double(s.mode) << '\n';
  }
}

void write_run_meta(const std::filesystem::path& path,
                    const std::vector<std::pair<std::string, std::string>>& entries) {
  std::ofstream os = open_out(path);
  for (const auto& [key, value] : entries) os << key << " = " << value << '\n';
}

void write_report_csv(const std::filesystem::path& path, const ReplicationReport& rep) {
  std::ofstream os = open_out(path);
  os << "model,summary,metric,value\n";
  for (std::size_t m = 0; m < kNumModels; ++m) {
    const char* model = to_string(static_cast<ModelKind>(m));
    for (std::size_t s = 0; s < kNumSummaries; ++s) {
      const char* summary = to_string(static_cast<SummaryId>(s));
      for (std::size_t p = 0; p < kNumParams; ++p) {
        os << model << ',' << summary << ','
           << to_string(static_cast<ParamId>(p)) << "_srmse,"
           << format_double(rep.param_srmse_cells[m][p][s]) << '\n';
      }
      const VolErrors& v = rep.vol_cells[m][s];
      os << model << ',' << summary << ",vol_srmse," << format_double(v.srmse) << '\n';
      os << model << ',' << summary << ",vol_mae," << format_double(v.mae) << '\n';
      os << model << ',' << summary << ",vol_mape," << format_double(v.mape) << '\n';
    }
  }
}

void write_estimates_csv(const std::filesystem::path& path,
                         const ReplicationReport& rep) {
  std::ofstream os = open_out(path);
  os << "replication,model,parameter,summary,value\n";
  for (std::size_t r = 0; r < rep.rows.size(); ++r) {
    for (std::size_t m = 0; m < kNumModels; ++m) {
      for (std::size_t p = 0; p < kNumParams; ++p) {
        for (std::size_t s = 0; s < kNumSummaries; ++s) {
          os << (r + 1) << ',' << to_string(static_cast<ModelKind>(m)) << ','
             << to_string(static_cast<ParamId>(p)) << ','
             << to_string(static_cast<SummaryId>(s)) << ','
             << format_double(rep.rows[r].by_model[m].param_estimate(
                    static_cast<ParamId>(p), static_cast<SummaryId>(s)))
             << '\n';
        }
      }
    }
  }
}

void write_vol_errors_csv(const std::filesystem::path& path,
                          const ReplicationReport& rep) {
  std::ofstream os = open_out(path);
  os << "replication,model,summary,srmse,mae,mape\n";
  for (std::size_t r = 0; r < rep.rows.size(); ++r) {
    for (std::size_t m = 0; m < kNumModels; ++m) {
      for (std::size_t s = 0; s < kNumSummaries; ++s) {
        const VolErrors& v = rep.rows[r].by_model[m].vol[s];
        os << (r + 1) << ',' << to_string(static_cast<ModelKind>(m)) << ','
           << to_string(static_cast<SummaryId>(s)) << ',' << format_double(v.srmse)
           << ',' << format_double(v.mae) << ',' << format_double(v.mape) << '\n';
      }
    }
  }
}

StoredReport read_report_dir(const std::filesystem::path& dir) {
  StoredReport rep;
  {
    std::ifstream is = open_in(dir / "report.csv");
    std::string line;
    std::getline(is, line);  // header
    while (std::getline(is, line)) {
      const std::string stripped = strip(line);
      if (stripped.empty()) continue;
      const std::vector<std::string> f = split_csv_line(stripped);
      if (f.size() != 4) throw IoError("malformed report.csv row: " + line);
      rep.cells.emplace_back(f[0], f[1], f[2], parse_double(f[3], 0));
    }
  }
  {
    std::ifstream is = open_in(dir / "estimates.csv");
    std::string line;
    std::getline(is, line);
    std::size_t max_rep = 0;
    while (std::getline(is, line)) {
      const std::string stripped = strip(line);
      if (stripped.empty()) continue;
      const std::vector<std::string> f = split_csv_line(stripped);
      if (f.size() != 5) throw IoError("malformed estimates.csv row: " + line);
      const std::size_t r = static_cast<std::size_t>(parse_double(f[0], 0));
      max_rep = std::max(max_rep, r);
      rep.estimates.emplace_back(r, f[1], f[2], f[3], parse_double(f[4], 0));
    }
    rep.replications = max_rep;
  }
  return rep;
}

namespace {

void render_tables(std::ostream& os, std::size_t replications,
                   const std::vector<std::tuple<std::string, std::string, std::string,
                                                double>>& cells) {
  const char* params[] = {"alpha", "delta", "sigma_nu"};
  const char* summaries[] = {"mean", "median", "mode"};
  const char* models[] = {"gaussian", "nsvm3"};
  const char* vol_metrics[] = {"vol_srmse", "vol_mae", "vol_mape"};

  auto cell = [&](const std::string& model, const std::string& summary,
                  const std::string& metric) {
    for (const auto& [m, s, k, v] : cells) {
      if (m == model && s == summary && k == metric) return v;
    }
    return std::nan("");
  };

  os << "Parameter estimation srMSE (" << replications << " replications"
     << ", lower is better)\n";
  os << std::left << std::setw(10) << "model";
  for (const char* p : params) {
    for (const char* s : summaries) {
      os << std::right << std::setw(16) << (std::string(p) + " " + s);
    }
  }
  os << '\n';
  for (const char* m : models) {
    os << std::left << std::setw(10) << m;
    for (const char* p : params) {
      for (const char* s : summaries) {
        os << std::right << std::setw(16) << std::setprecision(6)
           << cell(m, s, std::string(p) + "_srmse");
      }
    }
    os << '\n';
  }

  os << "\nVolatility estimation error (average over replications)\n";
  os << std::left << std::setw(10) << "model";
  for (const char* k : vol_metrics) {
    for (const char* s : summaries) {
      os << std::right << std::setw(16) << (std::string(k + 4) + " " + s);
    }
  }
  os << '\n';
  for (const char* m : models) {
    os << std::left << std::setw(10) << m;
    for (const char* k : vol_metrics) {
      for (const char* s : summaries) {
        os << std::right << std::setw(16) << std::setprecision(6) << cell(m, s, k);
      }
    }
    os << '\n';
  }
}

}  // namespace

void render_report_text(std::ostream& os, const ReplicationReport& rep) {
  std::vector<std::tuple<std::string, std::string, std::string, double>> cells;
  for (std::size_t m = 0; m < kNumModels; ++m) {
    for (std::size_t s = 0; s < kNumSummaries; ++s) {
      for (std::size_t p = 0; p < kNumParams; ++p) {
        cells.emplace_back(to_string(static_cast<ModelKind>(m)),
                           to_string(static_cast<SummaryId>(s)),
                           std::string(to_string(static_cast<ParamId>(p))) + "_srmse",
                           rep.param_srmse_cells[m][p][s]);
      }
      const VolErrors& v = rep.vol_cells[m][s];
      cells.emplace_back(to_string(static_cast<ModelKind>(m)),
                         to_string(static_cast<SummaryId>(s)), "vol_srmse", v.srmse);
      cells.emplace_back(to_string(static_cast<ModelKind>(m)),
                         to_string(static_cast<SummaryId>(s)), "vol_mae", v.mae);
      cells.emplace_back(to_string(static_cast<ModelKind>(m)),
                         to_string(static_cast<SummaryId>(s)), "vol_mape", v.mape);
    }
  }
  render_tables(os, rep.replications, cells);
}

void render_report_text(std::ostream& os, const StoredReport& rep) {
  render_tables(os, rep.replications, rep.cells);
}

void write_plot_csvs(const std::filesystem::path& dir, const StoredReport& rep) {
  const char* params[] = {"alpha", "delta", "sigma_nu"};
  const char* summaries[] = {"mean", "median", "mode"};
  for (const char* p : params) {
    for (const char* s : summaries) {
      std::ofstream os =
          open_out(dir / ("plot_" + std::string(p) + "_" + s + ".csv"));
      os << "replication,gaussian,nsvm3\n";
      for (std::size_t r = 1; r <= rep.replications; ++r) {
        double g = std::nan("");
        double n = std::nan("");
        for (const auto& [rr, model, param, summary, value] : rep.estimates) {
          if (rr == r && param == p && summary == s) {
            (model == "gaussian" ? g : n) = value;
          }
        }
        os << r << ',' << format_double(g) << ',' << format_double(n) << '\n';
      }
    }
  }
}

}  // namespace svkit
