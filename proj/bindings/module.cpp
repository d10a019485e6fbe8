// Python bindings for the main operations: simulation, the two estimators,
// KDE utilities, and accuracy metrics.

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <utility>
#include <vector>

#include "svkit/gaussian.hpp"
#include "svkit/io.hpp"
#include "svkit/kde.hpp"
#include "svkit/metrics.hpp"
#include "svkit/replicate.hpp"
#include "svkit/semiparametric.hpp"
#include "svkit/simulate.hpp"

namespace py = pybind11;
using namespace svkit;

namespace {

py::array_t<double> to_array(const std::vector<double>& v) {
  return py::array_t<double>(static_cast<py::ssize_t>(v.size()), v.data());
}

py::array_t<double> h_draws_matrix(const ChainOutput& chain) {
  return py::array_t<double>({static_cast<py::ssize_t>(chain.retained()),
                              static_cast<py::ssize_t>(chain.n_series)},
                             chain.h_draws.data());
}

py::dict chain_to_dict(const ChainOutput& chain) {
  py::dict d;
  d["alpha"] = to_array(chain.alpha_draws);
  d["delta"] = to_array(chain.delta_draws);
  d["sigma_nu2"] = to_array(chain.sigma_nu2_draws);
  d["h"] = h_draws_matrix(chain);
  return d;
}

McmcConfig make_config(std::uint64_t iterations, std::uint64_t burn_in, double c_star,
                       std::uint64_t seed) {
  McmcConfig cfg;
  cfg.total_iterations = iterations;
  cfg.burn_in = burn_in;
  cfg.c_star = c_star;
  cfg.seed = seed;
  cfg.validate();
  return cfg;
}

PriorSpec make_prior(double delta0, double sigma_delta2, double alpha0,
                     double sigma_alpha2, double nu0, double s0) {
  PriorSpec p{delta0, sigma_delta2, alpha0, sigma_alpha2, nu0, s0};
  p.validate();
  return p;
}

}  // namespace

PYBIND11_MODULE(_svkit, m) {
  m.doc() = "Bayesian stochastic volatility estimation (Gaussian SV and NSVM-3)";

  py::register_exception<Error>(m, "SvkitError");

  py::class_<PriorSpec>(m, "PriorSpec")
      .def(py::init(&make_prior), py::arg("delta0") = 0.9,
           py::arg("sigma_delta2") = 10.0, py::arg("alpha0") = 0.0,
           py::arg("sigma_alpha2") = 10.0, py::arg("nu0") = 2.0,
           py::arg("s0") = 0.05)
      .def_readwrite("delta0", &PriorSpec::delta0)
      .def_readwrite("sigma_delta2", &PriorSpec::sigma_delta2)
      .def_readwrite("alpha0", &PriorSpec::alpha0)
      .def_readwrite("sigma_alpha2", &PriorSpec::sigma_alpha2)
      .def_readwrite("nu0", &PriorSpec::nu0)
      .def_readwrite("s0", &PriorSpec::s0);

  py::class_<McmcConfig>(m, "McmcConfig")
      .def(py::init(&make_config), py::arg("iterations") = 10000,
           py::arg("burn_in") = 5000, py::arg("c_star") = 1.2, py::arg("seed") = 0)
      .def_readwrite("total_iterations", &McmcConfig::total_iterations)
      .def_readwrite("burn_in", &McmcConfig::burn_in)
      .def_readwrite("c_star", &McmcConfig::c_star)
      .def_readwrite("seed", &McmcConfig::seed);

  m.def(
      "simulate",
      [](double alpha, double delta, double sigma_nu, double rho, std::size_t n,
         const std::string& family, double df, double ln_h0_mean, double ln_h0_sd,
         std::uint64_t seed) {
        DgpSpec spec;
        spec.alpha = alpha;
        spec.delta = delta;
        spec.sigma_nu = sigma_nu;
        spec.rho = rho;
        spec.n = n;
        spec.family =
            family == "student_t" ? ErrorFamily::student_t : ErrorFamily::gaussian;
        spec.df = df;
        spec.ln_h0_mean = ln_h0_mean;
        spec.ln_h0_sd = ln_h0_sd;
        RngStream rng(seed);
        const SimPath sim = generate(rng, spec);
        py::dict d;
        d["y"] = to_array(sim.y.values());
        d["h_true"] = to_array(std::vector<double>(sim.h_true.h_values().begin(),
                                                   sim.h_true.h_values().end()));
        d["u"] = to_array(sim.u);
        d["v"] = to_array(sim.v);
        d["y0"] = sim.y0;
        d["h0"] = sim.h0;
        return d;
      },
      py::arg("alpha") = -0.10, py::arg("delta") = 0.985, py::arg("sigma_nu") = 0.15,
      py::arg("rho") = -0.5, py::arg("n") = 500, py::arg("family") = "gaussian",
      py::arg("df") = 10.0, py::arg("ln_h0_mean") = -10.0, py::arg("ln_h0_sd") = 0.87,
      py::arg("seed") = 0, "Simulate one path from the benchmark DGP.");

  m.def(
      "fit_gaussian",
      [](const std::vector<double>& y, const PriorSpec& prior, const McmcConfig& cfg) {
        const ChainOutput chain = run_gaussian_chain(ReturnSeries(y), prior, cfg);
        return chain_to_dict(chain);
      },
      py::arg("y"), py::arg("prior") = PriorSpec{}, py::arg("config") = McmcConfig{},
      "Run the Gaussian-model chain; returns retained draws.");

  m.def(
      "fit_nsvm3",
      [](const std::vector<double>& y, const PriorSpec& prior,
         const McmcConfig& pilot, const McmcConfig& main_cfg, bool semiparametric_params,
         bool cold_start, bool gaussian_oracle_density, const std::string& w_scale) {
        Nsvm3Options opt;
        opt.semiparametric_params = semiparametric_params;
        opt.cold_start = cold_start;
        opt.gaussian_oracle_density = gaussian_oracle_density;
        opt.w_scale = w_scale == "sigma_nu" ? WScale::sigma_nu : WScale::conditional;
        const Nsvm3Result result =
            run_nsvm3(ReturnSeries(y), prior, pilot, main_cfg, opt);
        py::dict d = chain_to_dict(result.chain);
        py::dict pilot_d;
        pilot_d["alpha"] = result.model.pilot_estimates.alpha;
        pilot_d["delta"] = result.model.pilot_estimates.delta;
        pilot_d["sigma_nu2"] = result.model.pilot_estimates.sigma_nu2;
        pilot_d["h"] = to_array(result.model.pilot_h);
        d["pilot"] = pilot_d;
        d["kde_bx"] = result.model.kde.bx();
        d["kde_by"] = result.model.kde.by();
        return d;
      },
      py::arg("y"), py::arg("prior") = PriorSpec{}, py::arg("pilot") = McmcConfig{},
      py::arg("config") = McmcConfig{}, py::arg("semiparametric_params") = true,
      py::arg("cold_start") = false, py::arg("gaussian_oracle_density") = false,
      py::arg("w_scale") = "conditional",
      "Run the two-phase NSVM-3 estimator; returns phase-2 draws plus pilot info.");

  py::class_<BivariateKde>(m, "BivariateKde")
      .def(py::init([](const std::vector<double>& xs, const std::vector<double>& ys) {
             return kde2d_fit(xs, ys);
           }),
           py::arg("xs"), py::arg("ys"))
      .def_property_readonly("bx", &BivariateKde::bx)
      .def_property_readonly("by", &BivariateKde::by)
      .def("density", &BivariateKde::density, py::arg("x"), py::arg("y"))
      .def("log_density", &BivariateKde::log_density, py::arg("x"), py::arg("y"));

  m.def("bandwidth_nrd",
        [](const std::vector<double>& xs) { return bandwidth_nrd(xs); },
        py::arg("sample"), "Normal-reference bandwidth 1.06 min(sd, IQR/1.34) n^-1/5.");
  m.def("kde1d_mode", [](const std::vector<double>& xs) { return kde1d_mode(xs); },
        py::arg("sample"), "Sample point maximizing the Gaussian KDE.");

  m.def(
      "summarize",
      [](const std::vector<double>& draws) {
        const Summary s = summarize(draws);
        return py::make_tuple(s.mean, s.median, s.mode);
      },
      py::arg("draws"), "(mean, median, mode) of a draw sequence.");
  m.def("param_srmse",
        [](const std::vector<double>& est, double truth) {
          return param_srmse(est, truth);
        },
        py::arg("estimates"), py::arg("truth"));
  m.def(
      "vol_errors",
      [](const std::vector<double>& h_true, const std::vector<double>& h_est) {
        const VolErrors e = vol_errors(h_true, h_est);
        return py::make_tuple(e.srmse, e.mae, e.mape);
      },
      py::arg("h_true"), py::arg("h_est"),
      "(srmse, mae, mape) of a volatility estimate against the truth.");

  m.def("ingest_prices",
        [](const std::string& path) {
          return to_array(ingest_prices(path).values());
        },
        py::arg("path"), "Log returns from a date,close price CSV.");

  m.attr("__version__") = "0.1.0";
}
