#include "svkit/simulate.hpp"

#include <cmath>

#include "svkit/errors.hpp"

namespace svkit {

void DgpSpec::validate() const {
  if (!(sigma_nu >= 0.0) || !std::isfinite(sigma_nu)) {
    throw InvalidInput("DgpSpec: sigma_nu must be non-negative");
  }
  if (!(std::abs(rho) < 1.0)) throw InvalidInput("DgpSpec: need |rho| < 1");
  if (n < 3) throw InvalidInput("DgpSpec: need n >= 3");
  if (family == ErrorFamily::student_t && !(df > 0.0)) {
    throw InvalidInput("DgpSpec: student_t needs df > 0");
  }
  if (!(ln_h0_sd > 0.0)) throw InvalidInput("DgpSpec: ln_h0_sd must be positive");
}

SimPath generate(RngStream& rng, const DgpSpec& spec) {
  spec.validate();

  const double ln_h0 = rng.normal(spec.ln_h0_mean, spec.ln_h0_sd);
  const double h0 = std::exp(ln_h0);
  const double y0 = std::sqrt(h0) * rng.normal();

  std::vector<double> u(spec.n);
  std::vector<double> v(spec.n);
  std::vector<double> h(spec.n);
  std::vector<double> y(spec.n);

  double ln_prev = ln_h0;
  for (std::size_t i = 0; i < spec.n; ++i) {
    const auto [ui, vi] = spec.family == ErrorFamily::gaussian
                              ? draw_bivariate_normal(rng, spec.rho)
                              : draw_bivariate_t(rng, spec.df, spec.rho);
    u[i] = ui;
    v[i] = vi;
    const double ln_h = (spec.alpha + spec.delta * ln_prev) + spec.sigma_nu * vi;
    h[i] = std::exp(ln_h);
    y[i] = std::sqrt(h[i]) * ui;
    ln_prev = ln_h;
  }

  return SimPath{ReturnSeries(std::move(y)), VolPath(std::move(h)), std::move(u),
                 std::move(v), y0, h0};
}

}  // namespace svkit
