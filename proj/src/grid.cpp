#include "qwfluor/grid.hpp"

#include <cmath>

#include "qwfluor/errors.hpp"

namespace qwf {

GridSpec make_grids(const PhysParams& p, const NumericsOptions& opt) {
  validate(p);
  if (!(opt.window_gamma > 0.0)) throw ArgumentError("make_grids: window half-width must be > 0");
  if (opt.grid_points < 16) throw ArgumentError("make_grids: need at least 16 frequency points");
  if (!(opt.tau_max_gamma > 0.0 && opt.dtau_gamma > 0.0 && opt.nyquist_factor > 0.0)) {
    throw ArgumentError("make_grids: tau_max, dtau and nyquist factor must be > 0");
  }
  GridSpec g;
  g.omega = {p.delta - opt.window_gamma * p.gamma, p.delta + opt.window_gamma * p.gamma, opt.grid_points};
  const double domega = g.omega.step();
  const double span = g.omega.hi - g.omega.lo;
  const double dtau_target = std::min(opt.dtau_gamma / p.gamma, 2.0 * kPi / (opt.nyquist_factor * span));
  const double tau_max = opt.tau_max_gamma / p.gamma;

  // Padded length must also hold the whole trace, which needs domega <= 2 pi / tau_max.
  if (domega * tau_max > 2.0 * kPi) {
    throw GridError("make_grids: frequency step too coarse for tau_max; raise spectra.grid_points");
  }
  Eigen::Index n = 1;
  while (n < g.omega.size || 2.0 * kPi / (static_cast<double>(n) * domega) > dtau_target) n *= 2;
  const double dtau = 2.0 * kPi / (static_cast<double>(n) * domega);
  g.fft_size = n;
  g.tau = {dtau, static_cast<Eigen::Index>(std::ceil(tau_max / dtau - 1e-9)) + 1};
  return g;
}

}  // namespace qwf
