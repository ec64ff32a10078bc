#pragma once

#include "qwfluor/model.hpp"
#include "qwfluor/types.hpp"

namespace qwf {

/// Uniform tau grid starting at 0: tau_k = k * step, k < size.
struct TauGrid {
  double step = 0.0;
  Eigen::Index size = 0;

  double at(Eigen::Index k) const { return static_cast<double>(k) * step; }
  double span() const { return at(size - 1); }
};

/// Uniform rotating-frame frequency grid [lo, hi] (meV, 0 = laser frequency).
struct OmegaGrid {
  double lo = 0.0;
  double hi = 0.0;
  Eigen::Index size = 0;

  double step() const { return (hi - lo) / static_cast<double>(size - 1); }
  double at(Eigen::Index k) const { return lo + static_cast<double>(k) * step(); }
  RArray points() const { return RArray::LinSpaced(size, lo, hi); }
};

/// Numerical knobs shared by the correlator and spectral stages. Times in
/// units of 1/Gamma, frequency half-window in units of Gamma.
struct NumericsOptions {
  double tau_max_gamma = 40.0;
  double dtau_gamma = 0.05;
  double nyquist_factor = 40.0;
  double window_gamma = 12.0;
  Eigen::Index grid_points = 16384;
};

/// Frequency grid, matching tau grid and the zero-padded transform length.
/// The tau step is rounded down so that step_tau * step_omega * fft_size = 2 pi.
struct GridSpec {
  OmegaGrid omega;
  TauGrid tau;
  Eigen::Index fft_size = 0;
};

GridSpec make_grids(const PhysParams& p, const NumericsOptions& opt);

/// Trapezoidal integral of samples on a uniform grid.
template <typename Derived>
auto trapezoid(const Eigen::DenseBase<Derived>& y, double step) {
  using S = typename Derived::Scalar;
  const Eigen::Index n = y.size();
  if (n < 2) return S(0);
  return step * (y.sum() - S(0.5) * (y(0) + y(n - 1)));
}

}  // namespace qwf
