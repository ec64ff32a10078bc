#pragma once

#include <optional>

#include "qwfluor/filter.hpp"
#include "qwfluor/fock.hpp"
#include "qwfluor/grid.hpp"
#include "qwfluor/observables.hpp"
#include "qwfluor/spectra.hpp"

namespace qwf {

/// How to build the absorption filter for a given parameter set.
struct AbsorptionSpec {
  AbsorptionMode mode = AbsorptionMode::thin_sheet;
  std::optional<double> kappa;  ///< thin_sheet; default Gamma / (4 f)
  double a_peak = 0.5;          ///< lorentzian
  double constant = 1.0;        ///< constant

  AbsorptionModel bind(const PhysParams& p) const;
};

struct PipelineOptions {
  NumericsOptions numerics;
  int truncation = 0;  ///< 0 selects choose_truncation(params, truncation_tol)
  double truncation_tol = 1e-10;
  AbsorptionSpec absorption;
};

/// Everything computed for one parameter set.
struct PointResult {
  PhysParams params;
  int truncation = 0;
  GridSpec grids;
  DensityMatrix rho;
  CorrelationTrace c1, c2;
  Spectrum emission;
  AbsorptionModel absorption = AbsorptionModel::constant(1.0);
  MomentSet moments;
  ObservableRow row;
};

/// Steady state, both correlators from one step propagator, the emission
/// spectrum, filtered moments and observables.
PointResult evaluate_point(const PhysParams& p, const PipelineOptions& opt);

}  // namespace qwf
