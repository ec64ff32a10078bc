#pragma once

#include "qwfluor/qrt.hpp"
#include "qwfluor/spectra.hpp"

namespace qwf {

/// Steady-state second-order moments of the bare source (x) and the
/// absorption-filtered emission (q), rotating frame.
struct MomentSet {
  Complex mean_x, mean_q;
  double intensity_x = 0.0, intensity_q = 0.0;
  Complex anom_x, anom_q;
};

/// sqrt(a(0)) <A>_x: the coherent amplitude only sees absorption at the laser.
Complex coherent_moment_q(Complex mean_x, const AbsorptionModel& m);

/// int a(w) S_x(w) dw + a(0) |<A>_x|^2. The frequency-independent part of a
/// is integrated exactly against the known total incoherent weight.
double intensity_q(const Spectrum& sx, const AbsorptionModel& m);

/// a(0) <A>_x^2 + (1/pi) int dw sqrt(a(w) a(-w)) int_0^inf cos(w tau) fluct(tau) d tau.
/// The omega integral runs over `grid` plus an asymptotic tail beyond it.
Complex anomalous_moment_q(const CorrelationTrace& c2, const AbsorptionModel& m, const OmegaGrid& grid);

/// What the general filtered-correlation transform needs, for orders up to 2.
struct FilterSources {
  Complex mean_x{0.0, 0.0};
  const Spectrum* emission = nullptr;          ///< from the adag_a correlator
  const CorrelationTrace* anomalous = nullptr;  ///< the a_a correlator
  OmegaGrid grid;                               ///< quadrature grid for the anomalous moment
};

/// Filtered <A^dag^creators A^annihilators>. Total order above 2 throws
/// UnsupportedOrderError.
Complex filtered_moment(int creators, int annihilators, const FilterSources& src, const AbsorptionModel& m);

}  // namespace qwf
