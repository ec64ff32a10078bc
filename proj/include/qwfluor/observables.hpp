#pragma once

#include <span>
#include <string>

#include "qwfluor/filter.hpp"

namespace qwf {

/// 2 (I - |<A>|^2 - |<A>^2 - <A^2>|), phase-optimized normally ordered
/// quadrature variance in units of |zeta|^2. Negative means squeezed.
double squeezing_variance(Complex mean, double intensity, Complex anom);

/// I - |<A^2>|. Negative values are nonclassical.
double anomalous_nonclassicality(double intensity, Complex anom);

/// |<A>|^2 / I; 1 for the vacuum. Throws ArgumentError on negative intensity.
double degree_of_coherence(Complex mean, double intensity);

/// Wraps an angle to (-pi, pi].
double wrap_phase(double angle);

struct PhaseReport {
  double mean_sq = 0.0;  ///< arg <A>^2
  double anom_x = 0.0;   ///< arg <A^2>_x
  double anom_q = 0.0;   ///< arg <A^2>_q
  double gap_x = 0.0;    ///< |wrap(arg <A^2>_x - arg <A>^2)|
  double gap_q = 0.0;    ///< |wrap(arg <A^2>_q - arg <A>^2)|
};

/// Throws ArgumentError when any modulus is below 1e-12.
PhaseReport phase_report(Complex mean, Complex anom_x, Complex anom_q);

struct ObservableRow {
  double pump_uw = 0.0;
  double var_x = 0.0, var_q = 0.0;
  double ncl_x = 0.0, ncl_q = 0.0;
  double dcoh_x = 0.0, dcoh_q = 0.0;
  bool coherence_clipped = false;  ///< a degree of coherence exceeded 1 + 1e-10
  PhaseReport phases;
  /// Local-oscillator quadrature angle minimizing each variance (diagnostic).
  double lo_phase_x = 0.0, lo_phase_q = 0.0;
};

ObservableRow observe(double pump_uw, const MomentSet& m);

}  // namespace qwf

namespace qwf {

/// Where a sampled curve changes sign, refined by bisection on a natural
/// cubic spline through the samples.
struct ZeroCrossing {
  enum class State { crossing, always_negative, always_positive };
  State state = State::always_positive;
  double pump_uw = 0.0;  ///< valid for State::crossing
};

std::string to_string(ZeroCrossing::State s);

/// First sign change of values(pumps), located to within `resolution`.
ZeroCrossing locate_zero_crossing(std::span<const double> pumps, std::span<const double> values, double resolution);

}  // namespace qwf
