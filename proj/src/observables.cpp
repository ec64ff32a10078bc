#include "qwfluor/observables.hpp"

#include <cmath>

#include "qwfluor/errors.hpp"

namespace qwf {

double squeezing_variance(Complex mean, double intensity, Complex anom) {
  return 2.0 * (intensity - std::norm(mean) - std::abs(mean * mean - anom));
}

double anomalous_nonclassicality(double intensity, Complex anom) { return intensity - std::abs(anom); }

double degree_of_coherence(Complex mean, double intensity) {
  if (intensity < 0.0) throw ArgumentError("degree_of_coherence: negative intensity");
  if (intensity == 0.0) return 1.0;
  return std::norm(mean) / intensity;
}

double wrap_phase(double angle) {
  double w = std::remainder(angle, 2.0 * kPi);
  if (w <= -kPi) w += 2.0 * kPi;
  return w;
}

PhaseReport phase_report(Complex mean, Complex anom_x, Complex anom_q) {
  if (std::abs(mean) < 1e-12 || std::abs(anom_x) < 1e-12 || std::abs(anom_q) < 1e-12) {
    throw ArgumentError("phase_report: phase undefined for a vanishing moment");
  }
  PhaseReport r;
  r.mean_sq = std::arg(mean * mean);
  r.anom_x = std::arg(anom_x);
  r.anom_q = std::arg(anom_q);
  r.gap_x = std::abs(wrap_phase(r.anom_x - r.mean_sq));
  r.gap_q = std::abs(wrap_phase(r.anom_q - r.mean_sq));
  return r;
}

namespace {

// Quadrature X = A e^{i t} + h.c.; the anomalous term is 2 Re[e^{2it}(<A^2> - <A>^2)],
// minimal when 2t + arg(<A^2> - <A>^2) = pi.
double optimal_lo_phase(Complex mean, Complex anom) {
  const Complex c = anom - mean * mean;
  if (std::abs(c) == 0.0) return 0.0;
  return wrap_phase((kPi - std::arg(c)) / 2.0);
}

}  // namespace

ObservableRow observe(double pump_uw, const MomentSet& m) {
  ObservableRow r;
  r.pump_uw = pump_uw;
  r.var_x = squeezing_variance(m.mean_x, m.intensity_x, m.anom_x);
  r.var_q = squeezing_variance(m.mean_q, m.intensity_q, m.anom_q);
  r.ncl_x = anomalous_nonclassicality(m.intensity_x, m.anom_x);
  r.ncl_q = anomalous_nonclassicality(m.intensity_q, m.anom_q);
  r.dcoh_x = degree_of_coherence(m.mean_x, m.intensity_x);
  r.dcoh_q = degree_of_coherence(m.mean_q, m.intensity_q);
  for (double* d : {&r.dcoh_x, &r.dcoh_q}) {
    if (*d > 1.0 + 1e-10) {
      *d = 1.0;
      r.coherence_clipped = true;
    }
  }
  r.lo_phase_x = optimal_lo_phase(m.mean_x, m.anom_x);
  r.lo_phase_q = optimal_lo_phase(m.mean_q, m.anom_q);
  const bool phases_defined = std::abs(m.mean_x) >= 1e-12 && std::abs(m.anom_x) >= 1e-12 && std::abs(m.anom_q) >= 1e-12;
  if (phases_defined) {
    r.phases = phase_report(m.mean_x, m.anom_x, m.anom_q);
  } else {
    const double nan = std::nan("");
    r.phases = {nan, nan, nan, nan, nan};
  }
  return r;
}

std::string to_string(ZeroCrossing::State s) {
  switch (s) {
    case ZeroCrossing::State::crossing: return "crossing";
    case ZeroCrossing::State::always_negative: return "always_negative";
    case ZeroCrossing::State::always_positive: return "always_positive";
  }
  return "unknown";
}

ZeroCrossing locate_zero_crossing(std::span<const double> pumps, std::span<const double> values, double resolution) {
  if (pumps.size() != values.size() || pumps.size() < 2) {
    throw ArgumentError("locate_zero_crossing: need >= 2 matching samples");
  }
  if (!(resolution > 0.0)) throw ArgumentError("locate_zero_crossing: resolution must be > 0");
  const NaturalCubicSpline curve(pumps, values);
  for (std::size_t k = 0; k + 1 < values.size(); ++k) {
    if ((values[k] < 0.0) == (values[k + 1] < 0.0)) continue;
    double lo = pumps[k];
    double hi = pumps[k + 1];
    const bool rising = values[k] < 0.0;
    while (hi - lo > resolution) {
      const double mid = 0.5 * (lo + hi);
      if ((curve(mid) < 0.0) == rising) lo = mid;
      else hi = mid;
    }
    return {ZeroCrossing::State::crossing, 0.5 * (lo + hi)};
  }
  return {values.front() < 0.0 ? ZeroCrossing::State::always_negative : ZeroCrossing::State::always_positive, 0.0};
}

}  // namespace qwf
