#pragma once

#include <optional>
#include <string>

#include "qwfluor/grid.hpp"
#include "qwfluor/model.hpp"
#include "qwfluor/qrt.hpp"

namespace qwf {

/// chi(omega) = f / (omega - delta - i Gamma/2), omega measured from the laser.
Complex susceptibility(double omega, const PhysParams& p);

enum class AbsorptionMode { thin_sheet, lorentzian, constant };

std::string to_string(AbsorptionMode mode);

/// Absorption line a(omega) in [0, 1] bound to one parameter set.
///
/// thin_sheet: r = i kappa chi, t = 1 + r, a = 1 - |t|^2 - |r|^2, a Lorentzian at
/// delta with HWHM Gamma/2 and peak 4 kappa f / Gamma (1 - 2 kappa f / Gamma) <= 1/2.
/// lorentzian: same line shape with an explicit peak.
/// constant: frequency independent a = c, the degenerate filter used for scaling checks.
class AbsorptionModel {
 public:
  /// kappa defaults to Gamma / (4 f), which puts the peak at 1/2.
  static AbsorptionModel thin_sheet(const PhysParams& p, std::optional<double> kappa = std::nullopt);
  static AbsorptionModel lorentzian(const PhysParams& p, double a_peak);
  static AbsorptionModel constant(double c);

  AbsorptionMode mode() const { return mode_; }
  double kappa() const { return kappa_; }
  double peak() const { return peak_; }
  const PhysParams& params() const { return params_; }

  double operator()(double omega) const;
  RArray operator()(const RArray& omega) const;

  /// Limit of a(omega) for |omega| -> infinity.
  double asymptote() const { return mode_ == AbsorptionMode::constant ? peak_ : 0.0; }

  /// sqrt(a(omega) a(-omega)), the weight seen by the anomalous moment.
  double pair_weight(double omega) const;

  /// Transmission and reflection amplitudes (thin_sheet only).
  Complex transmission(double omega) const;
  Complex reflection(double omega) const;

 private:
  AbsorptionModel(AbsorptionMode mode, double kappa, double peak, PhysParams p)
      : mode_(mode), kappa_(kappa), peak_(peak), params_(p) {}

  AbsorptionMode mode_;
  double kappa_ = 0.0;
  double peak_ = 0.0;
  PhysParams params_;
};

/// density(omega) ~ c2/omega^2 + c3/omega^3 + c4/omega^4 beyond the grid.
struct PowerTail {
  double c2 = 0.0;
  double c3 = 0.0;
  double c4 = 0.0;

  double operator()(double omega) const {
    const double u = 1.0 / omega;
    return u * u * (c2 + u * (c3 + u * c4));
  }
  /// Weight over (-inf, lo] and [hi, inf).
  double weight_outside(double lo, double hi) const;
};

/// Spectral density on a uniform grid plus the exact Rayleigh (delta) weight
/// at omega = 0 and the weight lying outside the grid.
struct Spectrum {
  OmegaGrid grid;
  RArray density;
  double delta_weight = 0.0;
  double tail_weight = 0.0;
  std::optional<PowerTail> tail;  ///< asymptotic form, known for unfiltered spectra
  std::optional<double> moment;   ///< generating equal-time moment, when known
  Eigen::Index clipped = 0;       ///< points below -1e-10 that were set to 0
};

/// trapezoid(density) + tail_weight + delta_weight
double integrate(const Spectrum& s);

/// int_0^inf exp(i sign omega_k tau) F(tau) d tau on the frequency grid, by a
/// zero-padded FFT of the trapezoid sum with Euler-Maclaurin end corrections
/// built from the derivatives of F at 0.
CVector half_fourier(const CorrelationTrace& trace, const OmegaGrid& grid, int sign = +1);

/// Incoherent density (1/pi) Re int_0^inf e^{i omega tau} fluct(tau) d tau plus
/// the coherent weight |<A>|^2 as a delta at the laser frequency. Throws
/// GridError when the grid does not straddle 0 or the normalization is off by
/// more than 1e-4 relative.
Spectrum emission_spectrum(const CorrelationTrace& c1, const OmegaGrid& grid);

/// S_q = a S_x pointwise; delta weight scaled by a(0).
Spectrum qw_spectrum(const Spectrum& sx, const AbsorptionModel& m);

enum class DetectorShape { lorentzian, gaussian };

/// Convolution with a unit-area detector line of FWHM gamma_f. The delta weight
/// is folded into the density; weight leaving the grid moves to tail_weight.
Spectrum detector_convolve(const Spectrum& s, double gamma_f, DetectorShape shape = DetectorShape::lorentzian);

/// a(omega) sampled on a grid as a Spectrum (no delta, no tail).
Spectrum absorption_curve(const AbsorptionModel& m, const OmegaGrid& grid);

/// Header `# delta_weight=... tail_weight=... omega_min=... omega_max=... points=...`
/// then `omega_meV,density` rows in 17-significant-digit scientific notation.
void write_spectrum_csv(const Spectrum& s, const std::string& path);

}  // namespace qwf
