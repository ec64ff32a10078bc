#include "qwfluor/spectra.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <unsupported/Eigen/FFT>

#include "qwfluor/errors.hpp"
#include "qwfluor/quadrature.hpp"

namespace qwf {

Complex susceptibility(double omega, const PhysParams& p) {
  return p.f / Complex(omega - p.delta, -p.gamma / 2.0);
}

std::string to_string(AbsorptionMode mode) {
  switch (mode) {
    case AbsorptionMode::thin_sheet: return "thin_sheet";
    case AbsorptionMode::lorentzian: return "lorentzian";
    case AbsorptionMode::constant: return "constant";
  }
  return "unknown";
}

AbsorptionModel AbsorptionModel::thin_sheet(const PhysParams& p, std::optional<double> kappa) {
  validate(p);
  const double k = kappa.value_or(p.gamma / (4.0 * p.f));
  if (!(k > 0.0)) throw ModelError("thin_sheet absorption: kappa must be > 0");
  const double x = k * p.f;
  if (!(x < p.gamma / 2.0)) {
    throw ModelError("thin_sheet absorption: kappa f = " + std::to_string(x) + " must stay below Gamma/2 = " +
                     std::to_string(p.gamma / 2.0) + " or a(omega) turns negative");
  }
  const double peak = 4.0 * x / p.gamma * (1.0 - 2.0 * x / p.gamma);
  return {AbsorptionMode::thin_sheet, k, peak, p};
}

AbsorptionModel AbsorptionModel::lorentzian(const PhysParams& p, double a_peak) {
  validate(p);
  if (!(a_peak > 0.0 && a_peak <= 1.0)) throw ModelError("lorentzian absorption: a_peak must lie in (0, 1]");
  return {AbsorptionMode::lorentzian, 0.0, a_peak, p};
}

AbsorptionModel AbsorptionModel::constant(double c) {
  if (!(c >= 0.0 && c <= 1.0)) throw ModelError("constant absorption: c must lie in [0, 1]");
  return {AbsorptionMode::constant, 0.0, c, PhysParams{}};
}

double AbsorptionModel::operator()(double omega) const {
  if (mode_ == AbsorptionMode::constant) return peak_;
  const double hw = params_.gamma / 2.0;
  const double x = omega - params_.delta;
  return peak_ * hw * hw / (x * x + hw * hw);
}

RArray AbsorptionModel::operator()(const RArray& omega) const {
  return omega.unaryExpr([this](double w) { return (*this)(w); });
}

double AbsorptionModel::pair_weight(double omega) const {
  return std::sqrt((*this)(omega) * (*this)(-omega));
}

Complex AbsorptionModel::reflection(double omega) const {
  if (mode_ != AbsorptionMode::thin_sheet) throw ModelError("reflection: only defined for thin_sheet absorption");
  return Complex(0.0, kappa_) * susceptibility(omega, params_);
}

Complex AbsorptionModel::transmission(double omega) const { return 1.0 + reflection(omega); }

double PowerTail::weight_outside(double lo, double hi) const {
  if (!(lo < 0.0 && hi > 0.0)) throw GridError("PowerTail: grid must straddle omega = 0");
  // int_hi^inf w^-k = hi^(1-k)/(k-1); int_-inf^lo w^-k = lo^(1-k)/(1-k)
  double sum = 0.0;
  const double c[3] = {c2, c3, c4};
  for (int k = 2; k <= 4; ++k) {
    sum += c[k - 2] * (std::pow(hi, 1 - k) / (k - 1) + std::pow(lo, 1 - k) / (1 - k));
  }
  return sum;
}

double integrate(const Spectrum& s) {
  return trapezoid(s.density.matrix(), s.grid.step()) + s.tail_weight + s.delta_weight;
}

CVector half_fourier(const CorrelationTrace& trace, const OmegaGrid& grid, int sign) {
  if (sign != 1 && sign != -1) throw ArgumentError("half_fourier: sign must be +1 or -1");
  const double dtau = trace.grid.step;
  const double domega = grid.step();
  const double n_real = 2.0 * kPi / (dtau * domega);
  const auto n = static_cast<Eigen::Index>(std::llround(n_real));
  if (std::abs(n_real - static_cast<double>(n)) > 1e-6 * n_real) {
    throw GridError("half_fourier: tau and omega grids are not commensurate (use make_grids)");
  }
  const Eigen::Index m = trace.fluct.size();
  if (n < m || n < grid.size) throw GridError("half_fourier: padded length shorter than the trace or grid");

  // Negative sign: int e^{-i w t} F = conj(int e^{+i w t} conj(F)).
  auto pick = [sign](Complex z) { return sign > 0 ? z : std::conj(z); };

  // g_j = w_j F_j e^{i lo tau_j}; S_k = sum_j g_j e^{2 pi i j k / n} = conj(FFT(conj(g)))_k
  std::vector<Complex> g(static_cast<std::size_t>(n), Complex(0.0, 0.0));
  for (Eigen::Index j = 0; j < m; ++j) {
    const double w = (j == 0 || j == m - 1) ? 0.5 : 1.0;
    g[static_cast<std::size_t>(j)] = std::conj(w * pick(trace.fluct(j)) * std::polar(1.0, grid.lo * trace.grid.at(j)));
  }
  std::vector<Complex> spec;
  Eigen::FFT<double> fft;
  fft.fwd(spec, g);

  std::array<Complex, 4> d;
  for (std::size_t k = 0; k < d.size(); ++k) d[k] = pick(trace.derivatives[k]);

  CVector out(grid.size);
  for (Eigen::Index k = 0; k < grid.size; ++k) {
    const double w = grid.at(k);
    const Complex iw(0.0, w);
    // g'(0) and g'''(0) for g = e^{i w tau} F(tau); the tau_max end has decayed.
    const Complex g1 = iw * d[0] + d[1];
    const Complex g3 = iw * iw * iw * d[0] + 3.0 * iw * iw * d[1] + 3.0 * iw * d[2] + d[3];
    const Complex trap = dtau * std::conj(spec[static_cast<std::size_t>(k)]);
    out(k) = trap + dtau * dtau / 12.0 * g1 - std::pow(dtau, 4) / 720.0 * g3;
  }
  if (sign < 0) out = out.conjugate().eval();
  return out;
}

Spectrum emission_spectrum(const CorrelationTrace& c1, const OmegaGrid& grid) {
  if (c1.kind != CorrelatorKind::adag_a) throw ArgumentError("emission_spectrum: needs an adag_a trace");
  if (!(grid.lo < 0.0 && grid.hi > 0.0)) throw GridError("emission_spectrum: grid must straddle the laser frequency");

  Spectrum s;
  s.grid = grid;
  s.delta_weight = c1.asymptote.real();
  s.moment = c1.values(0).real();
  s.density = half_fourier(c1, grid).real().array() / kPi;
  for (Eigen::Index k = 0; k < s.density.size(); ++k) {
    if (s.density(k) < -1e-10) {
      s.density(k) = 0.0;
      ++s.clipped;
    }
  }
  // (1/pi) Re[i F0/w - F1/w^2 - i F2/w^3 + F3/w^4]; F0 is real for this trace.
  const auto& d = c1.derivatives;
  s.tail = PowerTail{-d[1].real() / kPi, d[2].imag() / kPi, d[3].real() / kPi};
  s.tail_weight = s.tail->weight_outside(grid.lo, grid.hi);

  const double total = integrate(s);
  if (!(std::abs(total - *s.moment) <= 1e-4 * std::abs(*s.moment) + 1e-14)) {
    std::ostringstream msg;
    msg << "emission_spectrum: spectral leakage, integral " << total << " vs <A^dag A> = " << *s.moment
        << "; enlarge qrt.tau_max_gamma or spectra.window_gamma";
    throw GridError(msg.str());
  }
  return s;
}

Spectrum qw_spectrum(const Spectrum& sx, const AbsorptionModel& m) {
  Spectrum s;
  s.grid = sx.grid;
  const RArray a = m(sx.grid.points());
  s.density = a * sx.density;
  s.delta_weight = m(0.0) * sx.delta_weight;
  s.tail_weight = m.asymptote() * sx.tail_weight;
  if (sx.tail) {
    const PowerTail tail = *sx.tail;
    s.tail_weight += integrate_outside([&](double w) { return (m(w) - m.asymptote()) * tail(w); }, sx.grid.lo, sx.grid.hi);
  } else if (m.mode() != AbsorptionMode::constant) {
    throw ArgumentError("qw_spectrum: source spectrum carries no tail model");
  }
  return s;
}

Spectrum detector_convolve(const Spectrum& s, double gamma_f, DetectorShape shape) {
  if (!(gamma_f > 0.0)) throw ArgumentError("detector_convolve: gamma_f must be > 0");
  const double dw = s.grid.step();
  if (!(dw < gamma_f / 4.0)) {
    throw GridError("detector_convolve: grid spacing " + std::to_string(dw) + " meV is not below gamma_f/4");
  }
  const double hw = gamma_f / 2.0;
  const double sigma = gamma_f / (2.0 * std::sqrt(2.0 * std::log(2.0)));
  auto kernel = [&](double x) {
    if (shape == DetectorShape::lorentzian) return hw / (kPi * (x * x + hw * hw));
    return std::exp(-x * x / (2.0 * sigma * sigma)) / (sigma * std::sqrt(2.0 * kPi));
  };
  auto cdf = [&](double x) {
    if (shape == DetectorShape::lorentzian) return 0.5 + std::atan(x / hw) / kPi;
    return 0.5 * (1.0 + std::erf(x / (sigma * std::sqrt(2.0))));
  };
  auto inside = [&](double w0) { return cdf(s.grid.hi - w0) - cdf(s.grid.lo - w0); };

  const Eigen::Index n = s.grid.size;
  Eigen::Index len = 1;
  while (len < 2 * n) len *= 2;

  // Linear convolution: out_i = sum_j K((i - j) dw) mass_j
  std::vector<Complex> mass(static_cast<std::size_t>(len), Complex(0.0, 0.0));
  std::vector<Complex> ker(static_cast<std::size_t>(len), Complex(0.0, 0.0));
  Spectrum out;
  out.grid = s.grid;
  out.tail_weight = s.tail_weight;
  for (Eigen::Index j = 0; j < n; ++j) {
    const double w = (j == 0 || j == n - 1) ? 0.5 : 1.0;
    const double mj = w * dw * s.density(j);
    mass[static_cast<std::size_t>(j)] = mj;
    out.tail_weight += mj * (1.0 - inside(s.grid.at(j)));
  }
  for (Eigen::Index k = 0; k < n; ++k) {
    ker[static_cast<std::size_t>(k)] = kernel(static_cast<double>(k) * dw);
    if (k > 0) ker[static_cast<std::size_t>(len - k)] = kernel(-static_cast<double>(k) * dw);
  }
  Eigen::FFT<double> fft;
  std::vector<Complex> fm, fk, prod(static_cast<std::size_t>(len));
  fft.fwd(fm, mass);
  fft.fwd(fk, ker);
  for (std::size_t i = 0; i < prod.size(); ++i) prod[i] = fm[i] * fk[i];
  std::vector<Complex> conv;
  fft.inv(conv, prod);

  out.density.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    out.density(i) = conv[static_cast<std::size_t>(i)].real() + s.delta_weight * kernel(s.grid.at(i));
  }
  out.tail_weight += s.delta_weight * (1.0 - inside(0.0));
  out.delta_weight = 0.0;
  out.moment = s.moment;
  return out;
}

Spectrum absorption_curve(const AbsorptionModel& m, const OmegaGrid& grid) {
  Spectrum s;
  s.grid = grid;
  s.density = m(grid.points());
  return s;
}

void write_spectrum_csv(const Spectrum& s, const std::string& path) {
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw ArgumentError("cannot write '" + path + "'");
  std::fprintf(f, "# delta_weight=%.16e tail_weight=%.16e omega_min=%.16e omega_max=%.16e points=%lld\n",
               s.delta_weight, s.tail_weight, s.grid.lo, s.grid.hi, static_cast<long long>(s.grid.size));
  std::fprintf(f, "omega_meV,density\n");
  for (Eigen::Index k = 0; k < s.grid.size; ++k) {
    std::fprintf(f, "%.16e,%.16e\n", s.grid.at(k), s.density(k));
  }
  std::fclose(f);
}

}  // namespace qwf
