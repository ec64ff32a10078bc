#include "qwfluor/filter.hpp"

#include <cmath>

#include "qwfluor/errors.hpp"
#include "qwfluor/quadrature.hpp"

namespace qwf {

Complex coherent_moment_q(Complex mean_x, const AbsorptionModel& m) { return std::sqrt(m(0.0)) * mean_x; }

double intensity_q(const Spectrum& sx, const AbsorptionModel& m) {
  if (!sx.moment || !sx.tail) throw ArgumentError("intensity_q: needs an unfiltered emission spectrum");
  const double a_inf = m.asymptote();
  const RArray varying = m(sx.grid.points()) - a_inf;
  const PowerTail tail = *sx.tail;
  const double incoherent = *sx.moment - sx.delta_weight;
  const double inner = trapezoid((varying * sx.density).matrix(), sx.grid.step());
  const double outer = integrate_outside([&](double w) { return (m(w) - a_inf) * tail(w); }, sx.grid.lo, sx.grid.hi);
  return a_inf * incoherent + inner + outer + m(0.0) * sx.delta_weight;
}

Complex anomalous_moment_q(const CorrelationTrace& c2, const AbsorptionModel& m, const OmegaGrid& grid) {
  if (c2.kind != CorrelatorKind::a_a) throw ArgumentError("anomalous_moment_q: needs an a_a trace");
  if (m.mode() != AbsorptionMode::constant) {
    const double d = std::abs(m.params().delta);
    if (!(grid.lo < -d && grid.hi > d)) {
      throw GridError("anomalous_moment_q: frequency grid must cover both lobes at +-delta");
    }
  }
  const double w_inf = m.asymptote();  // sqrt(c * c) for a constant filter
  const CVector cosine = 0.5 * (half_fourier(c2, grid, +1) + half_fourier(c2, grid, -1));
  const RArray pair = grid.points().unaryExpr([&](double w) { return m.pair_weight(w) - w_inf; });
  const Complex inner = trapezoid((pair.cast<Complex>() * cosine.array()).matrix(), grid.step());

  // int_0^inf cos(w t) F dt ~ -F'(0)/w^2 + F'''(0)/w^4
  const Complex f1 = c2.derivatives[1];
  const Complex f3 = c2.derivatives[3];
  const Complex outer = integrate_outside(
      [&](double w) {
        const double u = 1.0 / w;
        return (m.pair_weight(w) - w_inf) * (-f1 * u * u + f3 * u * u * u * u);
      },
      grid.lo, grid.hi);

  return m(0.0) * c2.asymptote + w_inf * c2.derivatives[0] + (inner + outer) / kPi;
}

Complex filtered_moment(int creators, int annihilators, const FilterSources& src, const AbsorptionModel& m) {
  if (creators < 0 || annihilators < 0) throw ArgumentError("filtered_moment: orders must be >= 0");
  if (creators + annihilators > 2) {
    throw UnsupportedOrderError("filtered_moment: only total operator order m + n <= 2 is implemented (got " +
                                std::to_string(creators + annihilators) + ")");
  }
  auto need_emission = [&] {
    if (!src.emission) throw ArgumentError("filtered_moment: intensity needs the emission spectrum");
    return *src.emission;
  };
  auto need_anomalous = [&] {
    if (!src.anomalous) throw ArgumentError("filtered_moment: anomalous moment needs the a_a correlator");
    return anomalous_moment_q(*src.anomalous, m, src.grid);
  };
  switch (creators * 3 + annihilators) {
    case 0: return 1.0;
    case 1: return coherent_moment_q(src.mean_x, m);
    case 3: return std::conj(coherent_moment_q(src.mean_x, m));
    case 4: return intensity_q(need_emission(), m);
    case 2: return need_anomalous();
    case 6: return std::conj(need_anomalous());
  }
  throw UnsupportedOrderError("filtered_moment: unreachable order");
}

}  // namespace qwf
