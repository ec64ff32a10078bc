#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "qwfluor/errors.hpp"
#include "qwfluor/observables.hpp"

using namespace qwf;

TEST_CASE("coherent and vacuum states sit at the vacuum limit") {
  const Complex alpha(-0.5, -0.5);
  CHECK(std::abs(squeezing_variance(alpha, std::norm(alpha), alpha * alpha)) < 1e-16);
  CHECK(squeezing_variance(0.0, 0.0, 0.0) == 0.0);
  CHECK(std::abs(anomalous_nonclassicality(std::norm(alpha), alpha * alpha)) < 1e-16);
  CHECK(degree_of_coherence(alpha, std::norm(alpha)) == doctest::Approx(1.0));
  CHECK(degree_of_coherence(0.0, 0.0) == 1.0);
}

TEST_CASE("classical and squeezed examples") {
  CHECK(anomalous_nonclassicality(0.3, 0.0) == doctest::Approx(0.3));
  CHECK(squeezing_variance(0.0, 0.3, 0.0) == doctest::Approx(0.6));
  // squeezed vacuum: <A^dag A> = sinh^2 r, <A^2> = -cosh r sinh r
  const double r = 0.4;
  const double v = squeezing_variance(0.0, std::sinh(r) * std::sinh(r), -std::cosh(r) * std::sinh(r));
  CHECK(v == doctest::Approx(std::exp(-2.0 * r) - 1.0));
  CHECK(anomalous_nonclassicality(std::sinh(r) * std::sinh(r), std::cosh(r) * std::sinh(r)) < 0.0);
  CHECK(degree_of_coherence(0.0, 0.5) == 0.0);
  CHECK_THROWS_AS(degree_of_coherence(0.0, -1e-3), ArgumentError);
}

TEST_CASE("variance lower bound for physical states") {
  // For any state |<b^2>|^2 <= n (n + 1) with b = A - <A>, so var > -1.
  // The bound -2 I does not hold in general: weakly squeezed vacuum has
  // var ~ -2 r while I ~ r^2.
  std::mt19937_64 rng(4);
  const int N = 6;
  const CMatrix a = oracle::destroy(N);
  for (int i = 0; i < 300; ++i) {
    const CMatrix rho = oracle::random_density(N + 1, rng);
    const Complex m = (a * rho).trace();
    const double I = (a.adjoint() * a * rho).trace().real();
    const Complex A2 = (a * a * rho).trace();
    CHECK(squeezing_variance(m, I, A2) > -1.0);
    CHECK(degree_of_coherence(m, I) <= 1.0 + 1e-12);
  }
  const double r = 0.05;
  const double n = std::sinh(r) * std::sinh(r);
  CHECK(squeezing_variance(0.0, n, -std::cosh(r) * std::sinh(r)) < -2.0 * n);
}

TEST_CASE("phase wrapping and gaps") {
  CHECK(wrap_phase(kPi) == doctest::Approx(kPi));
  CHECK(wrap_phase(-kPi) == doctest::Approx(kPi));
  CHECK(wrap_phase(kPi + 1e-9) == doctest::Approx(-kPi + 1e-9));
  CHECK(wrap_phase(3.0 * kPi + 0.2) == doctest::Approx(-kPi + 0.2));
  for (double x = -10.0; x < 10.0; x += 0.01) {
    const double w = wrap_phase(x);
    CHECK(w > -kPi);
    CHECK(w <= kPi);
    CHECK(std::abs(std::remainder(w - x, 2.0 * kPi)) < 1e-12);
  }
  const Complex m = std::polar(0.5, 3.0);
  const PhaseReport same = phase_report(m, m * m, m * m * 0.2);
  CHECK(same.gap_x == doctest::Approx(0.0));
  CHECK(same.gap_q == doctest::Approx(0.0));
  // gaps use the shortest arc across the branch cut
  const PhaseReport cut = phase_report(std::polar(1.0, kPi / 2 - 0.01), std::polar(1.0, -kPi + 0.03), 1.0);
  CHECK(cut.gap_x == doctest::Approx(0.05));
  CHECK_THROWS_AS(phase_report(0.0, 1.0, 1.0), ArgumentError);
}

TEST_CASE("observable row") {
  MomentSet m;
  m.mean_x = Complex(-0.4, -0.3);
  m.intensity_x = 0.3;
  m.anom_x = Complex(0.08, 0.14);
  m.mean_q = 0.5 * m.mean_x;
  m.intensity_q = 0.07;
  m.anom_q = Complex(0.02, 0.03);
  const ObservableRow r = observe(120.0, m);
  CHECK(r.pump_uw == 120.0);
  CHECK(r.var_x == doctest::Approx(squeezing_variance(m.mean_x, m.intensity_x, m.anom_x)));
  CHECK(r.ncl_q == doctest::Approx(0.07 - std::abs(m.anom_q)));
  CHECK(r.dcoh_x == doctest::Approx(0.25 / 0.3));
  CHECK_FALSE(r.coherence_clipped);

  MomentSet vac;
  const ObservableRow v = observe(0.0, vac);
  CHECK(std::isnan(v.phases.gap_x));
  CHECK(v.dcoh_x == 1.0);
}

TEST_CASE("zero crossing location") {
  std::vector<double> x, y, neg, pos;
  for (int i = 0; i <= 20; ++i) {
    x.push_back(100.0 + 10.0 * i);
    const double t = x.back();
    y.push_back((t - 187.3) * (1.0 + 0.001 * t));
    neg.push_back(-1.0 - t);
    pos.push_back(1.0 + t);
  }
  const ZeroCrossing z = locate_zero_crossing(x, y, 0.1);
  REQUIRE(z.state == ZeroCrossing::State::crossing);
  CHECK(std::abs(z.pump_uw - 187.3) < 0.1);
  CHECK(locate_zero_crossing(x, neg, 0.1).state == ZeroCrossing::State::always_negative);
  CHECK(locate_zero_crossing(x, pos, 0.1).state == ZeroCrossing::State::always_positive);
  CHECK(to_string(ZeroCrossing::State::crossing) == "crossing");
}
