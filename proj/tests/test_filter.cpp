#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qwfluor/pipeline.hpp"

using namespace qwf;

namespace {

PointResult point(PhysParams p, AbsorptionSpec a = {}, NumericsOptions n = {}) {
  PipelineOptions o;
  o.absorption = a;
  o.numerics = n;
  return evaluate_point(p, o);
}

FilterSources sources(const PointResult& r) { return {r.moments.mean_x, &r.emission, &r.c2, r.grids.omega}; }

double rel(Complex a, Complex b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_CASE("coherent amplitude") {
  CHECK(coherent_moment_q(Complex(-0.5, -0.5), AbsorptionModel::constant(1.0)) == Complex(-0.5, -0.5));
  CHECK(std::abs(coherent_moment_q(Complex(-0.5, -0.5), AbsorptionModel::constant(0.25)) - Complex(-0.25, -0.25)) < 1e-16);
  const PointResult r = point(demo_params());
  CHECK(std::arg(r.moments.mean_q) == std::arg(r.moments.mean_x));
  CHECK(std::norm(r.moments.mean_q) == doctest::Approx(r.absorption(0.0) * std::norm(r.moments.mean_x)));
}

TEST_CASE("constant filter scales every moment by c^((m+n)/2)") {
  const PointResult r = point(demo_params());
  const FilterSources src = sources(r);
  const AbsorptionModel one = AbsorptionModel::constant(1.0);
  for (double c : {0.1, 0.5, 1.0}) {
    const AbsorptionModel a = AbsorptionModel::constant(c);
    for (int m = 0; m <= 2; ++m) {
      for (int n = 0; m + n <= 2; ++n) {
        const Complex fx = filtered_moment(m, n, src, one);
        const Complex fq = filtered_moment(m, n, src, a);
        CHECK(rel(fq, std::pow(c, 0.5 * (m + n)) * fx) < 1e-8);
      }
    }
    const PointResult rc = point(demo_params(), AbsorptionSpec{.mode = AbsorptionMode::constant, .constant = c});
    CHECK(std::abs(rc.row.var_q - c * rc.row.var_x) < 1e-8 * std::abs(rc.row.var_x));
  }
  // a == 1 leaves the x moments untouched
  CHECK(rel(filtered_moment(1, 1, src, one), Complex(r.moments.intensity_x)) < 1e-12);
  CHECK(rel(filtered_moment(0, 2, src, one), r.moments.anom_x) < 1e-12);
  CHECK(rel(filtered_moment(1, 0, src, one), std::conj(r.moments.mean_x)) == 0.0);
  CHECK(filtered_moment(0, 0, src, one) == Complex(1.0));
  CHECK_THROWS_AS(filtered_moment(2, 1, src, one), UnsupportedOrderError);
  CHECK_THROWS_AS(filtered_moment(0, 3, src, one), UnsupportedOrderError);
}

TEST_CASE("filtered coherent light stays coherent") {
  PhysParams p = demo_params();
  p.G = 0.0;
  const PointResult r = point(p);
  CHECK(std::abs(r.moments.anom_q - r.moments.mean_q * r.moments.mean_q) < 1e-9);
  CHECK(std::abs(r.moments.intensity_q - std::norm(r.moments.mean_q)) < 1e-9);
}

TEST_CASE("suppression ordering for the demo set") {
  const PointResult r = point(demo_params());
  const auto& m = r.moments;
  double amin = 1.0;
  for (Eigen::Index k = 0; k < r.grids.omega.size; ++k) amin = std::min(amin, r.absorption(r.grids.omega.at(k)));
  CHECK(m.intensity_q < m.intensity_x);
  CHECK(m.intensity_q > amin * m.intensity_x);
  CHECK(std::abs(m.anom_q) < std::abs(m.anom_x));
  CHECK(std::abs(m.anom_q) / std::abs(m.anom_x) > m.intensity_q / m.intensity_x);
  CHECK(m.intensity_q >= std::norm(m.mean_q) - 1e-10);
  CHECK(m.intensity_x >= std::norm(m.mean_x) - 1e-10);
}

TEST_CASE("intensity through the general transform equals the spectrum integral") {
  for (const auto& row : builtin_table().rows()) {
    const PointResult r = point(row.params);
    const double via_spectrum = integrate(qw_spectrum(r.emission, r.absorption));
    const Complex via_transform = filtered_moment(1, 1, sources(r), r.absorption);
    CHECK(std::abs(via_transform.real() - via_spectrum) < 1e-6 * via_spectrum);
    CHECK(std::abs(via_transform.imag()) == 0.0);
  }
}

TEST_CASE("ordering holds for the strongest absorber") {
  const AbsorptionSpec full{.mode = AbsorptionMode::lorentzian, .a_peak = 1.0};
  for (const auto& row : builtin_table().rows()) {
    const PointResult r = point(row.params, full);
    CHECK(r.moments.intensity_q <= r.moments.intensity_x);
    CHECK(std::norm(r.moments.mean_q) <= std::norm(r.moments.mean_x));
  }
}

TEST_CASE("filtered moments are converged in the frequency resolution") {
  const PhysParams p = builtin_table().rows()[1].params;
  NumericsOptions fine;
  fine.grid_points = 2 * fine.grid_points;
  const PointResult a = point(p);
  const PointResult b = point(p, {}, fine);
  CHECK(std::abs(a.moments.intensity_q - b.moments.intensity_q) < 1e-6 * b.moments.intensity_q);
  CHECK(rel(a.moments.anom_q, b.moments.anom_q) < 1e-6);
}

TEST_CASE("anomalous moment needs both lobes on the grid") {
  const PointResult r = point(demo_params());
  const OmegaGrid narrow{-0.05, 0.05, 1025};
  CHECK_THROWS_AS(anomalous_moment_q(r.c2, r.absorption, narrow), GridError);
}

// Reference values from an independent dense-matrix implementation
// (scipy expm, quad), frozen after cross-checking.
TEST_CASE("regression against independent reference values") {
  const PointResult d = point(demo_params());
  CHECK(std::abs(d.moments.mean_x - Complex(-0.4097391707214369, -0.30148885593651065)) < 1e-10);
  CHECK(std::abs(d.moments.intensity_x - 0.30148885593651037) < 1e-10);
  CHECK(std::abs(d.moments.anom_x - Complex(0.08493599274219989, 0.13838949150223873)) < 1e-10);

  const PointResult r = point(builtin_table().rows()[0].params);
  CHECK(r.moments.intensity_x == doctest::Approx(0.1378361371377848).epsilon(1e-10));
  CHECK(r.moments.intensity_q == doctest::Approx(0.03222009892367256).epsilon(1e-8));
  CHECK(r.row.var_x == doctest::Approx(-0.09981843751089013).epsilon(1e-9));
  CHECK(r.row.var_q == doctest::Approx(-0.012827300283601701).epsilon(1e-8));
}
