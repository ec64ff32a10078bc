#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "qwfluor/grid.hpp"
#include "qwfluor/qrt.hpp"

using namespace qwf;

namespace {

PhysParams random_params(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  PhysParams p;
  p.G = 0.5 * u(rng);
  p.omega_r = 0.3 * u(rng);
  p.delta = u(rng) - 0.5;
  p.gamma = 0.1 + 0.3 * u(rng);
  return p;
}

TauGrid default_tau(const PhysParams& p) { return make_grids(p, NumericsOptions{}).tau; }

}  // namespace

TEST_CASE("propagation starts at the initial condition and keeps the steady state") {
  const PhysParams p = demo_params();
  const Liouvillian L = build_liouvillian(p, 8);
  const DensityMatrix rho = steady_state(L);
  std::mt19937_64 rng(1);
  const CMatrix x0 = oracle::random_hermitian(9, rng);
  const auto seq = evolve_vec(L, x0, TauGrid{0.1, 5});
  CHECK(seq.front() == x0);
  CHECK(evolve_vec(L, x0, TauGrid{0.1, 1}).front() == x0);

  const auto fixed = evolve_vec(L, rho, TauGrid{0.25, 400});
  double worst = 0.0;
  for (const auto& m : fixed) worst = std::max(worst, (m - rho).cwiseAbs().maxCoeff());
  CHECK(worst < 1e-10);
}

TEST_CASE("stepped correlators match per-point exponentials (N = 3)") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    std::mt19937_64 rng(seed);
    const PhysParams p = random_params(rng);
    const int N = 3;
    const Liouvillian L = build_liouvillian(p, N);
    const DensityMatrix rho = steady_state(L);
    const CMatrix a = oracle::destroy(N);
    const TauGrid grid = default_tau(p);
    const CorrelationTrace c1 = correlator_adag_a(L, rho, a, grid);
    const CorrelationTrace c2 = correlator_a_a(L, rho, a, grid);
    const oracle::EigenExp ex(L.matrix);
    const CVector row = vec(CMatrix(a.transpose()));
    const CVector x1 = vec(CMatrix(rho * a.adjoint()));
    const CVector x2 = vec(CMatrix(a * rho));
    double worst = 0.0;
    for (Eigen::Index k = 0; k < grid.size; k += 7) {
      worst = std::max(worst, std::abs(c1.values(k) - Complex(row.transpose() * ex.apply(x1, grid.at(k)))));
      worst = std::max(worst, std::abs(c2.values(k) - Complex(row.transpose() * ex.apply(x2, grid.at(k)))));
    }
    CHECK(worst < 1e-9);
  }
}

TEST_CASE("propagation agrees with an adaptive Runge-Kutta integration") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 3; ++trial) {
    const PhysParams p = random_params(rng);
    const int N = 4;
    const Liouvillian L = build_liouvillian(p, N);
    const CMatrix H = oracle::hamiltonian(p.G, p.omega_r, p.delta, N);
    const CMatrix a = oracle::destroy(N);
    const CMatrix x0 = oracle::random_density(N + 1, rng);
    const TauGrid grid{0.5, 41};
    const auto seq = evolve_vec(L, x0, grid);
    for (Eigen::Index k : {Eigen::Index(3), Eigen::Index(17), Eigen::Index(40)}) {
      const CMatrix ref = oracle::dormand_prince([&](const CMatrix& x) { return oracle::lindblad(H, a, p.gamma, x); }, x0,
                                                 grid.at(k), 1e-12, 1e-14);
      CHECK((seq[static_cast<std::size_t>(k)] - ref).cwiseAbs().maxCoeff() < 1e-10 * std::max(1.0, ref.cwiseAbs().maxCoeff()));
    }
  }
}

TEST_CASE("correlators reduce to equal-time moments and factorize at long times") {
  for (const auto& row : builtin_table().rows()) {
    const PhysParams& p = row.params;
    const int N = choose_truncation(p, 1e-10).N;
    const Liouvillian L = build_liouvillian(p, N);
    const DensityMatrix rho = steady_state(L);
    const CMatrix a = annihilation(N);
    const TauGrid grid = default_tau(p);
    const CorrelationTrace c1 = correlator_adag_a(L, rho, a, grid);
    const CorrelationTrace c2 = correlator_a_a(L, rho, a, grid);
    const Complex m = expectation(rho, a);
    CHECK(std::abs(c1.values(0) - expectation(rho, CMatrix(a.adjoint() * a))) < 1e-10);
    CHECK(std::abs(c2.values(0) - expectation(rho, CMatrix(a * a))) < 1e-10);
    CHECK(std::abs(c1.asymptote - std::norm(m)) < 1e-10);
    CHECK(std::abs(c2.asymptote - m * m) < 1e-10);
    for (const auto* c : {&c1, &c2}) {
      CHECK(c->kind == (c == &c1 ? CorrelatorKind::adag_a : CorrelatorKind::a_a));
      CHECK((c->fluct - (c->values.array() - c->asymptote).matrix()).cwiseAbs().maxCoeff() == 0.0);
      const double tail = std::abs(c->values(grid.size - 1) - c->asymptote);
      CHECK(tail < 1e-8 * (std::abs(c->values(0) - c->asymptote) + 1e-300));
      CHECK(std::abs(c->derivatives[0] - c->fluct(0)) == 0.0);
      // first derivative against a one-sided difference, error h^2 F'''/3
      const double h = grid.step;
      const Complex fd = (-3.0 * c->fluct(0) + 4.0 * c->fluct(1) - c->fluct(2)) / (2.0 * h);
      CHECK(std::abs(fd - c->derivatives[1]) < 0.5 * h * h * std::abs(c->derivatives[3]) + 1e-12);
    }
  }
}

TEST_CASE("linear oscillator has no fluctuations and vacuum has no signal") {
  PhysParams p = demo_params();
  p.G = 0.0;
  const int N = 24;
  Liouvillian L = build_liouvillian(p, N);
  DensityMatrix rho = steady_state(L);
  CMatrix a = annihilation(N);
  const TauGrid grid = default_tau(p);
  CHECK(correlator_adag_a(L, rho, a, grid).fluct.cwiseAbs().maxCoeff() < 1e-9);
  const CorrelationTrace c2 = correlator_a_a(L, rho, a, grid);
  CHECK(c2.fluct.cwiseAbs().maxCoeff() < 1e-9);
  CHECK(std::abs(c2.asymptote - Complex(0.0, 0.5)) < 1e-8);  // (-0.5 - 0.5i)^2

  p = demo_params();
  p.omega_r = 0.0;
  L = build_liouvillian(p, 8);
  rho = steady_state(L);
  a = annihilation(8);
  CHECK(correlator_adag_a(L, rho, a, grid).values.cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("failure modes") {
  const PhysParams p = demo_params();
  const Liouvillian L = build_liouvillian(p, 8);
  const DensityMatrix rho = steady_state(L);
  const CMatrix a = annihilation(8);
  CHECK_THROWS_AS(correlator_adag_a(L, rho, a, TauGrid{0.25, 40}), GridError);
  CHECK_THROWS_AS(StepPropagator(L, 0.0), ArgumentError);

  const Liouvillian gain = liouvillian<double>(build_hamiltonian(p, 8), annihilation(8), -0.5);
  std::mt19937_64 rng(5);
  const CMatrix x0 = oracle::random_density(9, rng);
  CHECK_THROWS_AS(evolve_vec(gain, x0, TauGrid{0.5, 2000}), StabilityError);
}
