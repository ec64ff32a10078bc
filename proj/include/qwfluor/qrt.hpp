#pragma once

#include <array>
#include <string>
#include <vector>

#include "qwfluor/fock.hpp"
#include "qwfluor/grid.hpp"

namespace qwf {

enum class CorrelatorKind { adag_a, a_a };

std::string to_string(CorrelatorKind kind);

/// Repeated application of exp(L * step). The exponential is formed once.
class StepPropagator {
 public:
  StepPropagator(const Liouvillian& L, double step);

  double step() const { return step_; }
  const CMatrix& matrix() const { return step_matrix_; }

  /// exp(L tau_k) vec(X0) for every grid point; throws StabilityError on
  /// norm growth beyond 1e6 times the initial norm.
  std::vector<CVector> evolve(const CVector& x0, Eigen::Index steps) const;

  /// Tr(left * exp(L tau_k) X0) for every grid point, without storing states.
  CVector trace_sequence(const CMatrix& left, const CMatrix& x0, Eigen::Index steps) const;

 private:
  Eigen::Index dim_ = 0;
  double step_ = 0.0;
  CMatrix step_matrix_;
};

/// exp(L tau) vec(X0) on a uniform grid starting at 0.
std::vector<CMatrix> evolve_vec(const Liouvillian& L, const CMatrix& x0, const TauGrid& grid);

/// Steady-state two-time correlator on tau >= 0, split into the tau -> infinity
/// constant and the decaying remainder.
struct CorrelationTrace {
  CorrelatorKind kind = CorrelatorKind::adag_a;
  TauGrid grid;
  CVector values;
  Complex asymptote{0.0, 0.0};
  CVector fluct;
  /// d^k fluct / d tau^k at tau = 0+, k = 0..3, from powers of L.
  std::array<Complex, 4> derivatives{};
};

/// <A^dag(0) A(tau)> = Tr[A exp(L tau)(rho A^dag)].
CorrelationTrace correlator_adag_a(const StepPropagator& prop, const Liouvillian& L, const DensityMatrix& rho,
                                   const OperatorMatrix& A, Eigen::Index steps);
CorrelationTrace correlator_adag_a(const Liouvillian& L, const DensityMatrix& rho, const OperatorMatrix& A,
                                   const TauGrid& grid);

/// <A(tau) A(0)> = Tr[A exp(L tau)(A rho)].
CorrelationTrace correlator_a_a(const StepPropagator& prop, const Liouvillian& L, const DensityMatrix& rho,
                                const OperatorMatrix& A, Eigen::Index steps);
CorrelationTrace correlator_a_a(const Liouvillian& L, const DensityMatrix& rho, const OperatorMatrix& A,
                                const TauGrid& grid);

/// CSV dump: tau, Re, Im, Re fluct, Im fluct.
void write_trace_csv(const CorrelationTrace& trace, const std::string& path);

}  // namespace qwf
