#include "qwfluor/fock.hpp"

#include <cmath>
#include <sstream>

namespace qwf {

CMatrix apply(const Liouvillian& L, const CMatrix& X) {
  if (X.rows() != L.fock_dim || X.cols() != L.fock_dim) throw ArgumentError("apply: dimension mismatch");
  return unvec<double>(L.matrix * vec(X), L.fock_dim);
}

DensityMatrix steady_state(const Liouvillian& L) {
  const Eigen::Index d = L.fock_dim;
  const Eigen::Index dd = d * d;
  CMatrix M = L.matrix;
  // Row 0 (the equation for rho(0,0)) becomes the trace functional Tr(rho) = 1.
  M.row(0).setZero();
  for (Eigen::Index i = 0; i < d; ++i) M(0, i + i * d) = 1.0;
  CVector rhs = CVector::Zero(dd);
  rhs(0) = 1.0;

  Eigen::PartialPivLU<CMatrix> lu(M);
  const double rcond = lu.rcond();
  if (!(rcond > 1e-13)) {
    std::ostringstream msg;
    msg << "steady_state: trace-replaced Liouvillian is singular or ill-conditioned (rcond estimate "
        << rcond << "); a unique steady state needs Gamma > 0";
    throw SolverError(msg.str());
  }
  CMatrix rho = unvec<double>(lu.solve(rhs), d);
  rho = (0.5 * (rho + rho.adjoint())).eval();
  rho /= rho.trace().real();

  const double residual = (L.matrix * vec(rho)).cwiseAbs().maxCoeff();
  if (!(residual < 1e-10)) {
    std::ostringstream msg;
    msg << "steady_state: residual |L rho|_inf = " << residual << " exceeds 1e-10 (rcond " << rcond << ")";
    throw SolverError(msg.str());
  }
  return rho;
}

Complex expectation(const DensityMatrix& rho, const OperatorMatrix& O) {
  if (rho.rows() != O.rows() || rho.cols() != O.cols() || rho.rows() != rho.cols()) {
    throw ArgumentError("expectation: dimension mismatch");
  }
  // Tr(O rho) without forming the product.
  return (O.transpose().cwiseProduct(rho)).sum();
}

TruncationChoice choose_truncation(const PhysParams& p, double tol) {
  if (!(tol > 0.0 && tol <= 1e-4)) throw ArgumentError("choose_truncation: tol must lie in (0, 1e-4]");
  TruncationChoice last;
  for (int N = 8; N <= 64; N *= 2) {
    const DensityMatrix rho = steady_state(build_liouvillian(p, N));
    last = {N, std::abs(rho(N, N).real()), std::abs(rho(N - 1, N - 1).real())};
    if (last.top_population < tol && last.next_population < tol) return last;
  }
  std::ostringstream msg;
  msg << "choose_truncation: cap N = 64 reached with top populations " << last.top_population << ", "
      << last.next_population << " (tol " << tol << ")";
  throw TruncationError(msg.str());
}

}  // namespace qwf
