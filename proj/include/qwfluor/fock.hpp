#pragma once

#include <unsupported/Eigen/KroneckerProduct>

#include "qwfluor/errors.hpp"
#include "qwfluor/model.hpp"
#include "qwfluor/types.hpp"

namespace qwf {

using OperatorMatrix = CMatrix;
using DensityMatrix = CMatrix;

/// Lindblad generator acting on column-major vectorized matrices,
/// vec(X)[i + j*dim] = X(i, j), so that vec(A X B) = (B^T kron A) vec(X).
template <typename Scalar>
struct LiouvillianT {
  Eigen::Index fock_dim = 0;
  CMatrixT<Scalar> matrix;
};
using Liouvillian = LiouvillianT<double>;

/// Bosonic annihilation operator on Fock levels 0..N.
template <typename Scalar = double>
CMatrixT<Scalar> annihilation(int N) {
  if (N < 1) throw ArgumentError("annihilation: truncation N must be >= 1");
  CMatrixT<Scalar> a = CMatrixT<Scalar>::Zero(N + 1, N + 1);
  for (int n = 1; n <= N; ++n) a(n - 1, n) = std::sqrt(Scalar(n));
  return a;
}

/// H = delta A^dag A + Omega_R (A + A^dag) + G A^dag^2 A^2 in the laser frame.
template <typename Scalar = double>
CMatrixT<Scalar> build_hamiltonian(const PhysParams& p, int N) {
  validate(p);
  const CMatrixT<Scalar> a = annihilation<Scalar>(N);
  const CMatrixT<Scalar> ad = a.adjoint();
  const CMatrixT<Scalar> n = ad * a;
  const CMatrixT<Scalar> pair = ad * ad * a * a;
  return Scalar(p.delta) * n + Scalar(p.omega_r) * (a + ad) + Scalar(p.G) * pair;
}

/// L X = -i[H, X] + gamma/2 (2 J X J^dag - J^dag J X - X J^dag J), no validation.
template <typename Scalar = double>
LiouvillianT<Scalar> liouvillian(const CMatrixT<Scalar>& H, const CMatrixT<Scalar>& jump, Scalar gamma) {
  using C = ComplexOf<Scalar>;
  const Eigen::Index d = H.rows();
  const CMatrixT<Scalar> id = CMatrixT<Scalar>::Identity(d, d);
  const CMatrixT<Scalar> jj = jump.adjoint() * jump;
  const C minus_i(0, -1);

  CMatrixT<Scalar> L = minus_i * (Eigen::kroneckerProduct(id, H).eval() - Eigen::kroneckerProduct(H.transpose(), id).eval());
  L += gamma * Eigen::kroneckerProduct(jump.conjugate(), jump).eval();
  L -= (gamma / 2) * Eigen::kroneckerProduct(id, jj).eval();
  L -= (gamma / 2) * Eigen::kroneckerProduct(jj.transpose(), id).eval();
  return {d, std::move(L)};
}

template <typename Scalar = double>
LiouvillianT<Scalar> build_liouvillian(const PhysParams& p, int N) {
  return liouvillian<Scalar>(build_hamiltonian<Scalar>(p, N), annihilation<Scalar>(N), Scalar(p.gamma));
}

template <typename Derived>
CVectorT<typename Derived::RealScalar> vec(const Eigen::MatrixBase<Derived>& X) {
  using Scalar = typename Derived::RealScalar;
  CMatrixT<Scalar> copy = X;
  return Eigen::Map<const CVectorT<Scalar>>(copy.data(), copy.size());
}

template <typename Scalar>
CMatrixT<Scalar> unvec(const CVectorT<Scalar>& v, Eigen::Index dim) {
  if (v.size() != dim * dim) throw ArgumentError("unvec: length is not dim^2");
  return Eigen::Map<const CMatrixT<Scalar>>(v.data(), dim, dim);
}

/// Applies L to X in matrix form.
CMatrix apply(const Liouvillian& L, const CMatrix& X);

/// Unique steady state via trace-row replacement and one LU solve.
DensityMatrix steady_state(const Liouvillian& L);

/// Tr(O rho).
Complex expectation(const DensityMatrix& rho, const OperatorMatrix& O);

struct TruncationChoice {
  int N = 0;
  double top_population = 0.0;   ///< population of level N
  double next_population = 0.0;  ///< population of level N-1
};

/// Smallest N in {8, 16, 32, 64} whose steady state leaves both top Fock
/// populations below tol. Throws TruncationError at the cap.
TruncationChoice choose_truncation(const PhysParams& p, double tol);

}  // namespace qwf
