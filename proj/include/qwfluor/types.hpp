#pragma once

#include <complex>

#include <Eigen/Dense>

namespace qwf {

template <typename Scalar>
using ComplexOf = std::complex<Scalar>;

/// Dense complex matrix on the truncated Fock space (or its vectorized square).
template <typename Scalar>
using CMatrixT = Eigen::Matrix<ComplexOf<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using CVectorT = Eigen::Matrix<ComplexOf<Scalar>, Eigen::Dynamic, 1>;

using Complex = ComplexOf<double>;
using CMatrix = CMatrixT<double>;
using CVector = CVectorT<double>;
using RVector = Eigen::VectorXd;
using RArray = Eigen::ArrayXd;

inline constexpr double kPi = 3.14159265358979323846;

/// hbar / meV in picoseconds. Times are kept in hbar/meV internally.
inline constexpr double kHbarPerMevPs = 0.6582119569;

}  // namespace qwf
