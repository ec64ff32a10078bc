#pragma once

#include <cmath>
#include <utility>

#include <Eigen/Eigenvalues>

#include "qwfluor/types.hpp"

namespace qwf {

/// Gauss-Legendre nodes and weights on [0, 1] (Golub-Welsch).
inline std::pair<RVector, RVector> gauss_legendre_unit(int n) {
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k < n; ++k) {
    const double b = k / std::sqrt(4.0 * k * k - 1.0);
    J(k, k - 1) = b;
    J(k - 1, k) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  RVector nodes = (es.eigenvalues().array() + 1.0) / 2.0;
  RVector weights = es.eigenvectors().row(0).transpose().array().square();  // sums to 1 on [0, 1]
  return {nodes, weights};
}

/// Integral of f over (-inf, lo] and [hi, inf) with lo < 0 < hi, by the
/// substitution omega = edge / u. Suited to integrands decaying like omega^-2 or faster.
template <typename F>
auto integrate_outside(F&& f, double lo, double hi, int order = 64) {
  static thread_local int cached_order = 0;
  static thread_local std::pair<RVector, RVector> rule;
  if (cached_order != order) {
    rule = gauss_legendre_unit(order);
    cached_order = order;
  }
  using R = decltype(f(1.0));
  R sum{};
  for (int k = 0; k < order; ++k) {
    const double u = rule.first(k);
    const double w = rule.second(k);
    sum += w * (hi / (u * u)) * f(hi / u);
    sum += w * (-lo / (u * u)) * f(lo / u);
  }
  return sum;
}

}  // namespace qwf
