#include "qwfluor/qrt.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

#include <unsupported/Eigen/MatrixFunctions>

namespace qwf {

std::string to_string(CorrelatorKind kind) { return kind == CorrelatorKind::adag_a ? "adag_a" : "a_a"; }

StepPropagator::StepPropagator(const Liouvillian& L, double step) : dim_(L.fock_dim), step_(step) {
  if (!(step > 0.0)) throw ArgumentError("StepPropagator: step must be > 0");
  step_matrix_ = (L.matrix * Complex(step, 0.0)).exp();
}

std::vector<CVector> StepPropagator::evolve(const CVector& x0, Eigen::Index steps) const {
  if (x0.size() != step_matrix_.cols()) throw ArgumentError("StepPropagator::evolve: dimension mismatch");
  std::vector<CVector> out;
  out.reserve(static_cast<std::size_t>(steps));
  const double limit = 1e6 * std::max(x0.norm(), 1e-300);
  CVector v = x0;
  for (Eigen::Index k = 0; k < steps; ++k) {
    if (k > 0) {
      v = step_matrix_ * v;
      if (!(v.norm() <= limit)) {
        throw StabilityError("StepPropagator: state norm grew beyond 1e6 x initial at step " + std::to_string(k));
      }
    }
    out.push_back(v);
  }
  return out;
}

CVector StepPropagator::trace_sequence(const CMatrix& left, const CMatrix& x0, Eigen::Index steps) const {
  if (left.rows() != dim_ || x0.rows() != dim_) throw ArgumentError("trace_sequence: dimension mismatch");
  // Tr(left Y) = vec(left^T) . vec(Y)
  const CVector row = vec(left.transpose());
  const double limit = 1e6 * std::max(x0.norm(), 1e-300);
  CVector v = vec(x0);
  CVector tmp(v.size());
  CVector out(steps);
  for (Eigen::Index k = 0; k < steps; ++k) {
    if (k > 0) {
      tmp.noalias() = step_matrix_ * v;
      v.swap(tmp);
      if (!(v.norm() <= limit)) {
        throw StabilityError("StepPropagator: state norm grew beyond 1e6 x initial at step " + std::to_string(k));
      }
    }
    out(k) = row.transpose() * v;
  }
  return out;
}

std::vector<CMatrix> evolve_vec(const Liouvillian& L, const CMatrix& x0, const TauGrid& grid) {
  if (grid.size < 1) throw ArgumentError("evolve_vec: empty grid");
  std::vector<CMatrix> out;
  if (grid.size == 1) {
    out.push_back(x0);
    return out;
  }
  const StepPropagator prop(L, grid.step);
  for (const auto& v : prop.evolve(vec(x0), grid.size)) out.push_back(unvec<double>(v, L.fock_dim));
  return out;
}

namespace {

CorrelationTrace make_trace(CorrelatorKind kind, const StepPropagator& prop, const Liouvillian& L,
                            const OperatorMatrix& A, const CMatrix& x0, Complex asymptote, Eigen::Index steps) {
  if (steps < 2) throw GridError("correlator: tau grid needs at least 2 points");
  CorrelationTrace t;
  t.kind = kind;
  t.grid = {prop.step(), steps};
  t.values = prop.trace_sequence(A, x0, steps);
  t.asymptote = asymptote;
  t.fluct = t.values.array() - asymptote;

  const CVector row = vec(A.transpose());
  CVector v = vec(x0);
  t.derivatives[0] = t.fluct(0);
  for (std::size_t k = 1; k < t.derivatives.size(); ++k) {
    v = (L.matrix * v).eval();
    t.derivatives[k] = row.transpose() * v;
  }

  const double peak = t.fluct.cwiseAbs().maxCoeff();
  const double tail = std::abs(t.fluct(steps - 1));
  // Round-off floor: each step of the propagator adds a few ulps of drift.
  const double floor = 4.0 * static_cast<double>(steps) * std::numeric_limits<double>::epsilon() *
                       t.values.cwiseAbs().maxCoeff();
  if (!(tail <= 1e-8 * peak + floor)) {
    std::ostringstream msg;
    msg << "correlator " << to_string(kind) << ": fluctuation not decayed at tau_max = " << t.grid.span()
        << " (|tail|/max = " << tail / peak << " > 1e-8); increase qrt.tau_max_gamma";
    throw GridError(msg.str());
  }
  return t;
}

}  // namespace

CorrelationTrace correlator_adag_a(const StepPropagator& prop, const Liouvillian& L, const DensityMatrix& rho,
                                   const OperatorMatrix& A, Eigen::Index steps) {
  const Complex mean = expectation(rho, A);
  return make_trace(CorrelatorKind::adag_a, prop, L, A, rho * A.adjoint(), std::norm(mean), steps);
}

CorrelationTrace correlator_adag_a(const Liouvillian& L, const DensityMatrix& rho, const OperatorMatrix& A,
                                   const TauGrid& grid) {
  return correlator_adag_a(StepPropagator(L, grid.step), L, rho, A, grid.size);
}

CorrelationTrace correlator_a_a(const StepPropagator& prop, const Liouvillian& L, const DensityMatrix& rho,
                                const OperatorMatrix& A, Eigen::Index steps) {
  const Complex mean = expectation(rho, A);
  return make_trace(CorrelatorKind::a_a, prop, L, A, A * rho, mean * mean, steps);
}

CorrelationTrace correlator_a_a(const Liouvillian& L, const DensityMatrix& rho, const OperatorMatrix& A,
                                const TauGrid& grid) {
  return correlator_a_a(StepPropagator(L, grid.step), L, rho, A, grid.size);
}

void write_trace_csv(const CorrelationTrace& trace, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ArgumentError("cannot write '" + path + "'");
  out << "# kind=" << to_string(trace.kind) << " asymptote_re=" << std::setprecision(17)
      << trace.asymptote.real() << " asymptote_im=" << trace.asymptote.imag() << "\n";
  out << "tau,re,im,re_fluct,im_fluct\n";
  out << std::scientific << std::setprecision(16);
  for (Eigen::Index k = 0; k < trace.values.size(); ++k) {
    out << trace.grid.at(k) << ',' << trace.values(k).real() << ',' << trace.values(k).imag() << ','
        << trace.fluct(k).real() << ',' << trace.fluct(k).imag() << '\n';
  }
}

}  // namespace qwf
