#include "qwfluor/pipeline.hpp"

namespace qwf {

AbsorptionModel AbsorptionSpec::bind(const PhysParams& p) const {
  switch (mode) {
    case AbsorptionMode::thin_sheet: return AbsorptionModel::thin_sheet(p, kappa);
    case AbsorptionMode::lorentzian: return AbsorptionModel::lorentzian(p, a_peak);
    case AbsorptionMode::constant: return AbsorptionModel::constant(constant);
  }
  return AbsorptionModel::constant(constant);
}

PointResult evaluate_point(const PhysParams& p, const PipelineOptions& opt) {
  validate(p);
  PointResult r;
  r.params = p;
  r.truncation = opt.truncation > 0 ? opt.truncation : choose_truncation(p, opt.truncation_tol).N;
  r.grids = make_grids(p, opt.numerics);
  r.absorption = opt.absorption.bind(p);

  const Liouvillian L = build_liouvillian(p, r.truncation);
  const OperatorMatrix A = annihilation(r.truncation);
  r.rho = steady_state(L);

  const StepPropagator prop(L, r.grids.tau.step);
  r.c1 = correlator_adag_a(prop, L, r.rho, A, r.grids.tau.size);
  r.c2 = correlator_a_a(prop, L, r.rho, A, r.grids.tau.size);
  r.emission = emission_spectrum(r.c1, r.grids.omega);

  MomentSet& m = r.moments;
  m.mean_x = expectation(r.rho, A);
  m.intensity_x = expectation(r.rho, A.adjoint() * A).real();
  m.anom_x = expectation(r.rho, A * A);
  m.mean_q = coherent_moment_q(m.mean_x, r.absorption);
  m.intensity_q = intensity_q(r.emission, r.absorption);
  m.anom_q = anomalous_moment_q(r.c2, r.absorption, r.grids.omega);

  r.row = observe(p.pump_uw, m);
  return r;
}

}  // namespace qwf
