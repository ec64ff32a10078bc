#include "qwfluor/commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <mutex>
#include <ostream>
#include <random>
#include <thread>

#include <Eigen/Eigenvalues>

#include "qwfluor/errors.hpp"
#include "qwfluor/io.hpp"

namespace qwf {

namespace {

std::string output_path(const RunConfig& cfg, const std::string& name) {
  std::filesystem::create_directories(cfg.output_dir);
  return (std::filesystem::path(cfg.output_dir) / name).string();
}

nlohmann::json metadata(const RunConfig& cfg) {
  return {{"command", to_string(cfg.command)},
          {"config_hash", config_hash(cfg)},
          {"effective_config", effective_config(cfg)},
          {"time_unit_ps", kHbarPerMevPs}};
}

double pearson(const std::vector<double>& x, const std::vector<double>& y) {
  const auto n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i] / n;
    my += y[i] / n;
  }
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  return sxy / std::sqrt(sxx * syy);
}

}  // namespace

SpectrumRun run_spectrum(const RunConfig& cfg) {
  SpectrumRun run;
  PhysParams p = cfg.use_table ? interpolate_params(cfg.table(), cfg.pump_uw) : cfg.params;
  run.point = evaluate_point(p, cfg.pipeline);
  const auto& pt = run.point;

  const Spectrum sq = qw_spectrum(pt.emission, pt.absorption);
  run.qw_integral = integrate(sq);
  run.emission_detected = detector_convolve(pt.emission, cfg.gamma_f, cfg.detector);
  run.qw_detected = detector_convolve(sq, cfg.gamma_f, cfg.detector);
  run.absorption = absorption_curve(pt.absorption, pt.grids.omega);

  run.report = metadata(cfg);
  run.report["params"] = to_json(pt.params);
  run.report["truncation"] = pt.truncation;
  run.report["grids"] = to_json(pt.grids);
  run.report["absorption"] = {{"mode", to_string(pt.absorption.mode())},
                              {"peak", pt.absorption.peak()},
                              {"kappa", pt.absorption.kappa()},
                              {"a_at_laser", pt.absorption(0.0)}};
  run.report["moments"] = to_json(pt.moments);
  run.report["observables"] = to_json(pt.row);
  run.report["spectra"] = {{"emission_integral", integrate(pt.emission)},
                           {"emission_delta_weight", pt.emission.delta_weight},
                           {"emission_tail_weight", pt.emission.tail_weight},
                           {"emission_clipped_points", pt.emission.clipped},
                           {"qw_integral", run.qw_integral},
                           {"gamma_f", cfg.gamma_f}};

  if (cfg.write_csv) {
    write_spectrum_csv(run.emission_detected, output_path(cfg, "spectrum_x.csv"));
    write_spectrum_csv(run.absorption, output_path(cfg, "absorption.csv"));
    write_spectrum_csv(run.qw_detected, output_path(cfg, "spectrum_q.csv"));
  }
  if (cfg.write_json) write_json(run.report, output_path(cfg, "report.json"));
  return run;
}

SweepVerdicts assess_sweep(const std::vector<ObservableRow>& rows, const std::vector<MomentSet>& moments,
                           double resolution) {
  SweepVerdicts v;
  if (rows.size() < 2) throw ArgumentError("assess_sweep: need at least 2 sweep points");
  std::vector<double> pump, var_x, var_q, ncl_q, ix, iq;
  v.var_q_below_var_x = v.phase_gap_q_smaller = v.dcoh_q_above_dcoh_x = true;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    pump.push_back(r.pump_uw);
    var_x.push_back(r.var_x);
    var_q.push_back(r.var_q);
    ncl_q.push_back(r.ncl_q);
    ix.push_back(moments[i].intensity_x);
    iq.push_back(moments[i].intensity_q);
    v.var_q_below_var_x = v.var_q_below_var_x && (r.var_x - r.var_q > 1e-10);
    v.phase_gap_q_smaller = v.phase_gap_q_smaller && (r.phases.gap_q < r.phases.gap_x);
    v.dcoh_q_above_dcoh_x = v.dcoh_q_above_dcoh_x && (r.dcoh_q > r.dcoh_x);
    v.ncl_q_only_interval = v.ncl_q_only_interval || (r.ncl_q < 0.0 && r.ncl_x > 0.0);
  }
  v.var_x_crossing = locate_zero_crossing(pump, var_x, resolution);
  v.var_q_crossing = locate_zero_crossing(pump, var_q, resolution);
  v.ncl_q_crossing = locate_zero_crossing(pump, ncl_q, resolution);

  using S = ZeroCrossing::State;
  if (v.var_x_crossing.state == S::crossing) {
    v.squeezing_persists = v.var_q_crossing.state == S::always_negative ||
                           (v.var_q_crossing.state == S::crossing && v.var_x_crossing.pump_uw < v.var_q_crossing.pump_uw);
  }

  const double first_slope = (iq[1] - iq[0]) / (pump[1] - pump[0]);
  bool sign_change = false;
  double last_slope = first_slope;
  for (std::size_t i = 1; i + 1 < iq.size(); ++i) {
    const double s = (iq[i + 1] - iq[i]) / (pump[i + 1] - pump[i]);
    sign_change = sign_change || (s <= 0.0 && first_slope > 0.0);
    last_slope = s;
  }
  v.intensity_q_saturates = sign_change || (first_slope > 0.0 && last_slope < 0.05 * first_slope);
  v.intensity_x_linearity = pearson(pump, ix);
  return v;
}

SweepRun run_sweep(const RunConfig& cfg) {
  const ParamTable table = cfg.table();
  const std::vector<double> pumps = cfg.sweep_points();
  SweepRun run;

  if (cfg.pipeline.truncation > 0) {
    run.truncation = cfg.pipeline.truncation;
  } else {
    std::vector<double> anchors{cfg.pump_min, cfg.pump_max};
    for (const auto& row : table.rows()) {
      if (row.pump_uw >= cfg.pump_min && row.pump_uw <= cfg.pump_max) anchors.push_back(row.pump_uw);
    }
    for (double a : anchors) {
      run.truncation = std::max(run.truncation, choose_truncation(interpolate_params(table, a), cfg.pipeline.truncation_tol).N);
    }
  }
  PipelineOptions opt = cfg.pipeline;
  opt.truncation = run.truncation;

  const std::size_t n = pumps.size();
  std::vector<PointResult> results(n);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        results[i] = evaluate_point(interpolate_params(table, pumps[i]), opt);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t workers = std::min<std::size_t>(n, cfg.threads > 0 ? static_cast<std::size_t>(cfg.threads) : hw);
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < workers; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  for (std::size_t i = 0; i < n; ++i) {
    if (!errors[i]) continue;
    try {
      std::rethrow_exception(errors[i]);
    } catch (const Error& e) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.17g", pumps[i]);
      throw Error(std::string("sweep point P_L = ") + buf + " uW failed: " + e.what());
    }
  }

  for (auto& r : results) {
    run.rows.push_back(r.row);
    run.moments.push_back(r.moments);
  }
  run.verdicts = assess_sweep(run.rows, run.moments, cfg.crossing_resolution);
  const auto& v = run.verdicts;

  run.report = metadata(cfg);
  run.report["truncation"] = run.truncation;
  run.report["points"] = n;
  run.report["grids_first_point"] = to_json(results.front().grids);
  run.report["crossings"] = {{"var_x", to_json(v.var_x_crossing)},
                             {"var_q", to_json(v.var_q_crossing)},
                             {"ncl_q", to_json(v.ncl_q_crossing)},
                             {"resolution_uW", cfg.crossing_resolution}};
  run.report["verdicts"] = {{"var_q_below_var_x_everywhere", v.var_q_below_var_x},
                            {"squeezing_persists_to_higher_power", v.squeezing_persists},
                            {"ncl_q_negative_where_ncl_x_positive", v.ncl_q_only_interval},
                            {"phase_gap_q_below_gap_x_everywhere", v.phase_gap_q_smaller},
                            {"dcoh_q_above_dcoh_x_everywhere", v.dcoh_q_above_dcoh_x},
                            {"intensity_q_saturates", v.intensity_q_saturates},
                            {"intensity_x_correlation_with_P_L", v.intensity_x_linearity},
                            {"all", v.all()}};
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < n; ++i) {
    auto j = to_json(run.rows[i]);
    j["moments"] = to_json(run.moments[i]);
    rows.push_back(j);
  }
  run.report["rows"] = rows;

  if (cfg.write_csv) write_sweep_csv(run.rows, run.moments, output_path(cfg, "sweep.csv"));
  if (cfg.write_json) write_json(run.report, output_path(cfg, "report.json"));
  return run;
}

namespace {

// exp(L t) through the eigendecomposition of L; independent of the stepped propagator.
class EigenPropagator {
 public:
  explicit EigenPropagator(const CMatrix& L) : es_(L), vinv_(es_.eigenvectors().inverse()) {}
  CVector apply(const CVector& v, double t) const {
    const CVector expo = (es_.eigenvalues() * t).array().exp().matrix();
    return es_.eigenvectors() * (expo.asDiagonal() * (vinv_ * v));
  }

 private:
  Eigen::ComplexEigenSolver<CMatrix> es_;
  CMatrix vinv_;
};

SelftestCheck check(std::string name, double measured, double tol) {
  return {std::move(name), measured <= tol, measured, tol};
}

}  // namespace

std::vector<SelftestCheck> run_selftest(const RunConfig& cfg, const SelftestHooks& hooks) {
  const auto variance = hooks.variance ? hooks.variance : std::function<double(Complex, double, Complex)>(squeezing_variance);
  std::vector<SelftestCheck> out;
  PipelineOptions opt = cfg.pipeline;

  {
    PhysParams p = demo_params();
    p.G = 0.0;
    PipelineOptions o = opt;
    o.absorption = AbsorptionSpec{};
    const PointResult r = evaluate_point(p, o);
    const auto& m = r.moments;
    const Complex alpha = -p.omega_r / Complex(p.delta, -p.gamma / 2.0);
    out.push_back(check("coherent state: <A>_x = -Omega_R/(delta - i Gamma/2)", std::abs(m.mean_x - alpha), 1e-8));
    out.push_back(check("coherent state: var_x = 0", std::abs(variance(m.mean_x, m.intensity_x, m.anom_x)), 1e-8));
    out.push_back(check("coherent state: var_q = 0", std::abs(variance(m.mean_q, m.intensity_q, m.anom_q)), 1e-8));
    out.push_back(check("coherent state: incoherent density = 0", r.emission.density.abs().maxCoeff(), 1e-8));
  }

  {
    const PointResult r = evaluate_point(demo_params(), opt);
    const auto& mx = r.moments;
    for (double c : {0.1, 0.5, 1.0}) {
      const AbsorptionModel a = AbsorptionModel::constant(c);
      const Complex mean_q = coherent_moment_q(mx.mean_x, a);
      const double iq = intensity_q(r.emission, a);
      const Complex aq = anomalous_moment_q(r.c2, a, r.grids.omega);
      const double err = std::max({std::abs(mean_q - std::sqrt(c) * mx.mean_x) / std::abs(mx.mean_x),
                                   std::abs(iq - c * mx.intensity_x) / mx.intensity_x,
                                   std::abs(aq - c * mx.anom_x) / std::abs(mx.anom_x)});
      char name[96];
      std::snprintf(name, sizeof name, "constant filter a = %.1f: f_q = a^((m+n)/2) f_x", c);
      out.push_back(check(name, err, 1e-8));
      const double vx = variance(mx.mean_x, mx.intensity_x, mx.anom_x);
      const double vq = variance(mean_q, iq, aq);
      std::snprintf(name, sizeof name, "constant filter a = %.1f: var_q = a var_x", c);
      out.push_back(check(name, std::abs(vq - c * vx) / std::abs(vx), 1e-8));
    }
  }

  {
    std::mt19937_64 rng(20240601);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
      PhysParams p{.G = 0.5 * u(rng), .omega_r = 0.3 * u(rng), .delta = u(rng) - 0.5, .gamma = 0.1 + 0.3 * u(rng), .f = 1.0, .pump_uw = 0.0};
      const int N = 3;
      const Liouvillian L = build_liouvillian(p, N);
      const CMatrix A = annihilation(N);
      const DensityMatrix rho = steady_state(L);
      const TauGrid grid{0.05 / p.gamma, static_cast<Eigen::Index>(40.0 / 0.05) + 1};
      const CorrelationTrace c1 = correlator_adag_a(L, rho, A, grid);
      const CorrelationTrace c2 = correlator_a_a(L, rho, A, grid);
      const EigenPropagator exact(L.matrix);
      const CVector row = vec(A.transpose());
      const CVector x1 = vec(CMatrix(rho * A.adjoint()));
      const CVector x2 = vec(CMatrix(A * rho));
      for (Eigen::Index k = 0; k < grid.size; k += 16) {
        const double t = grid.at(k);
        worst = std::max(worst, std::abs(c1.values(k) - Complex(row.transpose() * exact.apply(x1, t))));
        worst = std::max(worst, std::abs(c2.values(k) - Complex(row.transpose() * exact.apply(x2, t))));
      }
    }
    out.push_back(check("QRT stepped propagator vs eigendecomposition (N = 3, 10 seeds)", worst, 1e-9));
  }

  const ParamTable anchors = builtin_table();
  for (const auto& row : anchors.rows()) {
    const PointResult r = evaluate_point(row.params, opt);
    char name[96];
    std::snprintf(name, sizeof name, "spectrum normalization at P_L = %g uW", row.pump_uw);
    out.push_back(check(name, std::abs(integrate(r.emission) - r.moments.intensity_x) / r.moments.intensity_x, 1e-4));
  }
  return out;
}

void print_selftest(const std::vector<SelftestCheck>& checks, std::ostream& out) {
  for (const auto& c : checks) {
    char buf[256];
    std::snprintf(buf, sizeof buf, "[%s] %s  (measured %.3e, tol %.1e)\n", c.pass ? "PASS" : "FAIL", c.name.c_str(),
                  c.measured, c.tolerance);
    out << buf;
  }
}

}  // namespace qwf
