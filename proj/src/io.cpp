#include "qwfluor/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "qwfluor/errors.hpp"

namespace qwf {

namespace {

nlohmann::json number(double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr); }

}  // namespace

nlohmann::json to_json(Complex z) { return {{"re", number(z.real())}, {"im", number(z.imag())}}; }

nlohmann::json to_json(const PhysParams& p) {
  return {{"G", p.G}, {"Omega_R", p.omega_r}, {"delta", p.delta}, {"Gamma", p.gamma}, {"f", p.f}, {"P_L", p.pump_uw}};
}

nlohmann::json to_json(const MomentSet& m) {
  return {{"mean_x", to_json(m.mean_x)},       {"mean_q", to_json(m.mean_q)},
          {"intensity_x", number(m.intensity_x)}, {"intensity_q", number(m.intensity_q)},
          {"anom_x", to_json(m.anom_x)},       {"anom_q", to_json(m.anom_q)}};
}

nlohmann::json to_json(const ObservableRow& r) {
  return {{"P_L", r.pump_uw},
          {"var_x", number(r.var_x)},
          {"var_q", number(r.var_q)},
          {"ncl_x", number(r.ncl_x)},
          {"ncl_q", number(r.ncl_q)},
          {"dcoh_x", number(r.dcoh_x)},
          {"dcoh_q", number(r.dcoh_q)},
          {"coherence_clipped", r.coherence_clipped},
          {"phase_mean_sq", number(r.phases.mean_sq)},
          {"phase_anom_x", number(r.phases.anom_x)},
          {"phase_anom_q", number(r.phases.anom_q)},
          {"gap_x", number(r.phases.gap_x)},
          {"gap_q", number(r.phases.gap_q)},
          {"lo_phase_x", number(r.lo_phase_x)},
          {"lo_phase_q", number(r.lo_phase_q)}};
}

nlohmann::json to_json(const GridSpec& g) {
  return {{"omega_min", g.omega.lo}, {"omega_max", g.omega.hi}, {"omega_points", g.omega.size},
          {"tau_step", g.tau.step},  {"tau_points", g.tau.size},  {"fft_size", g.fft_size}};
}

nlohmann::json to_json(const ZeroCrossing& z) {
  return {{"state", to_string(z.state)},
          {"P_L", z.state == ZeroCrossing::State::crossing ? nlohmann::json(z.pump_uw) : nlohmann::json(nullptr)}};
}

void write_sweep_csv(const std::vector<ObservableRow>& rows, const std::vector<MomentSet>& moments,
                     const std::string& path) {
  if (rows.size() != moments.size()) throw ArgumentError("write_sweep_csv: rows and moments differ in length");
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw ArgumentError("cannot write '" + path + "'");
  std::fprintf(f,
               "P_L,var_x,var_q,ncl_x,ncl_q,dcoh_x,dcoh_q,phase_mean_sq,phase_anom_x,phase_anom_q,gap_x,gap_q,"
               "intensity_x,intensity_q,coherence_x,coherence_q,abs_anom_x,abs_anom_q\n");
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    const auto& m = moments[i];
    const double cols[] = {r.pump_uw,         r.var_x,          r.var_q,          r.ncl_x,         r.ncl_q,
                           r.dcoh_x,          r.dcoh_q,         r.phases.mean_sq, r.phases.anom_x, r.phases.anom_q,
                           r.phases.gap_x,    r.phases.gap_q,   m.intensity_x,    m.intensity_q,   std::norm(m.mean_x),
                           std::norm(m.mean_q), std::abs(m.anom_x), std::abs(m.anom_q)};
    for (std::size_t c = 0; c < std::size(cols); ++c) {
      std::fprintf(f, c == 0 ? "%.16e" : ",%.16e", cols[c]);
    }
    std::fprintf(f, "\n");
  }
  std::fclose(f);
}

void write_json(const nlohmann::json& j, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ArgumentError("cannot write '" + path + "'");
  out << j.dump(2) << '\n';
}

}  // namespace qwf
