#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "qwfluor/config.hpp"
#include "qwfluor/pipeline.hpp"

namespace qwf {

/// Process exit codes of the command-line tool.
enum ExitCode : int { kExitOk = 0, kExitParse = 2, kExitNumeric = 3, kExitVerdict = 4 };

struct SpectrumRun {
  PointResult point;
  Spectrum emission_detected;  ///< S_x after detector convolution
  Spectrum absorption;         ///< a(omega)
  Spectrum qw_detected;        ///< S_q after detector convolution
  double qw_integral = 0.0;    ///< integral of S_q before convolution
  nlohmann::json report;
};

/// Single parameter set: writes spectrum_x.csv, absorption.csv, spectrum_q.csv, report.json.
SpectrumRun run_spectrum(const RunConfig& cfg);

struct SweepVerdicts {
  bool var_q_below_var_x = false;       ///< var_q < var_x - 1e-10 at every point
  bool squeezing_persists = false;      ///< var_x turns positive at lower P_L than var_q
  bool ncl_q_only_interval = false;     ///< some point with ncl_q < 0 < ncl_x
  bool phase_gap_q_smaller = false;     ///< gap_q < gap_x at every point
  bool dcoh_q_above_dcoh_x = false;     ///< dcoh_q > dcoh_x at every point
  bool intensity_q_saturates = false;   ///< slope of intensity_q changes sign or falls below 5 % of its start
  double intensity_x_linearity = 0.0;   ///< Pearson correlation of intensity_x with P_L
  ZeroCrossing var_x_crossing, var_q_crossing, ncl_q_crossing;

  bool all() const {
    return var_q_below_var_x && squeezing_persists && ncl_q_only_interval && phase_gap_q_smaller &&
           dcoh_q_above_dcoh_x && intensity_q_saturates;
  }
};

SweepVerdicts assess_sweep(const std::vector<ObservableRow>& rows, const std::vector<MomentSet>& moments,
                           double resolution);

struct SweepRun {
  int truncation = 0;
  std::vector<ObservableRow> rows;
  std::vector<MomentSet> moments;
  SweepVerdicts verdicts;
  nlohmann::json report;
};

/// Interpolated parameters per pump power, one shared truncation, points
/// evaluated on a worker pool and collected in P_L order. Writes sweep.csv
/// and report.json.
SweepRun run_sweep(const RunConfig& cfg);

struct SelftestCheck {
  std::string name;
  bool pass = false;
  double measured = 0.0;
  double tolerance = 0.0;
};

/// Replaceable pieces, so a deliberately broken formula can be shown to trip the suite.
struct SelftestHooks {
  std::function<double(Complex, double, Complex)> variance;
};

std::vector<SelftestCheck> run_selftest(const RunConfig& cfg, const SelftestHooks& hooks = {});

void print_selftest(const std::vector<SelftestCheck>& checks, std::ostream& out);

}  // namespace qwf
