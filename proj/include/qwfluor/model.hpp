#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qwfluor/types.hpp"

namespace qwf {

/// Fit parameters of the collective-exciton model. Energies and rates in meV
/// with hbar = 1; pump power in microwatt (bookkeeping only).
struct PhysParams {
  double G = 0.0;        ///< exciton-exciton coupling
  double omega_r = 0.0;  ///< collective Rabi frequency
  double delta = 0.0;    ///< exciton minus laser frequency
  double gamma = 1.0;    ///< spontaneous emission rate
  double f = 1.0;        ///< oscillator strength
  double pump_uw = 0.0;  ///< pump power P_L

  bool operator==(const PhysParams&) const = default;
};

/// Throws ArgumentError unless gamma > 0, omega_r >= 0, f > 0, G >= 0 and all finite.
void validate(const PhysParams& p);

/// Stand-alone demo set (G 0.15, Omega_R 0.1, delta 0.1, Gamma 0.2, f 1).
PhysParams demo_params();

struct ParamRow {
  double pump_uw;
  PhysParams params;
};

/// Anchor points in strictly increasing pump power (at least two rows).
class ParamTable {
 public:
  explicit ParamTable(std::vector<ParamRow> rows);

  const std::vector<ParamRow>& rows() const& { return rows_; }
  std::vector<ParamRow> rows() && { return std::move(rows_); }
  double min_pump() const { return rows_.front().pump_uw; }
  double max_pump() const { return rows_.back().pump_uw; }

 private:
  std::vector<ParamRow> rows_;
};

/// The three measured anchor rows (100, 150, 310 uW).
ParamTable builtin_table();

/// Reads a table from CSV with header `P_L,G,Omega_R,delta,f,Gamma`.
ParamTable load_table_csv(const std::string& path);

/// Natural cubic spline (zero second derivative at both ends) through
/// strictly increasing knots.
class NaturalCubicSpline {
 public:
  NaturalCubicSpline(std::span<const double> x, std::span<const double> y);

  double operator()(double x) const;
  double derivative(double x) const;
  double second_derivative(double x) const;

  double x_min() const { return x_.front(); }
  double x_max() const { return x_.back(); }

 private:
  std::size_t segment(double x) const;

  std::vector<double> x_;
  std::vector<double> y_;
  std::vector<double> m_;  // second derivatives at the knots
};

/// Splines each parameter independently against pump power. No extrapolation.
PhysParams interpolate_params(const ParamTable& table, double pump_uw);

}  // namespace qwf
