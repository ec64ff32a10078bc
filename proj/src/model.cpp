#include "qwfluor/model.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <sstream>

#include "qwfluor/errors.hpp"

namespace qwf {

void validate(const PhysParams& p) {
  const std::array<double, 6> all{p.G, p.omega_r, p.delta, p.gamma, p.f, p.pump_uw};
  if (!std::all_of(all.begin(), all.end(), [](double v) { return std::isfinite(v); })) {
    throw ArgumentError("PhysParams: all fields must be finite");
  }
  if (!(p.gamma > 0.0)) throw ArgumentError("PhysParams: Gamma must be > 0 meV");
  if (p.omega_r < 0.0) throw ArgumentError("PhysParams: Omega_R must be >= 0 meV");
  if (!(p.f > 0.0)) throw ArgumentError("PhysParams: f must be > 0");
  if (p.G < 0.0) throw ArgumentError("PhysParams: G must be >= 0 meV");
}

PhysParams demo_params() {
  return PhysParams{.G = 0.15, .omega_r = 0.1, .delta = 0.1, .gamma = 0.2, .f = 1.0, .pump_uw = 0.0};
}

ParamTable::ParamTable(std::vector<ParamRow> rows) : rows_(std::move(rows)) {
  if (rows_.size() < 2) throw ArgumentError("ParamTable: need at least 2 rows");
  for (std::size_t i = 1; i < rows_.size(); ++i) {
    if (!(rows_[i].pump_uw > rows_[i - 1].pump_uw)) {
      throw ArgumentError("ParamTable: pump powers must be strictly increasing");
    }
  }
  for (auto& row : rows_) {
    row.params.pump_uw = row.pump_uw;
    validate(row.params);
  }
}

ParamTable builtin_table() {
  auto row = [](double pump, double G, double omega_r, double delta, double f, double gamma) {
    return ParamRow{pump, PhysParams{.G = G, .omega_r = omega_r, .delta = delta, .gamma = gamma, .f = f, .pump_uw = pump}};
  };
  return ParamTable({
      row(100.0, 0.10, 0.045, 0.08, 1.0, 0.15),
      row(150.0, 0.205, 0.075, 0.08, 1.0, 0.20),
      row(310.0, 0.45, 0.16, 0.09, 0.9, 0.22),
  });
}

ParamTable load_table_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ArgumentError("cannot open parameter table '" + path + "'");
  std::string line;
  std::vector<ParamRow> rows;
  bool header_seen = false;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      std::string compact;
      std::remove_copy_if(line.begin(), line.end(), std::back_inserter(compact), ::isspace);
      if (compact != "P_L,G,Omega_R,delta,f,Gamma") {
        throw ArgumentError(path + ": expected header 'P_L,G,Omega_R,delta,f,Gamma'");
      }
      header_seen = true;
      continue;
    }
    std::stringstream ss(line);
    std::array<double, 6> v{};
    std::string cell;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!std::getline(ss, cell, ',')) {
        throw ArgumentError(path + ":" + std::to_string(lineno) + ": expected 6 columns");
      }
      try {
        std::size_t used = 0;
        v[i] = std::stod(cell, &used);
      } catch (const std::exception&) {
        throw ArgumentError(path + ":" + std::to_string(lineno) + ": not a number: '" + cell + "'");
      }
    }
    rows.push_back({v[0], PhysParams{.G = v[1], .omega_r = v[2], .delta = v[3], .gamma = v[5], .f = v[4], .pump_uw = v[0]}});
  }
  return ParamTable(std::move(rows));
}

NaturalCubicSpline::NaturalCubicSpline(std::span<const double> x, std::span<const double> y)
    : x_(x.begin(), x.end()), y_(y.begin(), y.end()), m_(x.size(), 0.0) {
  const std::size_t n = x_.size();
  if (n < 2 || y_.size() != n) throw ArgumentError("NaturalCubicSpline: need >= 2 matching knots");
  for (std::size_t i = 1; i < n; ++i) {
    if (!(x_[i] > x_[i - 1])) throw ArgumentError("NaturalCubicSpline: knots must increase strictly");
  }
  if (n == 2) return;

  // Tridiagonal system for interior second derivatives (Thomas algorithm).
  const std::size_t k = n - 2;
  std::vector<double> diag(k), upper(k), rhs(k);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double h0 = x_[i] - x_[i - 1];
    const double h1 = x_[i + 1] - x_[i];
    diag[i - 1] = 2.0 * (h0 + h1);
    upper[i - 1] = h1;
    rhs[i - 1] = 6.0 * ((y_[i + 1] - y_[i]) / h1 - (y_[i] - y_[i - 1]) / h0);
  }
  for (std::size_t i = 1; i < k; ++i) {
    const double lower = x_[i + 1] - x_[i];  // h_{i}, symmetric with upper[i-1]
    const double w = lower / diag[i - 1];
    diag[i] -= w * upper[i - 1];
    rhs[i] -= w * rhs[i - 1];
  }
  m_[k] = rhs[k - 1] / diag[k - 1];
  for (std::size_t i = k - 1; i-- > 0;) {
    m_[i + 1] = (rhs[i] - upper[i] * m_[i + 2]) / diag[i];
  }
}

std::size_t NaturalCubicSpline::segment(double x) const {
  auto it = std::upper_bound(x_.begin(), x_.end(), x);
  std::size_t i = it == x_.begin() ? 0 : static_cast<std::size_t>(it - x_.begin()) - 1;
  return std::min(i, x_.size() - 2);
}

double NaturalCubicSpline::operator()(double x) const {
  const std::size_t i = segment(x);
  const double h = x_[i + 1] - x_[i];
  const double a = (x_[i + 1] - x) / h;
  const double b = (x - x_[i]) / h;
  return a * y_[i] + b * y_[i + 1] + ((a * a * a - a) * m_[i] + (b * b * b - b) * m_[i + 1]) * h * h / 6.0;
}

double NaturalCubicSpline::derivative(double x) const {
  const std::size_t i = segment(x);
  const double h = x_[i + 1] - x_[i];
  const double a = (x_[i + 1] - x) / h;
  const double b = (x - x_[i]) / h;
  return (y_[i + 1] - y_[i]) / h + ((1.0 - 3.0 * a * a) * m_[i] + (3.0 * b * b - 1.0) * m_[i + 1]) * h / 6.0;
}

double NaturalCubicSpline::second_derivative(double x) const {
  const std::size_t i = segment(x);
  const double h = x_[i + 1] - x_[i];
  return ((x_[i + 1] - x) * m_[i] + (x - x_[i]) * m_[i + 1]) / h;
}

PhysParams interpolate_params(const ParamTable& table, double pump_uw) {
  if (!(pump_uw >= table.min_pump() && pump_uw <= table.max_pump())) {
    throw RangeError("interpolate_params: P_L = " + std::to_string(pump_uw) + " uW outside table range [" +
                     std::to_string(table.min_pump()) + ", " + std::to_string(table.max_pump()) + "]");
  }
  const auto& rows = table.rows();
  std::vector<double> pumps;
  for (const auto& r : rows) pumps.push_back(r.pump_uw);

  auto spline_of = [&](double PhysParams::*field) {
    std::vector<double> ys;
    for (const auto& r : rows) ys.push_back(r.params.*field);
    return NaturalCubicSpline(pumps, ys)(pump_uw);
  };

  PhysParams out{
      .G = spline_of(&PhysParams::G),
      .omega_r = spline_of(&PhysParams::omega_r),
      .delta = spline_of(&PhysParams::delta),
      .gamma = spline_of(&PhysParams::gamma),
      .f = spline_of(&PhysParams::f),
      .pump_uw = pump_uw,
  };
  // Anchors are reproduced bit-exactly rather than up to spline rounding.
  for (const auto& r : rows) {
    if (r.pump_uw == pump_uw) out = r.params;
  }
  validate(out);
  return out;
}

}  // namespace qwf
