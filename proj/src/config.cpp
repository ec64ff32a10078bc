#include "qwfluor/config.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>

#include "qwfluor/errors.hpp"

namespace qwf {

std::string to_string(Command c) {
  switch (c) {
    case Command::spectrum: return "spectrum";
    case Command::sweep: return "sweep";
    case Command::selftest: return "selftest";
  }
  return "unknown";
}

Command parse_command(const std::string& name) {
  if (name == "spectrum") return Command::spectrum;
  if (name == "sweep") return Command::sweep;
  if (name == "selftest") return Command::selftest;
  throw ParseError("unknown command '" + name + "' (spectrum, sweep, selftest)");
}

ParamTable RunConfig::table() const { return table_file.empty() ? builtin_table() : load_table_csv(table_file); }

std::vector<double> RunConfig::sweep_points() const {
  const auto count = static_cast<long>(std::floor((pump_max - pump_min) / pump_step + 1e-9)) + 1;
  std::vector<double> out;
  for (long k = 0; k < count; ++k) out.push_back(pump_min + static_cast<double>(k) * pump_step);
  return out;
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double to_double(const std::string& key, const std::string& text) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    throw ParseError(key + ": expected a number, got '" + text + "'");
  }
}

long to_integer(const std::string& key, const std::string& text) {
  try {
    std::size_t used = 0;
    const long v = std::stol(text, &used);
    if (used != text.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    throw ParseError(key + ": expected an integer, got '" + text + "'");
  }
}

struct Key {
  std::string name;
  std::function<void(RunConfig&, const std::string&)> set;
  std::function<std::string(const RunConfig&)> get;
};

Key real_key(std::string name, double RunConfig::*field) {
  return {name, [name, field](RunConfig& c, const std::string& v) { c.*field = to_double(name, v); },
          [field](const RunConfig& c) { return format_double(c.*field); }};
}

template <typename Owner>
Key nested_real(std::string name, Owner RunConfig::*owner, double Owner::*field) {
  return {name, [name, owner, field](RunConfig& c, const std::string& v) { (c.*owner).*field = to_double(name, v); },
          [owner, field](const RunConfig& c) { return format_double((c.*owner).*field); }};
}

Key param_key(std::string name, double PhysParams::*field) { return nested_real(std::move(name), &RunConfig::params, field); }

const std::vector<Key>& registry() {
  static const std::vector<Key> keys = [] {
    std::vector<Key> k;
    k.push_back(param_key("model.G", &PhysParams::G));
    k.push_back(param_key("model.Omega_R", &PhysParams::omega_r));
    k.push_back(param_key("model.delta", &PhysParams::delta));
    k.push_back(param_key("model.Gamma", &PhysParams::gamma));
    k.push_back(param_key("model.f", &PhysParams::f));
    k.push_back({"model.source",
                 [](RunConfig& c, const std::string& v) {
                   if (v == "explicit") c.use_table = false;
                   else if (v == "table") c.use_table = true;
                   else throw ParseError("model.source: expected explicit|table, got '" + v + "'");
                 },
                 [](const RunConfig& c) { return std::string(c.use_table ? "table" : "explicit"); }});
    k.push_back(real_key("model.P_L", &RunConfig::pump_uw));
    k.push_back({"model.table_file", [](RunConfig& c, const std::string& v) { c.table_file = v; },
                 [](const RunConfig& c) { return c.table_file; }});
    k.push_back(real_key("model.P_min", &RunConfig::pump_min));
    k.push_back(real_key("model.P_max", &RunConfig::pump_max));
    k.push_back(real_key("model.P_step", &RunConfig::pump_step));

    k.push_back({"fock.N", [](RunConfig& c, const std::string& v) { c.pipeline.truncation = static_cast<int>(to_integer("fock.N", v)); },
                 [](const RunConfig& c) { return std::to_string(c.pipeline.truncation); }});
    k.push_back(nested_real("fock.tol", &RunConfig::pipeline, &PipelineOptions::truncation_tol));

    auto numerics = [](std::string name, double NumericsOptions::*field) {
      return Key{name, [name, field](RunConfig& c, const std::string& v) { c.pipeline.numerics.*field = to_double(name, v); },
                 [field](const RunConfig& c) { return format_double(c.pipeline.numerics.*field); }};
    };
    k.push_back(numerics("qrt.tau_max_gamma", &NumericsOptions::tau_max_gamma));
    k.push_back(numerics("qrt.dtau_gamma", &NumericsOptions::dtau_gamma));
    k.push_back(numerics("qrt.nyquist_factor", &NumericsOptions::nyquist_factor));

    k.push_back({"spectra.absorption",
                 [](RunConfig& c, const std::string& v) {
                   if (v == "thin_sheet") c.pipeline.absorption.mode = AbsorptionMode::thin_sheet;
                   else if (v == "lorentzian") c.pipeline.absorption.mode = AbsorptionMode::lorentzian;
                   else if (v == "constant") c.pipeline.absorption.mode = AbsorptionMode::constant;
                   else throw ParseError("spectra.absorption: expected thin_sheet|lorentzian|constant, got '" + v + "'");
                 },
                 [](const RunConfig& c) { return to_string(c.pipeline.absorption.mode); }});
    k.push_back({"spectra.kappa",
                 [](RunConfig& c, const std::string& v) {
                   if (v == "auto") c.pipeline.absorption.kappa.reset();
                   else c.pipeline.absorption.kappa = to_double("spectra.kappa", v);
                 },
                 [](const RunConfig& c) {
                   return c.pipeline.absorption.kappa ? format_double(*c.pipeline.absorption.kappa) : std::string("auto");
                 }});
    auto absorption = [](std::string name, double AbsorptionSpec::*field) {
      return Key{name, [name, field](RunConfig& c, const std::string& v) { c.pipeline.absorption.*field = to_double(name, v); },
                 [field](const RunConfig& c) { return format_double(c.pipeline.absorption.*field); }};
    };
    k.push_back(absorption("spectra.a_peak", &AbsorptionSpec::a_peak));
    k.push_back(absorption("spectra.a_const", &AbsorptionSpec::constant));
    k.push_back(numerics("spectra.window_gamma", &NumericsOptions::window_gamma));
    k.push_back({"spectra.grid_points",
                 [](RunConfig& c, const std::string& v) { c.pipeline.numerics.grid_points = to_integer("spectra.grid_points", v); },
                 [](const RunConfig& c) { return std::to_string(c.pipeline.numerics.grid_points); }});
    k.push_back(real_key("spectra.gamma_f", &RunConfig::gamma_f));
    k.push_back({"spectra.detector",
                 [](RunConfig& c, const std::string& v) {
                   if (v == "lorentzian") c.detector = DetectorShape::lorentzian;
                   else if (v == "gaussian") c.detector = DetectorShape::gaussian;
                   else throw ParseError("spectra.detector: expected lorentzian|gaussian, got '" + v + "'");
                 },
                 [](const RunConfig& c) { return std::string(c.detector == DetectorShape::lorentzian ? "lorentzian" : "gaussian"); }});

    k.push_back(real_key("observables.crossing_resolution", &RunConfig::crossing_resolution));

    k.push_back({"output.dir", [](RunConfig& c, const std::string& v) { c.output_dir = v; },
                 [](const RunConfig& c) { return c.output_dir; }});
    k.push_back({"output.formats",
                 [](RunConfig& c, const std::string& v) {
                   c.write_csv = c.write_json = false;
                   std::stringstream ss(v);
                   std::string item;
                   while (std::getline(ss, item, ',')) {
                     item = trim(item);
                     if (item == "csv") c.write_csv = true;
                     else if (item == "json") c.write_json = true;
                     else throw ParseError("output.formats: expected a list of csv,json, got '" + item + "'");
                   }
                 },
                 [](const RunConfig& c) {
                   std::string s;
                   if (c.write_csv) s = "csv";
                   if (c.write_json) s += s.empty() ? "json" : ",json";
                   return s;
                 }});
    k.push_back({"run.threads", [](RunConfig& c, const std::string& v) { c.threads = static_cast<int>(to_integer("run.threads", v)); },
                 [](const RunConfig& c) { return std::to_string(c.threads); }});
    return k;
  }();
  return keys;
}

void assign(RunConfig& cfg, const std::string& key, const std::string& value) {
  for (const auto& k : registry()) {
    if (k.name == key) {
      k.set(cfg, value);
      return;
    }
  }
  throw ParseError("unknown configuration key '" + key + "'");
}

void require(bool ok, const std::string& key, const std::string& range) {
  if (!ok) throw ParseError(key + ": value out of range, legal range " + range);
}

void validate_config(const RunConfig& c) {
  const auto& p = c.params;
  for (double v : {p.G, p.omega_r, p.delta, p.gamma, p.f}) require(std::isfinite(v), "model.*", "finite numbers");
  require(p.G >= 0.0, "model.G", ">= 0");
  require(p.omega_r >= 0.0, "model.Omega_R", ">= 0");
  require(p.gamma > 0.0, "model.Gamma", "> 0");
  require(p.f > 0.0, "model.f", "> 0");
  require(c.pump_step > 0.0, "model.P_step", "> 0");
  require(c.pump_min <= c.pump_max, "model.P_min", "<= model.P_max");

  ParamTable table = [&] {
    try {
      return c.table();
    } catch (const Error& e) {
      throw ParseError(std::string("model.table_file: ") + e.what());
    }
  }();
  const std::string table_range = "[" + format_double(table.min_pump()) + ", " + format_double(table.max_pump()) + "] uW";
  if (c.command == Command::sweep) {
    require(c.pump_min >= table.min_pump(), "model.P_min", table_range);
    require(c.pump_max <= table.max_pump(), "model.P_max", table_range);
  }
  if (c.use_table && c.command == Command::spectrum) {
    require(c.pump_uw >= table.min_pump() && c.pump_uw <= table.max_pump(), "model.P_L", table_range);
  }

  require(c.pipeline.truncation == 0 || (c.pipeline.truncation >= 1 && c.pipeline.truncation <= 64), "fock.N",
          "0 (automatic) or 1..64");
  require(c.pipeline.truncation_tol > 0.0 && c.pipeline.truncation_tol <= 1e-4, "fock.tol", "(0, 1e-4]");
  const auto& n = c.pipeline.numerics;
  require(n.tau_max_gamma > 0.0, "qrt.tau_max_gamma", "> 0");
  require(n.dtau_gamma > 0.0, "qrt.dtau_gamma", "> 0");
  require(n.nyquist_factor > 0.0, "qrt.nyquist_factor", "> 0");
  require(n.window_gamma > 0.0, "spectra.window_gamma", "> 0");
  require(n.grid_points >= 16 && n.grid_points <= (1 << 22), "spectra.grid_points", "16 .. 4194304");
  require(c.gamma_f > 0.0, "spectra.gamma_f", "> 0");
  require(c.crossing_resolution > 0.0, "observables.crossing_resolution", "> 0");
  require(c.threads >= 0, "run.threads", ">= 0");
  require(!c.output_dir.empty(), "output.dir", "a non-empty path");

  const auto& a = c.pipeline.absorption;
  switch (a.mode) {
    case AbsorptionMode::lorentzian: require(a.a_peak > 0.0 && a.a_peak <= 1.0, "spectra.a_peak", "(0, 1]"); break;
    case AbsorptionMode::constant: require(a.constant >= 0.0 && a.constant <= 1.0, "spectra.a_const", "[0, 1]"); break;
    case AbsorptionMode::thin_sheet: {
      require(!a.kappa || *a.kappa > 0.0, "spectra.kappa", "auto or > 0");
      std::vector<PhysParams> probe;
      if (c.command == Command::sweep) {
        for (const auto& row : table.rows()) probe.push_back(row.params);
      } else {
        probe.push_back(c.use_table ? interpolate_params(table, c.pump_uw) : p);
      }
      for (const auto& q : probe) {
        require(!a.kappa || *a.kappa * q.f < q.gamma / 2.0, "spectra.kappa", "kappa * f < Gamma / 2 for every parameter set");
      }
      break;
    }
  }
}

}  // namespace

std::pair<std::string, std::string> split_assignment(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos) throw ParseError("expected key=value, got '" + text + "'");
  return {trim(text.substr(0, eq)), trim(text.substr(eq + 1))};
}

RunConfig parse_config(Command command, const std::string& file_text, const Overrides& overrides) {
  RunConfig cfg;
  cfg.command = command;
  std::stringstream in(file_text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ParseError("line " + std::to_string(lineno) + ": malformed section header");
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    auto [key, value] = split_assignment(line);
    if (!section.empty()) key = section + "." + key;
    try {
      assign(cfg, key, value);
    } catch (const ParseError& e) {
      throw ParseError("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  for (const auto& [key, value] : overrides) assign(cfg, key, value);
  validate_config(cfg);
  return cfg;
}

std::string effective_config(const RunConfig& cfg) {
  std::string out;
  for (const auto& k : registry()) out += k.name + " = " + k.get(cfg) + "\n";
  return out;
}

std::string config_hash(const RunConfig& cfg) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char ch : to_string(cfg.command) + "\n" + effective_config(cfg)) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace qwf
