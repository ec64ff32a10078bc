#pragma once

#include <string>
#include <utility>
#include <vector>

#include "qwfluor/pipeline.hpp"

namespace qwf {

enum class Command { spectrum, sweep, selftest };

std::string to_string(Command c);
Command parse_command(const std::string& name);

/// Fully resolved run configuration. Keys are namespaced per module
/// (model.*, fock.*, qrt.*, spectra.*, observables.*, output.*, run.*).
struct RunConfig {
  Command command = Command::spectrum;

  // model.*
  PhysParams params = demo_params();
  bool use_table = false;      ///< model.source = table
  double pump_uw = 150.0;      ///< model.P_L, spectrum with source = table
  std::string table_file;      ///< empty selects the built-in table
  double pump_min = 100.0;
  double pump_max = 310.0;
  double pump_step = 2.5;

  PipelineOptions pipeline;    ///< fock.*, qrt.*, spectra.absorption etc.

  // spectra.* detector
  double gamma_f = 0.0107;
  DetectorShape detector = DetectorShape::lorentzian;

  // observables.*
  double crossing_resolution = 0.1;

  // output.*
  std::string output_dir = "out";
  bool write_csv = true;
  bool write_json = true;

  // run.*
  int threads = 0;  ///< 0 = hardware concurrency

  ParamTable table() const;
  /// Pump powers of the sweep, min + k * step up to max (inclusive within 1e-9).
  std::vector<double> sweep_points() const;
};

using Overrides = std::vector<std::pair<std::string, std::string>>;

/// Parses `key = value` lines (with optional `[section]` prefixes and `#`
/// comments), then applies overrides in order, then validates. Unknown keys,
/// malformed values and precondition violations throw ParseError naming the
/// key and its legal range.
RunConfig parse_config(Command command, const std::string& file_text, const Overrides& overrides = {});

/// Splits `key=value`.
std::pair<std::string, std::string> split_assignment(const std::string& text);

/// Every key in a fixed order, doubles printed round-trip exact; feeding the
/// output back to parse_config reproduces the same configuration.
std::string effective_config(const RunConfig& cfg);

/// Stable 64-bit FNV-1a hash of effective_config, as 16 hex digits.
std::string config_hash(const RunConfig& cfg);

}  // namespace qwf
