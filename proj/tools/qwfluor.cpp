// Command-line driver: qwfluor {spectrum|sweep|selftest} [--config FILE] [--set key=value]...
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "qwfluor/commands.hpp"
#include "qwfluor/errors.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw qwf::ParseError("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Resonance fluorescence of a quantum-well exciton mode, bare and after absorption filtering"};
  app.require_subcommand(1);

  std::string config_file;
  std::vector<std::string> sets;
  std::string out_dir;
  bool print_config = false;
  bool require_claims = false;

  for (const char* name : {"spectrum", "sweep", "selftest"}) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--config", config_file, "configuration file (key = value lines)");
    sub->add_option("--set", sets, "override a key, e.g. --set model.P_L=200")->take_all();
    sub->add_option("--out", out_dir, "output directory (overrides output.dir and QWF_OUTPUT_DIR)");
    sub->add_flag("--print-effective-config", print_config, "print the resolved configuration and exit");
    if (std::string(name) == "sweep") {
      sub->add_flag("--require-claims", require_claims, "exit with code 4 if any sweep verdict is false");
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? qwf::kExitOk : qwf::kExitParse;
  }

  qwf::RunConfig cfg;
  try {
    const auto command = qwf::parse_command(app.get_subcommands().front()->get_name());
    qwf::Overrides overrides;
    if (const char* env = std::getenv("QWF_OUTPUT_DIR"); env && *env) overrides.emplace_back("output.dir", env);
    for (const auto& s : sets) overrides.push_back(qwf::split_assignment(s));
    if (!out_dir.empty()) overrides.emplace_back("output.dir", out_dir);
    cfg = qwf::parse_config(command, config_file.empty() ? std::string() : read_file(config_file), overrides);
  } catch (const qwf::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return qwf::kExitParse;
  }

  if (print_config) {
    std::cout << qwf::effective_config(cfg);
    return qwf::kExitOk;
  }

  try {
    switch (cfg.command) {
      case qwf::Command::spectrum: {
        const auto run = qwf::run_spectrum(cfg);
        const auto& row = run.point.row;
        if (cfg.use_table) std::printf("P_L=%g uW  ", run.point.params.pump_uw);
        std::printf("N=%d  var_x=%.6e  var_q=%.6e  dcoh_x=%.6f  dcoh_q=%.6f\n", run.point.truncation, row.var_x,
                    row.var_q, row.dcoh_x, row.dcoh_q);
        return qwf::kExitOk;
      }
      case qwf::Command::sweep: {
        const auto run = qwf::run_sweep(cfg);
        const auto& v = run.verdicts;
        std::printf("%zu points, N=%d\n", run.rows.size(), run.truncation);
        std::printf("var_x zero: %s", to_string(v.var_x_crossing.state).c_str());
        if (v.var_x_crossing.state == qwf::ZeroCrossing::State::crossing) std::printf(" at %.2f uW", v.var_x_crossing.pump_uw);
        std::printf("\nvar_q zero: %s", to_string(v.var_q_crossing.state).c_str());
        if (v.var_q_crossing.state == qwf::ZeroCrossing::State::crossing) std::printf(" at %.2f uW", v.var_q_crossing.pump_uw);
        std::printf("\nverdicts: var_q<var_x %d, persistence %d, ncl_q-only %d, gap %d, dcoh %d, saturation %d\n",
                    v.var_q_below_var_x, v.squeezing_persists, v.ncl_q_only_interval, v.phase_gap_q_smaller,
                    v.dcoh_q_above_dcoh_x, v.intensity_q_saturates);
        return (require_claims && !v.all()) ? qwf::kExitVerdict : qwf::kExitOk;
      }
      case qwf::Command::selftest: {
        const auto checks = qwf::run_selftest(cfg);
        qwf::print_selftest(checks, std::cout);
        for (const auto& c : checks) {
          if (!c.pass) return qwf::kExitVerdict;
        }
        return qwf::kExitOk;
      }
    }
  } catch (const qwf::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return qwf::kExitParse;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return qwf::kExitNumeric;
  }
  return qwf::kExitOk;
}
