#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qwfluor/commands.hpp"
#include "qwfluor/errors.hpp"

using namespace qwf;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const fs::path d = fs::temp_directory_path() / ("qwfluor_cli_" + name);
  fs::remove_all(d);
  return d;
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(QWF_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

}  // namespace

TEST_CASE("defaults") {
  const RunConfig a = parse_config(Command::spectrum, "");
  CHECK(a.params == demo_params());
  CHECK(a.params.G == 0.15);
  CHECK(a.params.gamma == 0.2);
  CHECK(a.params.omega_r == 0.1);
  CHECK(a.params.delta == 0.1);
  CHECK(a.params.f == 1.0);
  CHECK(a.gamma_f == 0.0107);
  CHECK(a.pipeline.absorption.mode == AbsorptionMode::thin_sheet);
  CHECK_FALSE(a.pipeline.absorption.kappa.has_value());
  CHECK(parse_config(Command::sweep, "").sweep_points().size() == 85);
  CHECK(parse_config(Command::sweep, "", {{"model.P_step", "5"}}).sweep_points().size() == 43);
  CHECK(parse_config(Command::sweep, "model.P_step = 5").sweep_points().back() == 310.0);
}

TEST_CASE("file syntax and overrides") {
  const std::string text = "# comment\n[model]\nG = 0.2   # trailing\nOmega_R=0.05\n[spectra]\nabsorption = lorentzian\na_peak = 0.8\n";
  const RunConfig c = parse_config(Command::spectrum, text, {{"model.G", "0.3"}});
  CHECK(c.params.G == 0.3);
  CHECK(c.params.omega_r == 0.05);
  CHECK(c.pipeline.absorption.mode == AbsorptionMode::lorentzian);
  CHECK(c.pipeline.absorption.a_peak == 0.8);
  CHECK(split_assignment(" a.b = 3 ") == std::pair<std::string, std::string>{"a.b", "3"});
}

TEST_CASE("invalid configurations") {
  CHECK_THROWS_AS(parse_config(Command::spectrum, "model.Gamma = 0"), ParseError);
  CHECK_THROWS_AS(parse_config(Command::spectrum, "", {{"model.Gamma", "-1"}}), ParseError);
  CHECK_THROWS_AS(parse_config(Command::spectrum, "model.bogus = 1"), ParseError);
  CHECK_THROWS_AS(parse_config(Command::spectrum, "model.G = abc"), ParseError);
  CHECK_THROWS_AS(parse_config(Command::spectrum, "fock.tol = 0"), ParseError);
  CHECK_THROWS_AS(parse_config(Command::spectrum, "spectra.kappa = 0.1"), ParseError);  // kappa f = Gamma / 2
  CHECK_THROWS_AS(parse_config(Command::sweep, "model.P_min = 50"), ParseError);
  CHECK_THROWS_AS(parse_config(Command::spectrum, "[model\nG=1"), ParseError);
  CHECK_THROWS_AS(parse_command("plot"), ParseError);
  try {
    parse_config(Command::spectrum, "model.Gamma = -2");
  } catch (const ParseError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("model.Gamma") != std::string::npos);
    CHECK(msg.find("> 0") != std::string::npos);
  }
}

TEST_CASE("effective configuration round trip") {
  const RunConfig c = parse_config(Command::sweep, "model.P_step = 0.1\nspectra.kappa = 0.03\nspectra.detector = gaussian\n",
                                   {{"qrt.dtau_gamma", "0.0333"}, {"output.formats", "json"}});
  const std::string text = effective_config(c);
  const RunConfig d = parse_config(Command::sweep, text);
  CHECK(effective_config(d) == text);
  CHECK(config_hash(d) == config_hash(c));
  CHECK(config_hash(c).size() == 16);
  CHECK(config_hash(parse_config(Command::sweep, "")) != config_hash(c));
  CHECK(effective_config(parse_config(Command::selftest, "")) == effective_config(RunConfig{.command = Command::selftest}));
}

TEST_CASE("spectrum outputs are deterministic and a = 1 is transparent") {
  const fs::path dir = scratch("spectrum");
  const RunConfig c = parse_config(Command::spectrum, "", {{"output.dir", dir.string()}});
  const SpectrumRun r1 = run_spectrum(c);
  std::map<std::string, std::string> first;
  for (const char* f : {"spectrum_x.csv", "absorption.csv", "spectrum_q.csv", "report.json"}) {
    REQUIRE(fs::exists(dir / f));
    first[f] = slurp(dir / f);
  }
  run_spectrum(c);
  for (const auto& [f, bytes] : first) CHECK(slurp(dir / f) == bytes);

  const auto report = nlohmann::json::parse(first["report.json"]);
  CHECK(report["config_hash"] == config_hash(c));
  CHECK(report["truncation"].get<int>() == r1.point.truncation);
  CHECK(first["spectrum_x.csv"].rfind("# delta_weight=", 0) == 0);

  const fs::path tdir = scratch("transparent");
  run_spectrum(parse_config(Command::spectrum, "spectra.absorption = constant\nspectra.a_const = 1\n",
                            {{"output.dir", tdir.string()}}));
  CHECK(slurp(tdir / "spectrum_q.csv") == slurp(tdir / "spectrum_x.csv"));
  fs::remove_all(dir);
  fs::remove_all(tdir);
}

TEST_CASE("transparent sweep leaves the variance unchanged") {
  const fs::path dir = scratch("sweep");
  const RunConfig c = parse_config(Command::sweep, "model.P_min = 100\nmodel.P_max = 115\nmodel.P_step = 5\n"
                                   "spectra.absorption = constant\nspectra.a_const = 1\n",
                                   {{"output.dir", dir.string()}});
  const SweepRun s = run_sweep(c);
  REQUIRE(s.rows.size() == 4);
  for (std::size_t i = 0; i < s.rows.size(); ++i) {
    CHECK(s.rows[i].pump_uw == 100.0 + 5.0 * static_cast<double>(i));
    CHECK(std::abs(s.rows[i].var_q - s.rows[i].var_x) < 1e-8);
  }
  CHECK(fs::exists(dir / "sweep.csv"));
  const auto report = nlohmann::json::parse(slurp(dir / "report.json"));
  CHECK(report["rows"].size() == 4);
  CHECK(report["verdicts"].contains("var_q_below_var_x_everywhere"));
  fs::remove_all(dir);
}

TEST_CASE("self test and its canary") {
  const RunConfig c = parse_config(Command::selftest, "");
  for (const auto& check : run_selftest(c)) CHECK_MESSAGE(check.pass, check.name);

  SelftestHooks broken;
  broken.variance = [](Complex m, double I, Complex a) { return 2.0 * (I + std::norm(m) - std::abs(m * m - a)); };
  const auto checks = run_selftest(c, broken);
  bool coherent_failed = false;
  for (const auto& check : checks) {
    if (check.name.find("coherent state: var_x") != std::string::npos) coherent_failed = !check.pass;
  }
  CHECK(coherent_failed);
}

TEST_CASE("command line exit codes") {
  const fs::path dir = scratch("exit");
  CHECK(run_cli("spectrum --print-effective-config") == 0);
  CHECK(run_cli("spectrum --set model.Gamma=-1") == 2);
  CHECK(run_cli("spectrum --set model.nope=1") == 2);
  CHECK(run_cli("spectrum --config /nonexistent/qwf.ini") == 2);
  CHECK(run_cli("frobnicate") == 2);
  CHECK(run_cli("spectrum --set fock.N=2 --set qrt.tau_max_gamma=2 --out " + dir.string()) == 3);
  CHECK(run_cli("spectrum --out " + dir.string()) == 0);
  CHECK(fs::exists(dir / "spectrum_q.csv"));
  const std::string env_dir = (dir / "env").string();
  CHECK(std::system(("QWF_OUTPUT_DIR=" + env_dir + " " + QWF_CLI_PATH + " spectrum > /dev/null 2>&1").c_str()) == 0);
  CHECK(fs::exists(fs::path(env_dir) / "report.json"));
  fs::remove_all(dir);
}
