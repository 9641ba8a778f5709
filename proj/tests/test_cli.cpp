#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "lcb/io.hpp"

namespace fs = std::filesystem;

namespace {

fs::path scratch() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / ("lcb_cli_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

int run(const std::string& args) {
  const std::string cmd = std::string(LCB_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string write_config(const std::string& name, const std::string& body) {
  const fs::path p = scratch() / name;
  std::ofstream(p) << body;
  return p.string();
}

std::string iwp_config() {
  static const std::string path = [] {
    const std::string p = (scratch() / "iwp.json").string();
    EXPECT_EQ(run("iwp --grid 41 --out " + p), 0);
    return p;
  }();
  return path;
}

// Auto-synthesized IWP controller (gamma 3, periodic profiles, r2 = 3).
std::string iwp_controller() {
  static const std::string path = [] {
    const fs::path dir = scratch() / "ctrl";
    EXPECT_EQ(run("synthesize --config " + iwp_config() + " --out " + dir.string()), 0);
    return (dir / "controller.json").string();
  }();
  return path;
}

}  // namespace

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run(""), 2);
  EXPECT_EQ(run("check"), 2);
  EXPECT_EQ(run("check --config /nonexistent.json"), 2);
  EXPECT_EQ(run("bogus"), 2);
}

TEST(Cli, Check) {
  EXPECT_EQ(run("check --config " + iwp_config()), 0);
  const auto bad = write_config("det.json", R"({"a": {"coeffs": [[1]]}, "b": {"coeffs": [[2]]},
    "c": {"coeffs": [[1]]}, "h": {"coeffs": [[0, 0, 0.5]]},
    "domain": {"Lx": 0.5, "Ly": 0.5, "Nx": 11, "Ny": 11}})");
  EXPECT_EQ(run("check --config " + bad), 2);
  const auto flat = write_config("flat.json", R"({"a": {"coeffs": [[1]]}, "b": {"coeffs": [[0]]},
    "c": {"coeffs": [[1]]}, "h": {"coeffs": [[0], [0], [-0.5]]},
    "domain": {"Lx": 0.5, "Ly": 0.5, "Nx": 11, "Ny": 11}})");
  EXPECT_EQ(run("check --config " + flat), 1);
  EXPECT_EQ(run("synthesize --config " + flat + " --out " + (scratch() / "flat").string()), 1);
}

TEST(Cli, GammaAndSynthesize) {
  EXPECT_EQ(run("gamma --config " + iwp_config()), 0);
  const auto ctrl = lcb::read_json_file(iwp_controller());
  EXPECT_EQ(ctrl["gamma"], 3.0);
  const auto report = lcb::read_json_file((fs::path(iwp_controller()).parent_path() / "synthesis.json").string());
  EXPECT_EQ(report["positivity"]["ok"], true);
  EXPECT_EQ(report["boundary"]["boundary"]["r2"], 3.0);
  EXPECT_EQ(run("synthesize --config " + iwp_config() + " --r2 0.5 --out " +
                (scratch() / "low").string()),
            3);
}

TEST(Cli, SimulateSingleRun) {
  const fs::path dir = scratch() / "sim_origin";
  EXPECT_EQ(run("simulate --controller " + iwp_controller() + " --ic 0,0,0,0 --t-final 1 --out " +
                dir.string()),
            0);
  std::ifstream csv(dir / "trajectory.csv");
  std::string line;
  std::getline(csv, line);
  EXPECT_EQ(line, "t,x,y,px,py,V,mu,lambda,dVdt");
  std::size_t rows = 0;
  while (std::getline(csv, line)) {
    std::stringstream ss(line);
    std::string cell;
    std::getline(ss, cell, ',');
    for (int k = 0; k < 4; ++k) {
      std::getline(ss, cell, ',');
      EXPECT_EQ(std::stod(cell), 0.0);
    }
    ++rows;
  }
  EXPECT_EQ(rows, 1001u);

  EXPECT_EQ(run("simulate --controller " + iwp_controller() + " --ic 0.9,0,0,0 --out " +
                (scratch() / "sim_out").string()),
            2);
  EXPECT_EQ(run("simulate --controller " + iwp_controller() + " --ic 1,2 --out " +
                (scratch() / "sim_bad").string()),
            2);
}

TEST(Cli, SimulateIsDeterministic) {
  const std::string base = "simulate --controller " + iwp_controller() +
                           " --ic 0.05,0.05,0,0 --t-final 3 --record-every 10 --out ";
  const fs::path a = scratch() / "det_a", b = scratch() / "det_b";
  EXPECT_EQ(run(base + a.string()), 0);
  EXPECT_EQ(run(base + b.string()), 0);
  EXPECT_EQ(slurp(a / "trajectory.csv"), slurp(b / "trajectory.csv"));
  EXPECT_EQ(slurp(a / "simulation.json"), slurp(b / "simulation.json"));

  const std::string batch = "simulate --controller " + iwp_controller() +
                            " --seed 5 --count 3 --radius 0.01 --t-final 1 --out ";
  run(batch + a.string());
  run(batch + b.string());
  EXPECT_EQ(slurp(a / "batch.json"), slurp(b / "batch.json"));
}

TEST(Cli, LaSalle) {
  const fs::path dir = scratch() / "las";
  EXPECT_EQ(run("lasalle --controller " + iwp_controller() + " --out " + dir.string()), 0);
  EXPECT_EQ(lcb::read_json_file((dir / "lasalle.json").string())["verdict"], true);

  const fs::path flat = scratch() / "ctrl_s1_0";
  EXPECT_EQ(run("synthesize --config " + iwp_config() + " --s1 0 --out " + flat.string()), 0);
  EXPECT_EQ(run("lasalle --controller " + (flat / "controller.json").string()), 3);
  EXPECT_EQ(run("lasalle --controller /nonexistent/controller.json"), 2);
}

TEST(Cli, ExportFieldsRoundTrip) {
  const fs::path dir = scratch() / "fields";
  EXPECT_EQ(run("export-fields --controller " + iwp_controller() + " --out " + dir.string()), 0);
  std::ifstream in(dir / "v.csv");
  const auto v = lcb::read_field_csv(in);
  const auto ctrl = lcb::controller_from_json(lcb::read_json_file(iwp_controller()));
  EXPECT_EQ(v.values(), ctrl.v().values());
}

TEST(Cli, IwpConfigRoundTrip) {
  const auto j = lcb::read_json_file(iwp_config());
  const auto sys = lcb::system_from_json(j);
  EXPECT_EQ(lcb::system_to_json(sys), j);
  EXPECT_EQ(sys.domain.Nx, 41);
  EXPECT_EQ(run("iwp -a 1 -b 1 -c 1 -M 1 --out " + (scratch() / "bad_iwp.json").string()), 2);
}
