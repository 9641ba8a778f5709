// lcb: command-line driver for the LCB synthesis pipeline.
//
//   lcb check       --config sys.json
//   lcb gamma       --config sys.json
//   lcb synthesize  --config sys.json --out dir
//   lcb simulate    --controller dir/controller.json --ic x,y,px,py --out dir
//   lcb lasalle     --controller dir/controller.json
//   lcb iwp         --out sys.json
//   lcb export-fields --controller dir/controller.json --out dir
//
// Exit codes: 0 success, 1 negative method result, 2 input or IO error,
// 3 certificate failure.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "lcb/errors.hpp"
#include "lcb/io.hpp"
#include "lcb/iwp.hpp"
#include "lcb/lasalle.hpp"
#include "lcb/simulator.hpp"
#include "lcb/synthesis.hpp"

namespace fs = std::filesystem;
using lcb::json;

namespace {

enum Exit { kOk = 0, kNegative = 1, kInput = 2, kCertificate = 3 };

struct Options {
  std::string config;
  std::string controller;
  std::string out;
  int grid = 0;
  double domain = 0.0;
  double domain_y = 0.0;
  double dt = 1e-3;
  double trace_dt = 1e-3;
  double kappa = 1.0;
  double l = 1.0;
  double t_final = 200.0;
  double margin = 0.5;
  double tol = lcb::kDefaultTol;
  std::string ic;
  unsigned long long seed = 42;
  int count = 20;
  double radius = 0.2;
  double conv_radius = 1e-3;
  int record_every = 1;
  double chain_tol = 1e-3;
  double chain_radius = 5e-2;
  std::optional<double> gamma, s1, r2;
  double a = 2.0, b = 1.0, c = 1.0, M = 1.0;
};

void setup_logging() {
  auto logger = spdlog::stderr_color_mt("lcb");
  spdlog::set_default_logger(logger);
  spdlog::set_level(spdlog::level::warn);
  if (const char* env = std::getenv("LCB_LOG")) spdlog::set_level(spdlog::level::from_str(env));
}

void emit(const json& j) { std::cout << j.dump(2) << '\n'; }

fs::path out_dir(const Options& o) {
  if (o.out.empty()) throw lcb::ConfigError("--out is required");
  fs::create_directories(o.out);
  return fs::path(o.out);
}

lcb::SystemSpec2D load_system(const Options& o) {
  if (o.config.empty()) throw lcb::ConfigError("--config is required");
  lcb::SystemSpec2D sys = lcb::system_from_json(lcb::read_json_file(o.config));
  if (o.grid > 0) sys.domain.Nx = sys.domain.Ny = o.grid;
  if (o.domain > 0.0) sys.domain.Lx = sys.domain.Ly = o.domain;
  sys.domain.validate();
  return sys;
}

lcb::Controller load_controller(const Options& o) {
  if (o.controller.empty()) throw lcb::ConfigError("--controller is required");
  lcb::Controller ctrl = lcb::controller_from_json(lcb::read_json_file(o.controller));
  if (o.kappa != 1.0) {
    return lcb::Controller(ctrl.system(), ctrl.gamma0(), ctrl.delta(), ctrl.v(), ctrl.l(), o.kappa,
                           ctrl.boundary());
  }
  return ctrl;
}

lcb::State parse_ic(const std::string& text) {
  std::vector<double> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      v.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw lcb::ConfigError("bad --ic component: " + item);
    }
  }
  if (v.size() != 4) throw lcb::ConfigError("--ic needs four comma-separated values");
  return {v[0], v[1], v[2], v[3]};
}

int cmd_check(const Options& o) {
  const auto sys = load_system(o);
  const auto report = lcb::validate_system(sys, o.tol);
  if (!report.ok()) {
    emit({{"validation", lcb::to_json(report)}});
    return kInput;
  }
  const auto verdict = lcb::check_condpos2(sys, o.tol);
  emit({{"validation", lcb::to_json(report)}, {"verdict", lcb::to_json(verdict)}});
  return verdict.stabilizable ? kOk : kNegative;
}

int cmd_gamma(const Options& o) {
  const auto sys = load_system(o);
  lcb::require_valid(sys, o.tol);
  const auto g = lcb::choose_gamma(sys, std::nullopt, o.margin, o.tol);
  const auto b = lcb::choose_boundary(sys, g.gamma0, o.margin, o.tol);
  emit({{"gamma", lcb::to_json(g)}, {"boundary", lcb::to_json(b)}});
  return kOk;
}

int cmd_synthesize(const Options& o) {
  const auto sys = load_system(o);
  lcb::SynthesisParams p;
  p.gamma = o.gamma;
  p.s1 = o.s1;
  p.r2 = o.r2;
  p.l = o.l;
  p.kappa = o.kappa;
  p.margin = o.margin;
  p.tol = o.tol;
  p.trace.dt = o.trace_dt;
  if (o.domain_y > 0.0) {
    lcb::Rectangle chart = sys.domain;
    chart.Ly = o.domain_y;
    chart.Ny = 2 * static_cast<int>(std::lround(o.domain_y / sys.domain.hy())) + 1;
    chart.validate();
    p.chart = chart;
  }
  const auto res = lcb::synthesize(sys, p);
  const fs::path dir = out_dir(o);
  const json ctrl = lcb::controller_to_json(res.controller);
  lcb::write_json_file((dir / "controller.json").string(), ctrl);

  json report = {{"verdict", lcb::to_json(res.verdict)},
                 {"boundary", lcb::to_json(res.boundary)},
                 {"residual_kinetic", lcb::to_json(res.kinetic, res.controller.chart())},
                 {"residual_potential", lcb::to_json(res.potential, res.controller.chart())},
                 {"positivity", lcb::to_json(res.positivity)}};
  if (res.gamma_choice) report["gamma"] = lcb::to_json(*res.gamma_choice);
  if (res.hessian) report["hessian_v_origin"] = lcb::to_json(*res.hessian);
  lcb::write_json_file((dir / "synthesis.json").string(), report);
  emit(report);
  const bool hess_ok = !res.hessian || res.hessian->positive_definite;
  return res.positivity.ok() && hess_ok ? kOk : kCertificate;
}

int cmd_simulate(const Options& o) {
  const auto ctrl = load_controller(o);
  lcb::SimOptions so;
  so.t_final = o.t_final;
  so.dt = o.dt;
  so.record_every = o.record_every;
  if (!(o.dt > 0.0 && o.dt <= 0.1)) throw lcb::ConfigError("--dt must lie in (0, 0.1]");

  if (!o.ic.empty()) {
    const lcb::State ic = parse_ic(o.ic);
    const auto traj = lcb::integrate(ctrl, ic, so);
    const auto dec = traj.samples.size() >= 3 ? lcb::verify_decrease(traj, 1e-5)
                                              : lcb::DecreaseReport{};
    const fs::path dir = out_dir(o);
    std::ofstream csv(dir / "trajectory.csv");
    if (!csv) throw lcb::ConfigError("cannot write trajectory.csv");
    lcb::write_trajectory_csv(csv, traj);
    const lcb::State& f = traj.final_state;
    json report = {{"decrease", lcb::to_json(dec)},
                   {"truncated", traj.truncated},
                   {"final_time", traj.final_time},
                   {"final_state", {f.x, f.y, f.px, f.py}},
                   {"final_norm", f.norm()}};
    lcb::write_json_file((dir / "simulation.json").string(), report);
    emit(report);
    return dec.ok() && !traj.truncated ? kOk : kCertificate;
  }

  const auto ics = lcb::sample_ball(o.count, o.radius, o.seed);
  const auto runs = lcb::batch_simulate(ctrl, ics, so, o.conv_radius);
  json list = json::array();
  bool all = true;
  for (const auto& r : runs) {
    json item = {{"ic", {r.ic.x, r.ic.y, r.ic.px, r.ic.py}},
                 {"final_norm", r.final_norm},
                 {"converged", r.converged},
                 {"decrease", lcb::to_json(r.decrease)}};
    if (r.error) item["error"] = *r.error;
    all = all && r.converged && r.decrease.ok();
    list.push_back(item);
  }
  json report = {{"seed", o.seed}, {"radius", o.radius}, {"all_ok", all}, {"runs", list}};
  if (!o.out.empty()) lcb::write_json_file((out_dir(o) / "batch.json").string(), report);
  emit(report);
  return all ? kOk : kCertificate;
}

int cmd_lasalle(const Options& o) {
  const auto ctrl = load_controller(o);
  lcb::ChainOptions co;
  co.tol = o.chain_tol;
  co.chain_radius = o.chain_radius;
  const auto rep = lcb::chain_scan(ctrl, co);
  const json j = lcb::to_json(rep);
  if (!o.out.empty()) lcb::write_json_file((out_dir(o) / "lasalle.json").string(), j);
  emit(j);
  return rep.verdict ? kOk : kCertificate;
}

int cmd_iwp(const Options& o) {
  lcb::Rectangle domain;
  if (o.grid > 0) domain.Nx = domain.Ny = o.grid;
  if (o.domain > 0.0) domain.Lx = domain.Ly = o.domain;
  const auto sys = lcb::iwp_system({o.a, o.b, o.c, o.M}, domain);
  const json j = lcb::system_to_json(sys);
  if (o.out.empty()) {
    emit(j);
  } else {
    const fs::path path(o.out);
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    lcb::write_json_file(o.out, j);
  }
  return kOk;
}

int cmd_export_fields(const Options& o) {
  const auto ctrl = load_controller(o);
  const fs::path dir = out_dir(o);
  std::ofstream d(dir / "delta.csv");
  std::ofstream v(dir / "v.csv");
  if (!d || !v) throw lcb::ConfigError("cannot write field CSVs");
  lcb::write_field_csv(d, ctrl.delta());
  lcb::write_field_csv(v, ctrl.v());
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  setup_logging();
  Options o;
  CLI::App app{"Lyapunov-constraint-based synthesis for 2-DOF underactuated systems"};
  app.require_subcommand(1);

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", o.out, "output directory (or file for iwp)");
    sub->add_option("--tol", o.tol, "tolerance for strict inequalities");
  };
  auto add_system = [&](CLI::App* sub) {
    sub->add_option("--config", o.config, "system config JSON");
    sub->add_option("--grid", o.grid, "grid nodes per axis (odd)");
    sub->add_option("--domain", o.domain, "half-width of the chart");
    sub->add_option("--margin", o.margin, "relative margin for gamma selection");
  };
  auto add_controller = [&](CLI::App* sub) {
    sub->add_option("--controller", o.controller, "controller JSON from synthesize");
    sub->add_option("--kappa", o.kappa, "dissipation gain");
  };

  auto* check = app.add_subcommand("check", "validate the system and decide stabilizability");
  add_common(check);
  add_system(check);
  auto* gamma = app.add_subcommand("gamma", "choose gamma and boundary data");
  add_common(gamma);
  add_system(gamma);
  auto* synth = app.add_subcommand("synthesize", "solve for delta and v, write the controller");
  add_common(synth);
  add_system(synth);
  synth->add_option("--domain-y", o.domain_y, "half-height of the field chart");
  synth->add_option("--dt", o.trace_dt, "characteristic step");
  synth->add_option("--kappa", o.kappa, "dissipation gain");
  synth->add_option("--l", o.l, "kinetic factor l");
  synth->add_option("--gamma", o.gamma, "override gamma");
  synth->add_option("--s1", o.s1, "override s'(0)");
  synth->add_option("--r2", o.r2, "override r''(0)");
  auto* sim = app.add_subcommand("simulate", "integrate the closed loop");
  add_common(sim);
  add_controller(sim);
  sim->add_option("--dt", o.dt, "RK4 step");
  sim->add_option("--t-final", o.t_final, "horizon");
  sim->add_option("--ic", o.ic, "x,y,px,py (omit for a seeded batch)");
  sim->add_option("--seed", o.seed, "seed for batch initial conditions");
  sim->add_option("--count", o.count, "batch size");
  sim->add_option("--radius", o.radius, "radius of the initial-condition ball");
  sim->add_option("--record-every", o.record_every, "CSV decimation");
  auto* las = app.add_subcommand("lasalle", "LaSalle chain certificate");
  add_common(las);
  add_controller(las);
  las->add_option("--chain-tol", o.chain_tol, "membership tolerance");
  las->add_option("--chain-radius", o.chain_radius, "localization radius");
  auto* iwp = app.add_subcommand("iwp", "write the inertia wheel pendulum config");
  add_common(iwp);
  iwp->add_option("--grid", o.grid, "grid nodes per axis (odd)");
  iwp->add_option("--domain", o.domain, "half-width of the chart");
  iwp->add_option("-a", o.a);
  iwp->add_option("-b", o.b);
  iwp->add_option("-c", o.c);
  iwp->add_option("-M", o.M);
  auto* exp = app.add_subcommand("export-fields", "write delta.csv and v.csv");
  add_common(exp);
  add_controller(exp);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInput;
  }

  try {
    if (*check) return cmd_check(o);
    if (*gamma) return cmd_gamma(o);
    if (*synth) return cmd_synthesize(o);
    if (*sim) return cmd_simulate(o);
    if (*las) return cmd_lasalle(o);
    if (*iwp) return cmd_iwp(o);
    if (*exp) return cmd_export_fields(o);
  } catch (const lcb::NotStabilizable& e) {
    spdlog::error("{}", e.what());
    emit({{"error", "NotStabilizable"}, {"message", e.what()}});
    return kNegative;
  } catch (const lcb::PositivityLoss& e) {
    spdlog::error("{}", e.what());
    return kCertificate;
  } catch (const lcb::ConfigError& e) {
    spdlog::error("{}", e.what());
    return kInput;
  } catch (const lcb::OutOfDomain& e) {
    spdlog::error("{}", e.what());
    return kInput;
  } catch (const lcb::EvaluationError& e) {
    spdlog::error("{}", e.what());
    return kInput;
  } catch (const lcb::Error& e) {
    spdlog::error("{}", e.what());
    return kNegative;
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return kInput;
  }
  return kInput;
}
