// Acceptance gate: one PASS/FAIL line per primary criterion.
//
// Instance: inertia wheel pendulum (a, b, c, M) = (2, 1, 1, 1), gamma = 3,
// s(x) = 1 + 0.1 x, r(x) = x^2, kappa = 1, l = 1.
// Exit status is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "lcb/control_law.hpp"
#include "lcb/errors.hpp"
#include "lcb/iwp.hpp"
#include "lcb/lasalle.hpp"
#include "lcb/pde_solver.hpp"
#include "lcb/simulator.hpp"
#include "lcb/stabilizability.hpp"
#include "lcb/synthesis.hpp"

using namespace lcb;

namespace {

const IwpParams kIwp{2.0, 1.0, 1.0, 1.0};
constexpr double kGamma = 3.0;

struct Outcome {
  bool pass = false;
  std::string detail;
};

SynthesisParams acceptance_params(const Rectangle& chart, double s1 = 0.1) {
  SynthesisParams p;
  p.gamma = kGamma;
  p.s1 = s1;
  p.r2 = 2.0;
  p.profiles = ProfileKind::Polynomial;
  p.l = 1.0;
  p.kappa = 1.0;
  p.chart = chart;
  return p;
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0, double d = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

SystemSpec2D quadratic_system(double a, double b, double c, double hxx, double hxy, double hyy) {
  SystemSpec2D sys;
  sys.a = SmoothField2D::constant(a);
  sys.b = SmoothField2D::constant(b);
  sys.c = SmoothField2D::constant(c);
  sys.h = SmoothField2D::polynomial({{0.0, 0.0, 0.5 * hyy}, {0.0, hxy}, {0.5 * hxx}});
  return sys;
}

Outcome c1_decision() {
  const auto iwp = check_condpos2(iwp_system(kIwp));
  const auto flat = check_condpos2(quadratic_system(1.0, 0.0, 1.0, -1.0, 0.0, 0.0));
  Outcome o;
  o.pass = iwp.stabilizable && iwp.clause_bc == -1.0 && !flat.stabilizable;
  o.detail = fmt("IWP clause_bc=%g stabilizable=%g; (1,0,1),h=-x^2/2 stabilizable=%g",
                 iwp.clause_bc, iwp.stabilizable, flat.stabilizable);
  return o;
}

Outcome c2_existence() {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> ac(0.5, 3.0), hess(-2.0, 2.0), unit(-1.0, 1.0);
  int failures = 0, positive = 0, negative = 0;
  for (int k = 0; k < 200; ++k) {
    const double a = ac(rng), c = ac(rng);
    const double b = 0.95 * std::sqrt(a * c) * unit(rng);
    double hxx = hess(rng), hxy = hess(rng);
    if (k % 4 == 0) {
      // Degenerate draw: b h_xx + c h_xy = 0 with h_xx <= 0.
      hxx = -std::abs(hxx);
      hxy = -b * hxx / c;
    }
    const auto sys = quadratic_system(a, b, c, hxx, hxy, hess(rng));
    const auto v = check_condpos2(sys);
    if (v.stabilizable) {
      ++positive;
      try {
        const auto g = choose_gamma(sys, std::nullopt);
        if (!(condpos_value(sys, g.gamma0) > 0.0)) ++failures;
      } catch (const Error&) {
        ++failures;
      }
    } else {
      ++negative;
      if (brute_force_gamma_exists(sys, -50.0, 50.0, 10000)) ++failures;
    }
  }
  return {failures == 0,
          fmt("%g failures over 200 systems (%g stabilizable, %g not)", failures, positive,
              negative)};
}

struct Solved {
  SystemSpec2D sys;
  FieldGrid delta, v;
};

Solved solve_default() {
  Solved s;
  s.sys = iwp_system(kIwp);
  const auto bd = BoundaryData::polynomial(1.0, 0.1, 2.0);
  s.delta = solve_kinetic(s.sys, kGamma, bd.s, s.sys.domain);
  s.v = solve_potential(s.sys, kGamma, s.delta, bd.r);
  return s;
}

Outcome c3_oracle(const Solved& s) {
  const auto bd = BoundaryData::polynomial(1.0, 0.1, 2.0);
  const Rectangle& d = s.sys.domain;
  double err_d = 0.0, err_v = 0.0;
  for (int j = 0; j < d.Ny; ++j) {
    for (int i = 0; i < d.Nx; ++i) {
      const double x = d.x(i), y = d.y(j);
      err_d = std::max(err_d, std::abs(s.delta.at(i, j) - oracle_delta(kIwp, kGamma, bd.s, x, y)));
      err_v = std::max(err_v, std::abs(s.v.at(i, j) - oracle_v(kIwp, kGamma, bd.s, bd.r, x, y)));
    }
  }
  return {err_d <= 1e-6 && err_v <= 1e-6,
          fmt("max|delta-oracle|=%.3e max|v-oracle|=%.3e (limit 1e-6)", err_d, err_v)};
}

Outcome c4_residuals(const Solved& s, const Controller& ctrl) {
  const double rk = residual_kinetic(s.sys, kGamma, s.delta).max_abs;
  const double rp = residual_potential(s.sys, kGamma, s.delta, s.v).max_abs;
  const double rb = slice_bracket_residual(ctrl);
  return {rk <= 1e-4 && rp <= 1e-4 && rb <= 5e-4,
          fmt("kinetic=%.3e potential=%.3e (limit 1e-4) slice {V,H}=%.3e (limit 5e-4)", rk, rp,
              rb)};
}

Outcome c5_hessian(const Solved& s) {
  const Rectangle& d = s.sys.domain;
  const int i = d.center_i(), j = d.center_j();
  const double vxx = s.v.fd_xx(i, j), vxy = s.v.fd_xy(i, j), vyy = s.v.fd_yy(i, j);
  const auto h = hessian_v_origin(s.sys, kGamma, BoundaryData::polynomial(1.0, 0.1, 2.0));
  const double err = std::max({std::abs(vxx - 2.0), std::abs(vxy + 0.5), std::abs(vyy - 0.25),
                               std::abs(h.hessian.xx - 2.0), std::abs(h.hessian.xy + 0.5),
                               std::abs(h.hessian.yy - 0.25)});
  return {err <= 1e-4 && h.positive_definite,
          fmt("FD Hess v(0)=(%.6f, %.6f, %.6f), positive-definite=%g", vxx, vxy, vyy,
              h.positive_definite)};
}

Outcome c6_identity(const Controller& ctrl) {
  std::mt19937_64 rng(7);
  const Rectangle& d = ctrl.chart();
  std::uniform_real_distribution<double> ux(-d.Lx, d.Lx), uy(-d.Ly, d.Ly), up(-1.0, 1.0);
  double worst = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const State s{ux(rng), uy(rng), up(rng), up(rng)};
    const double r = lyapunov_gradient(ctrl, s).dot(closed_loop_field(ctrl, s)) + mu_value(ctrl, s);
    worst = std::max(worst, std::abs(r));
  }
  return {worst <= 1e-5, fmt("max |<dV,X>+mu| = %.3e over 1000 states (limit 1e-5)", worst)};
}

Outcome c7_lambda(const Controller& ctrl) {
  std::mt19937_64 rng(11);
  const Rectangle& d = ctrl.chart();
  std::uniform_real_distribution<double> ux(-d.Lx, d.Lx), uy(-d.Ly, d.Ly), up(-1.0, 1.0);
  double branch = 0.0, lat = 0.0;
  for (int k = 0; k < 100; ++k) {
    const double px = up(rng);
    const double sign = k % 2 == 0 ? 1.0 : -1.0;
    const State s{ux(rng), uy(rng), px, -kGamma * px + sign * 1e-4};
    branch = std::max(branch, std::abs(lambda_quotient(ctrl, s) - lambda_limit(ctrl, s)));
  }
  for (int k = 0; k < 50; ++k) {
    const double x = ux(rng), y = uy(rng), px = up(rng);
    const State s{x, y, px, -kGamma * px};
    lat = std::max(lat, std::abs(lambda_value(ctrl, s) - lat_value(ctrl, x, y, px)));
  }
  return {branch <= 1e-4 && lat <= 1e-4,
          fmt("quotient-vs-limit %.3e at |d|=1e-4, closed form vs limit %.3e (limit 1e-4)",
              branch, lat)};
}

Outcome c8_closed_loop() {
  // The closed loop swings the wheel angle well past the default chart; use a taller grid.
  const Rectangle chart{0.5, 1.5, 101, 301};
  const auto res = synthesize(iwp_system(kIwp), acceptance_params(chart));
  SimOptions opt;
  opt.t_final = 200.0;
  opt.dt = 1e-3;
  const auto runs = batch_simulate(res.controller, sample_ball(20, 0.2, 42), opt, 1e-3, 1e-5);
  int converged = 0, monotone = 0, identity = 0;
  double worst_norm = 0.0, worst_id = 0.0, worst_inc = 0.0;
  for (const auto& r : runs) {
    converged += r.converged ? 1 : 0;
    monotone += r.decrease.monotone && !r.error ? 1 : 0;
    identity += r.decrease.identity_ok && !r.error ? 1 : 0;
    worst_norm = std::max(worst_norm, r.error ? INFINITY : r.final_norm);
    worst_id = std::max(worst_id, r.decrease.worst_identity);
    worst_inc = std::max(worst_inc, r.decrease.worst_increase);
  }
  std::ostringstream os;
  os << converged << "/20 converged (worst final norm " << worst_norm << "), monotone " << monotone
     << "/20 (worst step increase " << worst_inc << "), |dV/dt+mu| ok " << identity
     << "/20 (worst " << worst_id << ")";
  return {converged == 20 && monotone == 20 && identity == 20, os.str()};
}

Outcome c9_lasalle(const Controller& ctrl) {
  const auto rep = chain_scan(ctrl);
  const auto f2 = iwp_constraints(kIwp, kGamma, 1.0, 0.1, 2.0);
  const double general = gamma_forbidden_l2(iwp_system(kIwp), kGamma, 1.0, 2.0);

  const auto degenerate = synthesize(iwp_system(kIwp), acceptance_params(Rectangle{}, 0.0));
  const auto deg_rep = chain_scan(degenerate.controller);

  const bool k0 = std::abs(rep.K0 + 0.025) <= 1e-6;
  const bool grad = std::abs(rep.gradL0[0] - 1.5) <= 1e-4 && std::abs(rep.gradL0[1] + 0.25) <= 1e-4;
  const bool f2ok = std::abs(f2.f2_forbidden - general) <= 1e-10 &&
                    std::abs(f2.f2_forbidden - 2.2) <= 1e-10;
  const bool chain = rep.verdict && rep.max_chain_distance <= 5e-2;
  std::ostringstream os;
  os << "K(0)=" << rep.K0 << " gradL(0)=(" << rep.gradL0[0] << ", " << rep.gradL0[1]
     << ") f2=" << f2.f2_forbidden << " general=" << general << " chain verdict=" << rep.verdict
     << " (" << rep.chain_samples.size() << " S3 samples, max distance " << rep.max_chain_distance
     << ") s1=0 verdict=" << deg_rep.verdict;
  return {k0 && grad && f2ok && chain && !deg_rep.verdict, os.str()};
}

}  // namespace

int main() {
  int failed = 0;
  auto report = [&](int id, const char* name, const std::function<Outcome()>& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!o.pass) ++failed;
    std::printf("[%s] %d %s: %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str(),
                secs);
    std::fflush(stdout);
  };

  report(1, "stabilizability decision", c1_decision);
  report(2, "existence criterion equivalence", c2_existence);

  const Solved solved = solve_default();
  const auto ctrl_res = synthesize(iwp_system(kIwp), acceptance_params(Rectangle{}));
  const Controller& ctrl = ctrl_res.controller;

  report(3, "PDE oracle match", [&] { return c3_oracle(solved); });
  report(4, "matching residuals", [&] { return c4_residuals(solved, ctrl); });
  report(5, "Hessian certificate", [&] { return c5_hessian(solved); });
  report(6, "LCB identity", [&] { return c6_identity(ctrl); });
  report(7, "lambda continuity", [&] { return c7_lambda(ctrl); });
  report(8, "closed-loop decrease and convergence", c8_closed_loop);
  report(9, "LaSalle certificates", [&] { return c9_lasalle(ctrl); });
  return failed;
}
