#include "lcb/simulator.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "lcb/errors.hpp"

namespace lcb {

namespace {

bool finite(const Eigen::Vector4d& v) { return v.allFinite(); }

}  // namespace

Trajectory integrate(const Controller& ctrl, const State& ic, const SimOptions& opt) {
  if (!(opt.dt > 0.0) || !(opt.t_final >= 0.0)) throw ConfigError("dt must be positive");
  if (opt.record_every < 1) throw ConfigError("record_every must be >= 1");
  if (!ctrl.contains(ic.x, ic.y)) {
    std::ostringstream os;
    os << "initial state (" << ic.x << ", " << ic.y << ") is outside the controller chart";
    throw OutOfDomain(os.str());
  }

  const long n_steps = std::lround(opt.t_final / opt.dt);
  auto f = [&](const Eigen::Vector4d& z) {
    return closed_loop_field(ctrl, State::from(z), opt.open_loop);
  };

  // Every step is kept in t, z and V; decimation happens at the end.
  std::vector<Eigen::Vector4d> zs;
  std::vector<double> vs;
  zs.reserve(static_cast<std::size_t>(n_steps) + 1);
  vs.reserve(static_cast<std::size_t>(n_steps) + 1);
  Eigen::Vector4d z = ic.vec();
  zs.push_back(z);
  vs.push_back(lyapunov_value(ctrl, ic));

  Trajectory traj;
  for (long k = 0; k < n_steps; ++k) {
    Eigen::Vector4d next;
    try {
      const Eigen::Vector4d k1 = f(z);
      const Eigen::Vector4d k2 = f(z + 0.5 * opt.dt * k1);
      const Eigen::Vector4d k3 = f(z + 0.5 * opt.dt * k2);
      const Eigen::Vector4d k4 = f(z + opt.dt * k3);
      next = z + opt.dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      if (!finite(next)) {
        std::ostringstream os;
        os << "non-finite state after t = " << k * opt.dt << "; last good state (" << z[0]
           << ", " << z[1] << ", " << z[2] << ", " << z[3] << ")";
        throw IntegrationBlowup(os.str());
      }
      if (!ctrl.contains(next[0], next[1])) throw OutOfDomain("state left the chart");
    } catch (const OutOfDomain& e) {
      traj.truncated = true;
      std::ostringstream os;
      os << "left the chart near t = " << k * opt.dt << ": " << e.what();
      traj.truncation_reason = os.str();
      break;
    }
    z = next;
    zs.push_back(z);
    vs.push_back(lyapunov_value(ctrl, State::from(z)));
  }

  const std::size_t n = zs.size();
  for (std::size_t k = 0; k < n; ++k) {
    if (k % static_cast<std::size_t>(opt.record_every) != 0 && k + 1 != n) continue;
    Sample smp;
    smp.t = static_cast<double>(k) * opt.dt;
    smp.s = State::from(zs[k]);
    smp.V = vs[k];
    smp.mu = mu_value(ctrl, smp.s);
    smp.lambda = opt.open_loop ? 0.0 : lambda_value(ctrl, smp.s);
    if (n == 1) {
      smp.dVdt = 0.0;
    } else if (k == 0) {
      smp.dVdt = (vs[1] - vs[0]) / opt.dt;
    } else if (k + 1 == n) {
      smp.dVdt = (vs[k] - vs[k - 1]) / opt.dt;
    } else {
      smp.dVdt = (vs[k + 1] - vs[k - 1]) / (2.0 * opt.dt);
    }
    traj.samples.push_back(smp);
  }
  traj.final_state = State::from(zs.back());
  traj.final_time = static_cast<double>(n - 1) * opt.dt;
  return traj;
}

DecreaseReport verify_decrease(const Trajectory& traj, double tol, double mono_slack) {
  const auto& s = traj.samples;
  if (s.size() < 3) throw PreconditionError("verify_decrease needs at least three samples");
  DecreaseReport rep;
  for (std::size_t k = 0; k + 1 < s.size(); ++k) {
    const double inc = s[k + 1].V - s[k].V;
    if (inc > rep.worst_increase) rep.worst_increase = inc;
    if (inc > mono_slack) rep.monotone = false;
  }
  for (std::size_t k = 1; k + 1 < s.size(); ++k) {
    const double err = std::abs(s[k].dVdt + s[k].mu);
    if (err > rep.worst_identity) {
      rep.worst_identity = err;
      rep.worst_identity_t = s[k].t;
    }
  }
  rep.identity_ok = rep.worst_identity <= tol;
  return rep;
}

std::vector<RunSummary> batch_simulate(const Controller& ctrl, const std::vector<State>& ics,
                                       const SimOptions& opt, double radius,
                                       double identity_tol) {
  std::vector<RunSummary> out(ics.size());
  const long count = static_cast<long>(ics.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (long k = 0; k < count; ++k) {
    RunSummary& r = out[k];
    r.ic = ics[k];
    try {
      const Trajectory traj = integrate(ctrl, ics[k], opt);
      r.final_state = traj.final_state;
      r.final_norm = traj.final_state.norm();
      r.final_V = traj.samples.back().V;
      r.samples = traj.samples.size();
      r.truncated = traj.truncated;
      if (traj.samples.size() >= 3) r.decrease = verify_decrease(traj, identity_tol);
      r.converged = !traj.truncated && r.final_norm <= radius;
      if (traj.truncated) r.error = traj.truncation_reason;
    } catch (const std::exception& e) {
      r.error = e.what();
    }
  }
  return out;
}

std::vector<State> sample_ball(int n, double radius, unsigned long long seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<State> out;
  out.reserve(n);
  for (int k = 0; k < n; ++k) {
    Eigen::Vector4d u;
    for (int c = 0; c < 4; ++c) u[c] = normal(rng);
    u.normalize();
    const double rho = radius * std::pow(unif(rng), 0.25);
    out.push_back(State::from(rho * u));
  }
  return out;
}

}  // namespace lcb
