#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lcb/control_law.hpp"

namespace lcb {

struct SimOptions {
  double t_final = 200.0;
  double dt = 1e-3;
  int record_every = 1;    ///< keep every n-th step (the last step is always kept)
  bool open_loop = false;  ///< lambda forced to 0: plain Hamiltonian flow
};

struct Sample {
  double t = 0.0;
  State s;
  double V = 0.0, mu = 0.0, lambda = 0.0;
  double dVdt = 0.0;  ///< centered difference in t (one-sided at the ends)
};

struct Trajectory {
  std::vector<Sample> samples;
  bool truncated = false;  ///< integration stopped because the state left the chart
  std::string truncation_reason;
  State final_state;
  double final_time = 0.0;
};

/**
 * Fixed-step RK4 on closed_loop_field. Diagnostics are evaluated at every step
 * (dV/dt needs neighbours) and decimated afterwards.
 * Throws OutOfDomain when ic is off the chart and IntegrationBlowup on a non-finite step.
 */
Trajectory integrate(const Controller& ctrl, const State& ic, const SimOptions& opt = {});

struct DecreaseReport {
  bool monotone = true;
  bool identity_ok = true;
  double worst_increase = 0.0;        ///< max V(t_{k+1}) - V(t_k)
  double worst_identity = 0.0;        ///< max |dV/dt + mu| over interior samples
  double worst_identity_t = 0.0;

  bool ok() const { return monotone && identity_ok; }
};

/// Needs at least three samples. Monotonicity slack is mono_slack.
DecreaseReport verify_decrease(const Trajectory& traj, double tol, double mono_slack = 1e-9);

struct RunSummary {
  State ic;
  State final_state;
  double final_norm = 0.0;
  double final_V = 0.0;
  std::size_t samples = 0;
  bool truncated = false;
  DecreaseReport decrease;
  bool converged = false;
  std::optional<std::string> error;
};

/// Independent runs (parallel); per-run errors are recorded, not thrown.
std::vector<RunSummary> batch_simulate(const Controller& ctrl, const std::vector<State>& ics,
                                       const SimOptions& opt, double radius = 1e-3,
                                       double identity_tol = 1e-5);

/// n states uniform in the 4-ball of the given radius, reproducible from seed.
std::vector<State> sample_ball(int n, double radius, unsigned long long seed);

}  // namespace lcb
