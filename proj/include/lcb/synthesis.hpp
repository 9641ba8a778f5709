#pragma once

#include <optional>

#include "lcb/control_law.hpp"
#include "lcb/pde_solver.hpp"
#include "lcb/stabilizability.hpp"

namespace lcb {

enum class ProfileKind { Auto, Polynomial, Periodic };

struct SynthesisParams {
  std::optional<double> gamma;  ///< skip choose_gamma
  std::optional<double> s1;     ///< override s'(0)
  std::optional<double> r2;     ///< override r''(0)
  ProfileKind profiles = ProfileKind::Auto;  ///< Auto follows the periodic flag
  double l = 1.0;
  double kappa = 1.0;
  double margin = 0.5;
  double tol = kDefaultTol;
  std::optional<Rectangle> chart;  ///< grid for delta and v; defaults to the system domain
  TraceOptions trace;
};

struct SynthesisResult {
  StabilizabilityVerdict verdict;
  std::optional<GammaChoice> gamma_choice;
  BoundaryChoice boundary;
  Controller controller;
  Residual kinetic;
  Residual potential;
  PositivityReport positivity;
  std::optional<VHessian> hessian;
};

/**
 * check_condpos2 -> choose_gamma -> choose_boundary -> solve_kinetic -> solve_potential.
 * Throws ConfigError for an invalid system and NotStabilizable when condpos2 fails.
 */
SynthesisResult synthesize(const SystemSpec2D& sys, const SynthesisParams& params = {});

}  // namespace lcb
