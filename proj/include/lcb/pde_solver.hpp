#pragma once

#include <string>

#include "lcb/field_grid.hpp"
#include "lcb/smooth_field.hpp"
#include "lcb/system.hpp"

namespace lcb {

struct TraceOptions {
  double dt = 1e-3;              ///< RK4 step in characteristic time
  long max_steps = 2'000'000;
  double event_tol = 1e-12;      ///< |y| at the refined foot point
  double inflate = 2.0;          ///< escape box is the domain scaled by this factor
  double tol = kDefaultTol;      ///< |b - c gamma| below this is a degeneracy
  bool require_positive = true;  ///< solve_kinetic throws PositivityLoss on delta <= 0
};

/**
 * Result of following the characteristic through a seed node back to the x-axis.
 * G and W are the transport integrals accumulated on the way, so that
 *
 *   delta(seed) = s(foot_x) * exp(-G),   v(seed) = r(foot_x) - delta(seed) * W.
 */
struct CharacteristicTrace {
  double seed_x = 0.0, seed_y = 0.0;
  double foot_x = 0.0, foot_y = 0.0;
  double time = 0.0;  ///< characteristic time to the foot (always >= 0)
  long steps = 0;
  double G = 0.0;
  double W = 0.0;
};

/// Characteristic vector A = (a - b gamma, b - c gamma) and the transport coefficients.
struct CharacteristicField {
  CharacteristicField(const SystemSpec2D& sys, double gamma0);

  double gamma0;
  SmoothField2D a, b, c, a_x, b_x, c_x, h_x;

  double Ax(double x, double y) const { return a(x, y) - b(x, y) * gamma0; }
  double Ay(double x, double y) const { return b(x, y) - c(x, y) * gamma0; }
  /// B = a_x - 2 gamma b_x + gamma^2 c_x.
  double B(double x, double y) const {
    return a_x(x, y) - 2.0 * gamma0 * b_x(x, y) + gamma0 * gamma0 * c_x(x, y);
  }
};

/**
 * Integrates (x', y') = sigma A with RK4, sigma = +-1 chosen so the trace heads
 * for y = 0, and refines the crossing with partial steps until |y| <= event_tol.
 * Throws CharacteristicDegeneracy when |b - c gamma| < tol on the way and
 * TraceEscape when the trace leaves the inflated domain or runs out of steps.
 * For periodic systems x is unwrapped and only y is confined.
 */
CharacteristicTrace trace_to_boundary(const SystemSpec2D& sys, double gamma0, double seed_x,
                                      double seed_y, const TraceOptions& opt = {});
CharacteristicTrace trace_to_boundary(const SystemSpec2D& sys, const CharacteristicField& cf,
                                      double seed_x, double seed_y, const TraceOptions& opt);

/// delta on the grid of `domain` with delta(x, 0) = s(x).
FieldGrid solve_kinetic(const SystemSpec2D& sys, double gamma0, const SmoothField2D& s,
                        const Rectangle& domain, const TraceOptions& opt = {});

/// v on the grid of delta's domain with v(x, 0) = r(x).
FieldGrid solve_potential(const SystemSpec2D& sys, double gamma0, const FieldGrid& delta,
                          const SmoothField2D& r, const TraceOptions& opt = {});

/// Replaces the default nodal slopes of a solved field by slopes consistent with
/// A . grad f = rhs: f_x by fourth-order differences, f_y = (rhs - A_x f_x) / A_y.
void install_pde_slopes(const SystemSpec2D& sys, double gamma0, FieldGrid& field,
                        const std::vector<double>& rhs);

struct Residual {
  double max_abs = 0.0;
  int i = -1;
  int j = -1;
};

/// max |(a - b gamma) delta_x + (b - c gamma) delta_y - B delta| over interior nodes.
Residual residual_kinetic(const SystemSpec2D& sys, double gamma0, const FieldGrid& delta);
/// max |(a - b gamma) v_x + (b - c gamma) v_y - h_x delta| over interior nodes.
Residual residual_potential(const SystemSpec2D& sys, double gamma0, const FieldGrid& delta,
                            const FieldGrid& v);

struct PositivityReport {
  bool delta_positive = true;
  bool v_origin_zero = true;
  bool v_positive = true;
  double delta_min = 0.0;
  double v_origin = 0.0;
  double v_min_off_origin = 0.0;
  int worst_i = -1, worst_j = -1;  ///< first failing node, if any
  /// Largest centered sub-rectangle (as a fraction of the half-widths) on which all checks hold.
  double valid_fraction = 1.0;
  double valid_Lx = 0.0, valid_Ly = 0.0;

  bool ok() const { return delta_positive && v_origin_zero && v_positive; }
};

PositivityReport positivity_report(const FieldGrid& delta, const FieldGrid& v,
                                   double tol = kDefaultTol);

}  // namespace lcb
