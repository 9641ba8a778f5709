#pragma once

#include "lcb/smooth_field.hpp"
#include "lcb/system.hpp"

namespace lcb {

/// Inertia wheel pendulum: H = 1/2 (a p_x^2 + 2 b p_x p_y + c p_y^2) + M (1 + cos x),
/// with x the pendulum angle (upright at 0) and y the wheel angle.
struct IwpParams {
  double a = 2.0, b = 1.0, c = 1.0, M = 1.0;

  /// Throws ConfigError unless a, b, c, M > 0 and ac - b^2 > 0.
  void validate() const;
};

SystemSpec2D iwp_system(const IwpParams& p, const Rectangle& domain = {});

/// delta(x, y) = s(x - U y) with U = (a - b gamma)/(b - c gamma).
double oracle_delta(const IwpParams& p, double gamma0, const SmoothField2D& s, double x,
                    double y);

/// v(x, y) = [M s(z)/(a - b gamma)] (cos x - cos z) + r(z), z = x - U y.
double oracle_v(const IwpParams& p, double gamma0, const SmoothField2D& s, const SmoothField2D& r,
                double x, double y);

struct IwpConstraints {
  bool gamma_above_ab = false;  ///< gamma > a/b
  double f1_bound = 0.0;        ///< r''(0) must exceed -M s(0)/(a - b gamma)
  bool f1_ok = false;
  bool s1_nonzero = false;
  double f2_forbidden = 0.0;
  double f2_numerator = 0.0;
  double f2_denominator = 0.0;
  bool f2_ok = false;

  bool ok() const { return gamma_above_ab && f1_ok && s1_nonzero && f2_ok; }
};

IwpConstraints iwp_constraints(const IwpParams& p, double gamma0, double s0, double s1, double r2,
                               double tol = kDefaultTol);

}  // namespace lcb
