#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "lcb/smooth_field.hpp"
#include "lcb/system.hpp"

namespace lcb {

/// Metric entries, their first derivatives and the Hessian of h at the origin.
struct OriginJet {
  double a, b, c;
  double a_x, a_y, b_x, b_y, c_x, c_y;
  double h_xx, h_xy, h_yy;

  double det() const { return a * c - b * b; }
};

OriginJet origin_jet(const SystemSpec2D& sys);

struct StabilizabilityVerdict {
  double clause_bc = 0.0;   ///< [b h_xx + c h_xy](0)
  double clause_hxx = 0.0;  ///< h_xx(0)
  bool stabilizable = false;
};

/// Boundary profiles on the x-axis: delta(x, 0) = s(x), v(x, 0) = r(x), plus their jets at 0.
struct BoundaryData {
  SmoothField2D s;
  SmoothField2D r;
  double s0 = 0.0, s1 = 0.0;
  double r0 = 0.0, r1 = 0.0, r2 = 0.0;

  static BoundaryData from_profiles(SmoothField2D s, SmoothField2D r);
  /// s = s0 + s1 x, r = r2 x^2 / 2.
  static BoundaryData polynomial(double s0, double s1, double r2);
  /// 2*pi-periodic profiles with the same jets: s = s0 + s1 sin x, r = r2 (1 - cos x).
  static BoundaryData periodic(double s0, double s1, double r2);
};

struct GammaChoice {
  double gamma0 = 0.0;
  std::vector<std::string> satisfied;  ///< subset of {"gbc", "c1", "c2", "l2"}
  double margin = 0.5;
  std::string route;    ///< "c1" or "c2"
  double bound = 0.0;   ///< binding bound of the admissible set before the offset
};

struct BoundaryChoice {
  double gamma0 = 0.0;  ///< possibly perturbed to honor the l2 restriction
  bool gamma_adjusted = false;
  BoundaryData boundary;
  double pr2_bound = 0.0;
  double l1_forbidden_ratio = 0.0;
  double l2_forbidden = 0.0;
};

struct VHessian {
  SymmetricHessian hessian;
  double det = 0.0;       ///< v_xx v_yy - v_xy^2 from the three entries
  double factored = 0.0;  ///< same determinant through the condpos factorization
  bool positive_definite = false;
};

StabilizabilityVerdict check_condpos2(const SystemSpec2D& sys, double tol = kDefaultTol);

/// [(a - b g) h_xx + (b - c g) h_xy](0).
double condpos_value(const SystemSpec2D& sys, double gamma0);

/**
 * Picks a constant gamma from the c1 bound when h_xx(0) <= 0 or from the c2 sign table
 * when h_xx(0) > 0, offset from the binding bound by margin * max(1, |bound|).
 * With a boundary guess, the candidate must also avoid the l2 forbidden value.
 * Throws NotStabilizable when condpos2 fails.
 */
GammaChoice choose_gamma(const SystemSpec2D& sys, const std::optional<BoundaryData>& guess,
                         double margin = 0.5, double tol = kDefaultTol);

/// Hessian of v at the origin implied by the potential equation and the boundary jets.
Eigen::Matrix2d lasalle_matrix(const SystemSpec2D& sys, double gamma0, double s0, double r2,
                               double tol = kDefaultTol);

/// ((a,b) M (b,c)^T) / ((b,c) M (b,c)^T) at the origin. Throws SingularQuotient.
double gamma_forbidden_from_matrix(const SystemSpec2D& sys, const Eigen::Matrix2d& m,
                                   double tol = kDefaultTol);
double gamma_forbidden_l2(const SystemSpec2D& sys, double gamma0, double s0, double r2,
                          double tol = kDefaultTol);

/// Lower bound on r''(0) making Hess v(0) positive-definite. Throws SingularQuotient.
double pr2_lower_bound(const SystemSpec2D& sys, double gamma0, double s0,
                       double tol = kDefaultTol);

/// Value that s'(0)/s(0) must avoid so that K(0) != 0.
double l1_forbidden_ratio(const SystemSpec2D& sys, double gamma0, double tol = kDefaultTol);

BoundaryChoice choose_boundary(const SystemSpec2D& sys, double gamma0, double margin = 0.5,
                               double tol = kDefaultTol);

/// Throws GbcViolation when gamma0 = b(0)/c(0).
VHessian hessian_v_origin(const SystemSpec2D& sys, double gamma0, const BoundaryData& boundary,
                          double tol = kDefaultTol);

/// h_xx(0) implied by gamma = b/c, delta(0) and v_xx(0); positive for any admissible pair.
double necessity_branch_check(const SystemSpec2D& sys, double gamma0, double delta0, double vxx0,
                              double tol = kDefaultTol);

/// Oracle: does any of n uniformly spaced gamma in [lo, hi] give condpos > tol?
bool brute_force_gamma_exists(const SystemSpec2D& sys, double gamma_lo, double gamma_hi,
                              int n_samples, double tol = kDefaultTol);

}  // namespace lcb
