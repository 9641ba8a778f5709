#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "lcb/smooth_field.hpp"

namespace lcb {

/// Absolute tolerance for the "> 0" and "!= 0" decisions on chart quantities.
inline constexpr double kDefaultTol = 1e-9;

/// Centered chart rectangle [-Lx, Lx] x [-Ly, Ly] sampled on an odd grid so
/// that the origin is a node.
struct Rectangle {
  double Lx = 0.5;
  double Ly = 0.5;
  int Nx = 101;
  int Ny = 101;

  /// Throws ConfigError when a half-width is non-positive or a count is even or < 3.
  void validate() const;

  double hx() const { return 2.0 * Lx / (Nx - 1); }
  double hy() const { return 2.0 * Ly / (Ny - 1); }
  double x(int i) const { return -Lx + i * hx(); }
  double y(int j) const { return -Ly + j * hy(); }
  int center_i() const { return Nx / 2; }
  int center_j() const { return Ny / 2; }
  std::size_t size() const { return static_cast<std::size_t>(Nx) * static_cast<std::size_t>(Ny); }

  /// Inclusive containment with a relative slack of 1e-12 for nodes on the edge.
  bool contains(double x, double y) const;

  bool operator==(const Rectangle&) const = default;
};

/// Open-loop plant H = 1/2 p^T [[a, b], [b, c]] p + h in an actuator-adapted
/// chart centered at the equilibrium; the actuated momentum is p_y.
struct SystemSpec2D {
  SmoothField2D a;
  SmoothField2D b;
  SmoothField2D c;
  SmoothField2D h;
  Rectangle domain;
  bool periodic = false;

  double det(double x, double y) const { return a(x, y) * c(x, y) - b(x, y) * b(x, y); }
};

struct SymmetricHessian {
  double xx = 0.0;
  double xy = 0.0;
  double yy = 0.0;
};

/// One named check over the grid; `worst_*` locate the most offending sample.
struct Check {
  std::string name;
  bool ok = true;
  std::size_t offenders = 0;
  double worst_x = 0.0;
  double worst_y = 0.0;
  double worst_value = 0.0;
};

struct ValidationReport {
  std::vector<Check> checks;

  bool ok() const;
  /// Throws PreconditionError for an unknown name.
  const Check& find(const std::string& name) const;
};

/**
 * Checks a > 0, c > 0 and ac - b^2 > 0 at every grid node, and |grad h(0)| <= tol.
 * Throws EvaluationError (naming the field and point) on a non-finite value.
 */
ValidationReport validate_system(const SystemSpec2D& sys, double tol = kDefaultTol);

/// validate_system, raising ConfigError with the failing checks listed.
void require_valid(const SystemSpec2D& sys, double tol = kDefaultTol);

SymmetricHessian hessian_h_origin(const SystemSpec2D& sys);

}  // namespace lcb
