#pragma once

#include <Eigen/Core>

#include "lcb/field_grid.hpp"
#include "lcb/stabilizability.hpp"
#include "lcb/system.hpp"

namespace lcb {

/// Chart coordinates and momenta; p_y is the actuated momentum.
struct State {
  double x = 0.0, y = 0.0, px = 0.0, py = 0.0;

  Eigen::Vector4d vec() const { return {x, y, px, py}; }
  static State from(const Eigen::Vector4d& v) { return {v[0], v[1], v[2], v[3]}; }
  double norm() const { return vec().norm(); }
};

/// Values of a, b, c, h and their first partials at a point.
struct PlantJet {
  double a, b, c;
  double a_x, a_y, b_x, b_y, c_x, c_y;
  double h_x, h_y;
};

/// delta, v and gradients at a point. The y-partials are the ones implied by the
/// kinetic and potential equations, so A . grad matches the right-hand sides exactly.
struct FieldJet {
  double delta, delta_x, delta_y;
  double v, v_x, v_y;
};

/**
 * Assembled feedback: V = 1/2 delta p_x^2 + 1/2 l (gamma p_x + p_y)^2 + v,
 * mu = kappa l^2 (gamma p_x + p_y)^2 and the lambda that makes dV/dt = -mu.
 */
class Controller {
 public:
  /// Throws ConfigError for l <= 0, kappa < 0, mismatched grids or delta <= 0.
  Controller(SystemSpec2D sys, double gamma0, FieldGrid delta, FieldGrid v, double l = 1.0,
             double kappa = 1.0, BoundaryData boundary = {});

  const SystemSpec2D& system() const { return sys_; }
  double gamma0() const { return gamma0_; }
  double l() const { return l_; }
  double kappa() const { return kappa_; }
  const FieldGrid& delta() const { return delta_; }
  const FieldGrid& v() const { return v_; }
  const BoundaryData& boundary() const { return boundary_; }
  const Rectangle& chart() const { return delta_.domain(); }

  bool contains(double x, double y) const { return delta_.contains(x, y); }

  PlantJet plant(double x, double y) const;
  /// Throws OutOfDomain off the field grid.
  FieldJet fields(double x, double y) const;

  double hamiltonian(const State& s) const;
  /// (H_x, H_y, H_px, H_py).
  Eigen::Vector4d hamiltonian_gradient(const State& s) const;

 private:
  SystemSpec2D sys_;
  double gamma0_;
  FieldGrid delta_;
  FieldGrid v_;
  double l_;
  double kappa_;
  BoundaryData boundary_;
  SmoothField2D a_x_, a_y_, b_x_, b_y_, c_x_, c_y_, h_x_, h_y_;
};

/// Threshold on |gamma p_x + p_y| below which lambda uses the limit formula.
inline constexpr double kLambdaSingularity = 1e-6;

double lyapunov_value(const Controller& ctrl, const State& s);
/// (V_x, V_y, V_px, V_py).
Eigen::Vector4d lyapunov_gradient(const Controller& ctrl, const State& s);

struct VMatrix {
  Eigen::Matrix2d m;
  bool positive_definite = false;
};
/// [[delta + gamma^2 l, gamma l], [gamma l, l]] at (x, y).
VMatrix reconstruct_V_matrix(const Controller& ctrl, double x, double y);

double mu_value(const Controller& ctrl, const State& s);

/// {V,H} = V_x H_px + V_y H_py - V_px H_x - V_py H_y.
double poisson_bracket_VH(const Controller& ctrl, const State& s);

double lambda_quotient(const Controller& ctrl, const State& s);
/// -kappa d l - (1/l) d{V,H}/dp_y by central difference in p_y.
double lambda_limit(const Controller& ctrl, const State& s);
/// Quotient branch, or the limit branch when |gamma p_x + p_y| < kLambdaSingularity.
double lambda_value(const Controller& ctrl, const State& s);

/// Closed form of lambda on p_y = -gamma p_x for constant gamma.
double lat_value(const Controller& ctrl, double x, double y, double px);

/// (H_px, H_py, -H_x, -H_y + lambda); lambda is dropped when open_loop is set.
Eigen::Vector4d closed_loop_field(const Controller& ctrl, const State& s, bool open_loop = false);

/// max |{V,H}| on p_y = -gamma p_x over interior nodes and n_px momenta in [-1, 1],
/// with every x, y derivative taken as a central difference of the nodal fields.
double slice_bracket_residual(const Controller& ctrl, int n_px = 41);

}  // namespace lcb
