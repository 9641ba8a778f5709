#include "lcb/control_law.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "lcb/errors.hpp"

namespace lcb {

Controller::Controller(SystemSpec2D sys, double gamma0, FieldGrid delta, FieldGrid v, double l,
                       double kappa, BoundaryData boundary)
    : sys_(std::move(sys)),
      gamma0_(gamma0),
      delta_(std::move(delta)),
      v_(std::move(v)),
      l_(l),
      kappa_(kappa),
      boundary_(std::move(boundary)) {
  if (!(l_ > 0.0)) throw ConfigError("l must be positive");
  if (!(kappa_ >= 0.0)) throw ConfigError("kappa must be non-negative");
  if (!(delta_.domain() == v_.domain())) throw ConfigError("delta and v grids differ");
  if (!(delta_.min_value() > 0.0)) throw ConfigError("delta must be positive on the grid");
  a_x_ = sys_.a.differentiated(1, 0);
  a_y_ = sys_.a.differentiated(0, 1);
  b_x_ = sys_.b.differentiated(1, 0);
  b_y_ = sys_.b.differentiated(0, 1);
  c_x_ = sys_.c.differentiated(1, 0);
  c_y_ = sys_.c.differentiated(0, 1);
  h_x_ = sys_.h.differentiated(1, 0);
  h_y_ = sys_.h.differentiated(0, 1);
}

PlantJet Controller::plant(double x, double y) const {
  return {sys_.a(x, y),  sys_.b(x, y),  sys_.c(x, y),  a_x_(x, y),
          a_y_(x, y),    b_x_(x, y),    b_y_(x, y),    c_x_(x, y),
          c_y_(x, y),    h_x_(x, y),    h_y_(x, y)};
}

FieldJet Controller::fields(double x, double y) const {
  const PlantJet p = plant(x, y);
  const double g = gamma0_;
  const double ax = p.a - p.b * g;
  const double ay = p.b - p.c * g;
  const double big_b = p.a_x - 2.0 * g * p.b_x + g * g * p.c_x;
  Eigen::Vector2d gd, gv;
  FieldJet f;
  f.delta = delta_.eval(x, y, &gd);
  f.v = v_.eval(x, y, &gv);
  f.delta_x = gd[0];
  f.v_x = gv[0];
  f.delta_y = (big_b * f.delta - ax * f.delta_x) / ay;
  f.v_y = (p.h_x * f.delta - ax * f.v_x) / ay;
  return f;
}

double Controller::hamiltonian(const State& s) const {
  const double a = sys_.a(s.x, s.y), b = sys_.b(s.x, s.y), c = sys_.c(s.x, s.y);
  return 0.5 * (a * s.px * s.px + 2.0 * b * s.px * s.py + c * s.py * s.py) + sys_.h(s.x, s.y);
}

Eigen::Vector4d Controller::hamiltonian_gradient(const State& s) const {
  const PlantJet p = plant(s.x, s.y);
  const double px = s.px, py = s.py;
  return {0.5 * (p.a_x * px * px + 2.0 * p.b_x * px * py + p.c_x * py * py) + p.h_x,
          0.5 * (p.a_y * px * px + 2.0 * p.b_y * px * py + p.c_y * py * py) + p.h_y,
          p.a * px + p.b * py, p.b * px + p.c * py};
}

namespace {

double d_of(const Controller& ctrl, const State& s) { return ctrl.gamma0() * s.px + s.py; }

Eigen::Vector4d v_gradient(const Controller& ctrl, const State& s, const FieldJet& f) {
  const double d = d_of(ctrl, s);
  const double l = ctrl.l();
  return {0.5 * f.delta_x * s.px * s.px + f.v_x, 0.5 * f.delta_y * s.px * s.px + f.v_y,
          f.delta * s.px + ctrl.gamma0() * l * d, l * d};
}

double bracket(const Eigen::Vector4d& dV, const Eigen::Vector4d& dH) {
  return dV[0] * dH[2] + dV[1] * dH[3] - dV[2] * dH[0] - dV[3] * dH[1];
}

}  // namespace

double lyapunov_value(const Controller& ctrl, const State& s) {
  const double d = d_of(ctrl, s);
  const double delta = ctrl.delta()(s.x, s.y);
  return 0.5 * delta * s.px * s.px + 0.5 * ctrl.l() * d * d + ctrl.v()(s.x, s.y);
}

Eigen::Vector4d lyapunov_gradient(const Controller& ctrl, const State& s) {
  return v_gradient(ctrl, s, ctrl.fields(s.x, s.y));
}

VMatrix reconstruct_V_matrix(const Controller& ctrl, double x, double y) {
  const double delta = ctrl.delta()(x, y);
  const double g = ctrl.gamma0();
  const double l = ctrl.l();
  VMatrix out;
  out.m << delta + g * g * l, g * l, g * l, l;
  const double f = out.m(0, 0);
  out.positive_definite = f > 0.0 && f * l - g * g * l * l > 0.0;
  return out;
}

double mu_value(const Controller& ctrl, const State& s) {
  const double d = d_of(ctrl, s);
  return ctrl.kappa() * ctrl.l() * ctrl.l() * d * d;
}

double poisson_bracket_VH(const Controller& ctrl, const State& s) {
  return bracket(lyapunov_gradient(ctrl, s), ctrl.hamiltonian_gradient(s));
}

double lambda_quotient(const Controller& ctrl, const State& s) {
  const double d = d_of(ctrl, s);
  const double l = ctrl.l();
  return -ctrl.kappa() * d * l - poisson_bracket_VH(ctrl, s) / (d * l);
}

double lambda_limit(const Controller& ctrl, const State& s) {
  const double d = d_of(ctrl, s);
  const double l = ctrl.l();
  const double scale = std::max({1.0, std::abs(s.px), std::abs(s.py)});
  const double e = 1e-6 * scale;
  // Field values do not depend on p, so one field evaluation serves both sides.
  const FieldJet f = ctrl.fields(s.x, s.y);
  State up = s, dn = s;
  up.py += e;
  dn.py -= e;
  const double b_up = bracket(v_gradient(ctrl, up, f), ctrl.hamiltonian_gradient(up));
  const double b_dn = bracket(v_gradient(ctrl, dn, f), ctrl.hamiltonian_gradient(dn));
  return -ctrl.kappa() * d * l - (b_up - b_dn) / (2.0 * e) / l;
}

double lambda_value(const Controller& ctrl, const State& s) {
  if (std::abs(d_of(ctrl, s)) < kLambdaSingularity) return lambda_limit(ctrl, s);
  return lambda_quotient(ctrl, s);
}

double lat_value(const Controller& ctrl, double x, double y, double px) {
  const PlantJet p = ctrl.plant(x, y);
  const FieldJet f = ctrl.fields(x, y);
  const double g = ctrl.gamma0();
  const double l = ctrl.l();
  const double big_b = p.a_x - 2.0 * g * p.b_x + g * g * p.c_x;
  const double big_c = p.a_y - 2.0 * g * p.b_y + g * g * p.c_y;
  const double k = (p.b_x - g * p.c_x) * f.delta - 0.5 * (p.b * f.delta_x + p.c * f.delta_y);
  const double big_l = p.b * f.v_x + p.c * f.v_y;
  return (0.5 * (big_b * g + big_c) + k / l) * px * px + g * p.h_x + p.h_y - big_l / l;
}

Eigen::Vector4d closed_loop_field(const Controller& ctrl, const State& s, bool open_loop) {
  if (!ctrl.contains(s.x, s.y)) {
    std::ostringstream os;
    os << "state (" << s.x << ", " << s.y << ") is outside the controller chart";
    throw OutOfDomain(os.str());
  }
  const Eigen::Vector4d dH = ctrl.hamiltonian_gradient(s);
  const double lambda = open_loop ? 0.0 : lambda_value(ctrl, s);
  return {dH[2], dH[3], -dH[0], -dH[1] + lambda};
}

double slice_bracket_residual(const Controller& ctrl, int n_px) {
  const FieldGrid& delta = ctrl.delta();
  const FieldGrid& v = ctrl.v();
  const Rectangle& d = delta.domain();
  const double g = ctrl.gamma0();
  double worst = 0.0;
  for (int j = 1; j < d.Ny - 1; ++j) {
    for (int i = 1; i < d.Nx - 1; ++i) {
      const double x = d.x(i), y = d.y(j);
      const FieldJet f{delta.at(i, j), delta.fd_x(i, j), delta.fd_y(i, j),
                       v.at(i, j),     v.fd_x(i, j),     v.fd_y(i, j)};
      for (int k = 0; k < n_px; ++k) {
        const double px = n_px == 1 ? 0.0 : -1.0 + 2.0 * k / (n_px - 1);
        const State s{x, y, px, -g * px};
        const double value = bracket(v_gradient(ctrl, s, f), ctrl.hamiltonian_gradient(s));
        worst = std::max(worst, std::abs(value));
      }
    }
  }
  return worst;
}

}  // namespace lcb
