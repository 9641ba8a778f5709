#include "lcb/pde_solver.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <sstream>

#include "lcb/errors.hpp"

namespace lcb {

CharacteristicField::CharacteristicField(const SystemSpec2D& sys, double g)
    : gamma0(g),
      a(sys.a),
      b(sys.b),
      c(sys.c),
      a_x(sys.a.differentiated(1, 0)),
      b_x(sys.b.differentiated(1, 0)),
      c_x(sys.c.differentiated(1, 0)),
      h_x(sys.h.differentiated(1, 0)) {}

namespace {

struct Aug {
  double x, y, G, W;
};

Aug rhs(const CharacteristicField& cf, double sigma, const Aug& s) {
  return {sigma * cf.Ax(s.x, s.y), sigma * cf.Ay(s.x, s.y), sigma * cf.B(s.x, s.y),
          sigma * cf.h_x(s.x, s.y) * std::exp(s.G)};
}

Aug axpy(const Aug& s, double h, const Aug& k) {
  return {s.x + h * k.x, s.y + h * k.y, s.G + h * k.G, s.W + h * k.W};
}

Aug rk4_step(const CharacteristicField& cf, double sigma, const Aug& s, double h) {
  const Aug k1 = rhs(cf, sigma, s);
  const Aug k2 = rhs(cf, sigma, axpy(s, 0.5 * h, k1));
  const Aug k3 = rhs(cf, sigma, axpy(s, 0.5 * h, k2));
  const Aug k4 = rhs(cf, sigma, axpy(s, h, k3));
  return {s.x + h / 6.0 * (k1.x + 2.0 * k2.x + 2.0 * k3.x + k4.x),
          s.y + h / 6.0 * (k1.y + 2.0 * k2.y + 2.0 * k3.y + k4.y),
          s.G + h / 6.0 * (k1.G + 2.0 * k2.G + 2.0 * k3.G + k4.G),
          s.W + h / 6.0 * (k1.W + 2.0 * k2.W + 2.0 * k3.W + k4.W)};
}

std::string where(double x, double y) {
  std::ostringstream os;
  os << "(" << x << ", " << y << ")";
  return os.str();
}

CharacteristicTrace trace_in_box(const SystemSpec2D& sys, const CharacteristicField& cf,
                                 double seed_x, double seed_y, const TraceOptions& opt,
                                 const Rectangle& box) {
  CharacteristicTrace tr;
  tr.seed_x = seed_x;
  tr.seed_y = seed_y;
  tr.foot_x = seed_x;
  tr.foot_y = seed_y;
  if (std::abs(seed_y) <= opt.event_tol) return tr;

  const double ay0 = cf.Ay(seed_x, seed_y);
  if (std::abs(ay0) < opt.tol) {
    throw CharacteristicDegeneracy("b - c gamma vanishes at " + where(seed_x, seed_y));
  }
  const double sigma = seed_y * ay0 > 0.0 ? -1.0 : 1.0;
  const double side = seed_y > 0.0 ? 1.0 : -1.0;
  const double xmax = opt.inflate * box.Lx;
  const double ymax = opt.inflate * box.Ly;

  Aug s{seed_x, seed_y, 0.0, 0.0};
  double t = 0.0;
  while (true) {
    if (std::abs(cf.Ay(s.x, s.y)) < opt.tol) {
      throw CharacteristicDegeneracy("b - c gamma vanishes at " + where(s.x, s.y));
    }
    const Aug next = rk4_step(cf, sigma, s, opt.dt);
    ++tr.steps;
    if (!std::isfinite(next.x) || !std::isfinite(next.y) || !std::isfinite(next.G) ||
        !std::isfinite(next.W)) {
      throw TraceEscape("non-finite trace state after " + where(s.x, s.y));
    }
    if (next.y * side <= 0.0) {
      // Crossing inside this step: Illinois false position on partial steps.
      double t_lo = 0.0, y_lo = s.y;
      double t_hi = opt.dt, y_hi = next.y;
      Aug foot = next;
      double tau = opt.dt;
      int stale = 0;
      for (int it = 0; it < 100 && std::abs(foot.y) > opt.event_tol; ++it) {
        tau = t_lo - y_lo * (t_hi - t_lo) / (y_hi - y_lo);
        foot = rk4_step(cf, sigma, s, tau);
        if (foot.y * side > 0.0) {
          t_lo = tau;
          y_lo = foot.y;
          if (stale == -1) y_hi *= 0.5;
          stale = -1;
        } else {
          t_hi = tau;
          y_hi = foot.y;
          if (stale == 1) y_lo *= 0.5;
          stale = 1;
        }
      }
      tr.foot_x = foot.x;
      tr.foot_y = foot.y;
      tr.time = t + tau;
      tr.G = foot.G;
      tr.W = foot.W;
      return tr;
    }
    if (std::abs(next.y) > ymax || (!sys.periodic && std::abs(next.x) > xmax) ||
        tr.steps >= opt.max_steps) {
      throw TraceEscape("characteristic from " + where(seed_x, seed_y) + " escaped at " +
                        where(next.x, next.y));
    }
    s = next;
    t += opt.dt;
  }
}

// Runs fn(k) for every node in parallel; rethrows the error of the lowest failing node.
template <class Fn>
void for_each_node(std::size_t n, Fn fn) {
  std::vector<std::exception_ptr> errors(n);
  const long count = static_cast<long>(n);
#pragma omp parallel for schedule(dynamic, 64)
  for (long k = 0; k < count; ++k) {
    try {
      fn(static_cast<std::size_t>(k));
    } catch (...) {
      errors[k] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace

CharacteristicTrace trace_to_boundary(const SystemSpec2D& sys, const CharacteristicField& cf,
                                      double seed_x, double seed_y, const TraceOptions& opt) {
  return trace_in_box(sys, cf, seed_x, seed_y, opt, sys.domain);
}

CharacteristicTrace trace_to_boundary(const SystemSpec2D& sys, double gamma0, double seed_x,
                                      double seed_y, const TraceOptions& opt) {
  const CharacteristicField cf(sys, gamma0);
  return trace_in_box(sys, cf, seed_x, seed_y, opt, sys.domain);
}

void install_pde_slopes(const SystemSpec2D& sys, double gamma0, FieldGrid& field,
                        const std::vector<double>& rhs) {
  const Rectangle& d = field.domain();
  const CharacteristicField cf(sys, gamma0);
  std::vector<double> fx = grid_dx_fd4(d, field.values());
  std::vector<double> fy(fx.size());
  for (int j = 0; j < d.Ny; ++j) {
    for (int i = 0; i < d.Nx; ++i) {
      const std::size_t k = field.index(i, j);
      const double x = d.x(i);
      const double y = d.y(j);
      fy[k] = (rhs[k] - cf.Ax(x, y) * fx[k]) / cf.Ay(x, y);
    }
  }
  std::vector<double> fxy = grid_dx_fd4(d, fy);
  field.set_slopes(std::move(fx), std::move(fy), std::move(fxy));
}

FieldGrid solve_kinetic(const SystemSpec2D& sys, double gamma0, const SmoothField2D& s,
                        const Rectangle& domain, const TraceOptions& opt) {
  domain.validate();
  const CharacteristicField cf(sys, gamma0);
  std::vector<double> values(domain.size());
  for_each_node(domain.size(), [&](std::size_t k) {
    const int i = static_cast<int>(k % domain.Nx);
    const int j = static_cast<int>(k / domain.Nx);
    const auto tr = trace_in_box(sys, cf, domain.x(i), domain.y(j), opt, domain);
    values[k] = s(tr.foot_x, 0.0) * std::exp(-tr.G);
  });
  if (opt.require_positive) {
    for (std::size_t k = 0; k < values.size(); ++k) {
      if (!(values[k] > 0.0)) {
        const int i = static_cast<int>(k % domain.Nx);
        const int j = static_cast<int>(k / domain.Nx);
        std::ostringstream os;
        os << "delta = " << values[k] << " <= 0 at node " << where(domain.x(i), domain.y(j));
        throw PositivityLoss(os.str());
      }
    }
  }
  FieldGrid delta(domain, values);
  std::vector<double> rhs(values.size());
  for (int j = 0; j < domain.Ny; ++j) {
    for (int i = 0; i < domain.Nx; ++i) {
      const std::size_t k = delta.index(i, j);
      rhs[k] = cf.B(domain.x(i), domain.y(j)) * values[k];
    }
  }
  install_pde_slopes(sys, gamma0, delta, rhs);
  return delta;
}

FieldGrid solve_potential(const SystemSpec2D& sys, double gamma0, const FieldGrid& delta,
                          const SmoothField2D& r, const TraceOptions& opt) {
  const Rectangle& domain = delta.domain();
  const CharacteristicField cf(sys, gamma0);
  std::vector<double> values(domain.size());
  for_each_node(domain.size(), [&](std::size_t k) {
    const int i = static_cast<int>(k % domain.Nx);
    const int j = static_cast<int>(k / domain.Nx);
    const auto tr = trace_in_box(sys, cf, domain.x(i), domain.y(j), opt, domain);
    values[k] = r(tr.foot_x, 0.0) - delta.values()[k] * tr.W;
  });
  FieldGrid v(domain, values);
  std::vector<double> rhs(values.size());
  for (int j = 0; j < domain.Ny; ++j) {
    for (int i = 0; i < domain.Nx; ++i) {
      const std::size_t k = v.index(i, j);
      rhs[k] = cf.h_x(domain.x(i), domain.y(j)) * delta.values()[k];
    }
  }
  install_pde_slopes(sys, gamma0, v, rhs);
  return v;
}

Residual residual_kinetic(const SystemSpec2D& sys, double gamma0, const FieldGrid& delta) {
  const CharacteristicField cf(sys, gamma0);
  const Rectangle& d = delta.domain();
  Residual res;
  for (int j = 1; j < d.Ny - 1; ++j) {
    for (int i = 1; i < d.Nx - 1; ++i) {
      const double x = d.x(i), y = d.y(j);
      const double value = std::abs(cf.Ax(x, y) * delta.fd_x(i, j) +
                                    cf.Ay(x, y) * delta.fd_y(i, j) - cf.B(x, y) * delta.at(i, j));
      if (value > res.max_abs || res.i < 0) res = {value, i, j};
    }
  }
  return res;
}

Residual residual_potential(const SystemSpec2D& sys, double gamma0, const FieldGrid& delta,
                            const FieldGrid& v) {
  const CharacteristicField cf(sys, gamma0);
  const Rectangle& d = v.domain();
  if (!(delta.domain() == d)) throw PreconditionError("delta and v grids differ");
  Residual res;
  for (int j = 1; j < d.Ny - 1; ++j) {
    for (int i = 1; i < d.Nx - 1; ++i) {
      const double x = d.x(i), y = d.y(j);
      const double value = std::abs(cf.Ax(x, y) * v.fd_x(i, j) + cf.Ay(x, y) * v.fd_y(i, j) -
                                    cf.h_x(x, y) * delta.at(i, j));
      if (value > res.max_abs || res.i < 0) res = {value, i, j};
    }
  }
  return res;
}

PositivityReport positivity_report(const FieldGrid& delta, const FieldGrid& v, double tol) {
  const Rectangle& d = v.domain();
  if (!(delta.domain() == d)) throw PreconditionError("delta and v grids differ");
  const int ci = d.center_i();
  const int cj = d.center_j();

  PositivityReport rep;
  rep.delta_min = delta.min_value();
  rep.v_origin = v.at(ci, cj);
  rep.v_origin_zero = std::abs(rep.v_origin) <= tol;
  rep.v_min_off_origin = std::numeric_limits<double>::infinity();

  // Smallest centered half-width (in x nodes) whose rectangle contains a failing node.
  int first_bad_ring = rep.v_origin_zero ? ci + 1 : 0;
  auto ring_of = [&](int i, int j) {
    int m = std::abs(i - ci);
    while (static_cast<int>(std::lround(static_cast<double>(m) * cj / ci)) < std::abs(j - cj)) ++m;
    return m;
  };
  for (int j = 0; j < d.Ny; ++j) {
    for (int i = 0; i < d.Nx; ++i) {
      const bool origin = i == ci && j == cj;
      bool bad = false;
      if (!(delta.at(i, j) > 0.0)) {
        rep.delta_positive = false;
        bad = true;
      }
      if (!origin) {
        rep.v_min_off_origin = std::min(rep.v_min_off_origin, v.at(i, j));
        if (!(v.at(i, j) > 0.0)) {
          rep.v_positive = false;
          bad = true;
        }
      }
      if (bad) {
        if (rep.worst_i < 0) {
          rep.worst_i = i;
          rep.worst_j = j;
        }
        first_bad_ring = std::min(first_bad_ring, ring_of(i, j));
      }
    }
  }
  const int valid = std::max(first_bad_ring - 1, 0);
  rep.valid_fraction = static_cast<double>(valid) / ci;
  rep.valid_Lx = rep.valid_fraction * d.Lx;
  rep.valid_Ly = rep.valid_fraction * d.Ly;
  return rep;
}

}  // namespace lcb
