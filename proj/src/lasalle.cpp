#include "lcb/lasalle.hpp"

#include <algorithm>
#include <cmath>

#include "lcb/errors.hpp"
#include "lcb/pde_solver.hpp"

namespace lcb {

KL K_L_values(const Controller& ctrl, double x, double y) {
  const PlantJet p = ctrl.plant(x, y);
  const FieldJet f = ctrl.fields(x, y);
  const double g = ctrl.gamma0();
  return {(p.b_x - g * p.c_x) * f.delta - 0.5 * (p.b * f.delta_x + p.c * f.delta_y),
          p.b * f.v_x + p.c * f.v_y};
}

KL K_L_node(const Controller& ctrl, int i, int j) {
  const Rectangle& d = ctrl.chart();
  const PlantJet p = ctrl.plant(d.x(i), d.y(j));
  const FieldGrid& delta = ctrl.delta();
  const FieldGrid& v = ctrl.v();
  const double g = ctrl.gamma0();
  return {(p.b_x - g * p.c_x) * delta.at(i, j) -
              0.5 * (p.b * delta.fd_x(i, j) + p.c * delta.fd_y(i, j)),
          p.b * v.fd_x(i, j) + p.c * v.fd_y(i, j)};
}

L1Check l1_check(const SystemSpec2D& sys, double gamma0, const BoundaryData& boundary,
                 double tol) {
  if (!(boundary.s0 > 0.0)) throw PreconditionError("s(0) must be positive");
  L1Check out;
  out.forbidden_ratio = l1_forbidden_ratio(sys, gamma0, tol);
  out.ratio = boundary.s1 / boundary.s0;
  out.ok = std::abs(out.ratio - out.forbidden_ratio) > tol;
  return out;
}

L2Check l2_from_M(const SystemSpec2D& sys, double gamma0, double s0, double r2, double tol) {
  L2Check out;
  out.forbidden = gamma_forbidden_l2(sys, gamma0, s0, r2, tol);
  out.ok = std::abs(gamma0 - out.forbidden) > tol;
  return out;
}

LaSalleReport chain_scan(const Controller& ctrl, const ChainOptions& opt) {
  const Rectangle& d = ctrl.chart();
  const SystemSpec2D& sys = ctrl.system();
  const double g = ctrl.gamma0();
  const BoundaryData& bd = ctrl.boundary();

  LaSalleReport rep;
  rep.tol = opt.tol;
  rep.chain_radius = opt.chain_radius;

  // Nodal K and L, then their gradients by a second round of central differences.
  std::vector<double> kv(d.size()), lv(d.size());
  for (int j = 0; j < d.Ny; ++j) {
    for (int i = 0; i < d.Nx; ++i) {
      const KL kl = K_L_node(ctrl, i, j);
      const std::size_t k = ctrl.delta().index(i, j);
      kv[k] = kl.K;
      lv[k] = kl.L;
    }
  }
  const FieldGrid kg(d, kv);
  const FieldGrid lg(d, lv);
  const int ci = d.center_i(), cj = d.center_j();
  rep.K0 = kg.at(ci, cj);
  rep.gradL0 = {lg.fd_x(ci, cj), lg.fd_y(ci, cj)};
  rep.gradL0_nonzero = rep.gradL0.norm() > opt.grad_tol;

  rep.M = lasalle_matrix(sys, g, bd.s0, bd.r2);
  rep.l1 = l1_check(sys, g, bd);
  rep.l1_ok = rep.l1.ok;
  try {
    rep.l2 = l2_from_M(sys, g, bd.s0, bd.r2);
    rep.l2_ok = rep.l2.ok;
  } catch (const SingularQuotient&) {
    rep.l2_ok = false;
  }

  const CharacteristicField cf(sys, g);
  for (int j = 0; j < d.Ny; ++j) {
    for (int i = 0; i < d.Nx; ++i) {
      const double x = d.x(i), y = d.y(j);
      const double K = kg.at(i, j), L = lg.at(i, j);
      const double Kx = kg.fd_x(i, j), Ky = kg.fd_y(i, j);
      const double Lx = lg.fd_x(i, j), Ly = lg.fd_y(i, j);
      const double ax = cf.Ax(x, y), ay = cf.Ay(x, y), big_b = cf.B(x, y);
      const double hx = cf.h_x(x, y);
      for (int n = 0; n < opt.n_px; ++n) {
        const double px =
            opt.n_px == 1 ? 0.0 : opt.px_max * (-1.0 + 2.0 * n / (opt.n_px - 1));
        const double p2 = px * px;
        ++rep.s0_count;
        if (std::abs(K * p2 - L) > opt.tol) continue;
        ++rep.s1_count;
        const double s2 = (ax * (Kx * p2 - Lx) + ay * (Ky * p2 - Ly) -
                           2.0 * K * (0.5 * big_b * p2 + hx)) *
                          px;
        if (std::abs(s2) > opt.tol) continue;
        ++rep.s2_count;
        if (std::abs(hx) > opt.tol) continue;
        ++rep.s3_count;
        const double py = -g * px;
        const double dist = std::sqrt(x * x + y * y + p2 + py * py);
        rep.chain_samples.push_back({x, y, px, py, dist});
        rep.max_chain_distance = std::max(rep.max_chain_distance, dist);
      }
    }
  }
  if (rep.s1_count == 0) {
    throw InconclusiveScan("no sample satisfies the S1 equation; tolerance too tight");
  }
  rep.verdict = rep.l1_ok && rep.l2_ok && rep.gradL0_nonzero &&
                rep.max_chain_distance <= opt.chain_radius;
  return rep;
}

}  // namespace lcb
