#include "lcb/stabilizability.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "lcb/errors.hpp"

namespace lcb {

OriginJet origin_jet(const SystemSpec2D& sys) {
  OriginJet o{};
  o.a = sys.a(0.0, 0.0);
  o.b = sys.b(0.0, 0.0);
  o.c = sys.c(0.0, 0.0);
  o.a_x = sys.a.derivative(1, 0, 0.0, 0.0);
  o.a_y = sys.a.derivative(0, 1, 0.0, 0.0);
  o.b_x = sys.b.derivative(1, 0, 0.0, 0.0);
  o.b_y = sys.b.derivative(0, 1, 0.0, 0.0);
  o.c_x = sys.c.derivative(1, 0, 0.0, 0.0);
  o.c_y = sys.c.derivative(0, 1, 0.0, 0.0);
  const auto hess = hessian_h_origin(sys);
  o.h_xx = hess.xx;
  o.h_xy = hess.xy;
  o.h_yy = hess.yy;
  return o;
}

BoundaryData BoundaryData::from_profiles(SmoothField2D s, SmoothField2D r) {
  BoundaryData d;
  d.s0 = s(0.0, 0.0);
  d.s1 = s.derivative(1, 0, 0.0, 0.0);
  d.r0 = r(0.0, 0.0);
  d.r1 = r.derivative(1, 0, 0.0, 0.0);
  d.r2 = r.derivative(2, 0, 0.0, 0.0);
  d.s = std::move(s);
  d.r = std::move(r);
  return d;
}

BoundaryData BoundaryData::polynomial(double s0, double s1, double r2) {
  return from_profiles(SmoothField2D::polynomial_x({s0, s1}),
                       SmoothField2D::polynomial_x({0.0, 0.0, 0.5 * r2}));
}

BoundaryData BoundaryData::periodic(double s0, double s1, double r2) {
  return from_profiles(SmoothField2D::trig(0.0, s1, s0), SmoothField2D::trig(-r2, 0.0, r2));
}

StabilizabilityVerdict check_condpos2(const SystemSpec2D& sys, double tol) {
  const OriginJet o = origin_jet(sys);
  StabilizabilityVerdict v;
  v.clause_bc = o.b * o.h_xx + o.c * o.h_xy;
  v.clause_hxx = o.h_xx;
  v.stabilizable = std::abs(v.clause_bc) > tol || v.clause_hxx > tol;
  return v;
}

double condpos_value(const SystemSpec2D& sys, double gamma0) {
  const OriginJet o = origin_jet(sys);
  return (o.a - o.b * gamma0) * o.h_xx + (o.b - o.c * gamma0) * o.h_xy;
}

Eigen::Matrix2d lasalle_matrix(const SystemSpec2D& sys, double gamma0, double s0, double r2,
                               double tol) {
  const OriginJet o = origin_jet(sys);
  const double zeta = o.a - o.b * gamma0;
  const double eta = o.b - o.c * gamma0;
  if (std::abs(eta) <= tol) {
    throw GbcViolation("gamma(0) = b(0)/c(0): the x-axis is characteristic");
  }
  const double vxy = (o.h_xx * s0 - zeta * r2) / eta;
  const double vyy = (o.h_xy * s0 * eta - zeta * o.h_xx * s0 + zeta * zeta * r2) / (eta * eta);
  Eigen::Matrix2d m;
  m << r2, vxy, vxy, vyy;
  return m;
}

double gamma_forbidden_from_matrix(const SystemSpec2D& sys, const Eigen::Matrix2d& m, double tol) {
  const OriginJet o = origin_jet(sys);
  const Eigen::Vector2d bc(o.b, o.c);
  const Eigen::Vector2d ab(o.a, o.b);
  const double den = bc.dot(m * bc);
  if (std::abs(den) <= tol) {
    std::ostringstream os;
    os << "l2 denominator (b,c) M (b,c)^T = " << den << " is below tolerance";
    throw SingularQuotient(os.str());
  }
  return ab.dot(m * bc) / den;
}

double gamma_forbidden_l2(const SystemSpec2D& sys, double gamma0, double s0, double r2,
                          double tol) {
  return gamma_forbidden_from_matrix(sys, lasalle_matrix(sys, gamma0, s0, r2, tol), tol);
}

double pr2_lower_bound(const SystemSpec2D& sys, double gamma0, double s0, double tol) {
  const OriginJet o = origin_jet(sys);
  const double cp = condpos_value(sys, gamma0);
  if (std::abs(cp) <= tol) {
    throw SingularQuotient("condpos value vanishes: r''(0) bound is not finite");
  }
  return o.h_xx * o.h_xx * s0 / cp;
}

double l1_forbidden_ratio(const SystemSpec2D& sys, double gamma0, double tol) {
  const OriginJet o = origin_jet(sys);
  const double eta = o.b - o.c * gamma0;
  if (std::abs(eta) <= tol) {
    throw GbcViolation("gamma(0) = b(0)/c(0): the x-axis is characteristic");
  }
  const double big_b = o.a_x - 2.0 * gamma0 * o.b_x + gamma0 * gamma0 * o.c_x;
  return -(2.0 * eta / o.det()) * (o.b_x - gamma0 * o.c_x - big_b * o.c / (2.0 * eta));
}

namespace {

int sign_with_tol(double v, double tol) {
  if (v > tol) return 1;
  if (v < -tol) return -1;
  return 0;
}

struct Admissible {
  std::string route;
  double bound = 0.0;
  bool two_sided = false;
  double lo = 0.0;
  double hi = 0.0;
  double base = 0.0;
  int direction = 1;  // step direction away from the binding bound
};

Admissible admissible_set(const OriginJet& o, const StabilizabilityVerdict& verdict,
                          double margin, double tol) {
  Admissible s;
  auto one_sided = [&](double bound, int direction) {
    s.bound = bound;
    s.direction = direction;
    s.base = bound + direction * margin * std::max(1.0, std::abs(bound));
  };
  auto interval = [&](double lo, double hi) {
    s.two_sided = true;
    s.lo = lo;
    s.hi = hi;
    s.bound = lo;
    s.base = 0.5 * (lo + hi);
  };

  if (verdict.clause_hxx > tol) {
    s.route = "c2";
    const int sb = sign_with_tol(o.b, tol);
    const int sh = sign_with_tol(o.h_xy, tol);
    const double ab = sb != 0 ? o.a / o.b : 0.0;
    const double bc = o.b / o.c;
    if (sb == 0) {
      if (sh == 0) {
        // Any gamma works; stay off b/c so the x-axis is non-characteristic.
        s.bound = bc;
        s.direction = 1;
        s.base = bc + margin;
      } else if (sh < 0) {
        one_sided(0.0, 1);
      } else {
        one_sided(0.0, -1);
      }
    } else if (sb > 0) {
      if (sh == 0) {
        one_sided(ab, -1);
      } else if (sh < 0) {
        interval(bc, ab);
      } else {
        one_sided(std::min(ab, bc), -1);
      }
    } else {
      if (sh == 0) {
        one_sided(ab, 1);
      } else if (sh < 0) {
        one_sided(std::max(ab, bc), 1);
      } else {
        interval(ab, bc);
      }
    }
  } else {
    s.route = "c1";
    const double bound = std::abs((o.a * o.h_xx + o.b * o.h_xy) / verdict.clause_bc);
    const int direction = verdict.clause_bc > 0.0 ? -1 : 1;
    s.bound = direction * bound;
    s.direction = direction;
    s.base = direction * (bound + margin * std::max(1.0, bound));
  }
  return s;
}

std::vector<double> candidates(const Admissible& set, double margin) {
  std::vector<double> out;
  if (set.two_sided) {
    // Dyadic points of the open interval, midpoint first.
    out.push_back(0.5 * (set.lo + set.hi));
    for (int level = 2; level <= 6; ++level) {
      const int parts = 1 << level;
      for (int k = 1; k < parts; k += 2) {
        out.push_back(set.lo + (set.hi - set.lo) * k / parts);
      }
    }
    return out;
  }
  const double step = margin * std::max(1.0, std::abs(set.bound));
  for (int k = 0; k < 64; ++k) out.push_back(set.base + set.direction * k * step);
  return out;
}

bool l2_clear(const SystemSpec2D& sys, double gamma0, double s0, double r2, double tol) {
  try {
    return std::abs(gamma0 - gamma_forbidden_l2(sys, gamma0, s0, r2, tol)) > tol;
  } catch (const SingularQuotient&) {
    return false;
  } catch (const GbcViolation&) {
    return false;
  }
}

}  // namespace

GammaChoice choose_gamma(const SystemSpec2D& sys, const std::optional<BoundaryData>& guess,
                         double margin, double tol) {
  const auto verdict = check_condpos2(sys, tol);
  if (!verdict.stabilizable) {
    std::ostringstream os;
    os << "condpos2 fails: [b h_xx + c h_xy](0) = " << verdict.clause_bc
       << ", h_xx(0) = " << verdict.clause_hxx;
    throw NotStabilizable(os.str());
  }
  const OriginJet o = origin_jet(sys);
  const Admissible set = admissible_set(o, verdict, margin, tol);
  const double gbc = o.b / o.c;

  for (double g : candidates(set, margin)) {
    if (std::abs(g - gbc) <= tol) continue;
    if (!(condpos_value(sys, g) > tol)) continue;
    if (guess && !l2_clear(sys, g, guess->s0, guess->r2, tol)) continue;
    GammaChoice choice;
    choice.gamma0 = g;
    choice.margin = margin;
    choice.route = set.route;
    choice.bound = set.bound;
    choice.satisfied = {"gbc", set.route};
    if (guess) choice.satisfied.push_back("l2");
    return choice;
  }
  throw Error("no admissible gamma found among candidates");
}

BoundaryChoice choose_boundary(const SystemSpec2D& sys, double gamma0, double margin, double tol) {
  BoundaryChoice out;
  double g = gamma0;
  for (int attempt = 0; attempt < 32; ++attempt) {
    if (!(condpos_value(sys, g) > tol)) {
      throw PreconditionError("choose_boundary requires condpos(gamma) > 0");
    }
    const double s0 = 1.0;
    const double forbidden = l1_forbidden_ratio(sys, g, tol);
    double s1 = 0.1;
    if (std::abs(s1 / s0 - forbidden) <= tol) s1 = -0.1;
    const double bound = pr2_lower_bound(sys, g, s0, tol);
    if (!std::isfinite(bound)) throw SingularQuotient("pr2 bound is not finite");
    const double r2 = 2.0 * std::max(bound, 0.0) + 1.0;

    if (l2_clear(sys, g, s0, r2, tol)) {
      out.gamma0 = g;
      out.gamma_adjusted = attempt > 0;
      out.boundary = sys.periodic ? BoundaryData::periodic(s0, s1, r2)
                                  : BoundaryData::polynomial(s0, s1, r2);
      out.pr2_bound = bound;
      out.l1_forbidden_ratio = forbidden;
      out.l2_forbidden = gamma_forbidden_l2(sys, g, s0, r2, tol);
      return out;
    }

    // Perturb gamma by margin, preferring the direction that keeps condpos positive.
    const OriginJet o = origin_jet(sys);
    const double step = margin * std::max(1.0, std::abs(g));
    bool moved = false;
    for (double candidate : {g + step, g - step}) {
      if (std::abs(candidate - o.b / o.c) > tol && condpos_value(sys, candidate) > tol) {
        g = candidate;
        moved = true;
        break;
      }
    }
    if (!moved) break;
  }
  throw Error("could not satisfy the l2 restriction by perturbing gamma");
}

VHessian hessian_v_origin(const SystemSpec2D& sys, double gamma0, const BoundaryData& boundary,
                          double tol) {
  const OriginJet o = origin_jet(sys);
  const double eta = o.b - o.c * gamma0;
  if (std::abs(eta) <= tol) {
    throw GbcViolation("gamma(0) = b(0)/c(0): use necessity_branch_check for this branch");
  }
  const Eigen::Matrix2d m = lasalle_matrix(sys, gamma0, boundary.s0, boundary.r2, tol);
  VHessian out;
  out.hessian = {m(0, 0), m(0, 1), m(1, 1)};
  out.det = m(0, 0) * m(1, 1) - m(0, 1) * m(0, 1);
  const double cp = condpos_value(sys, gamma0);
  out.factored = boundary.s0 / (eta * eta) *
                 (boundary.r2 * cp - o.h_xx * o.h_xx * boundary.s0);
  out.positive_definite = out.hessian.xx > tol && out.det > tol;
  return out;
}

double necessity_branch_check(const SystemSpec2D& sys, double gamma0, double delta0, double vxx0,
                              double tol) {
  const OriginJet o = origin_jet(sys);
  if (std::abs(gamma0 - o.b / o.c) > tol) {
    throw PreconditionError("necessity branch requires gamma(0) = b(0)/c(0)");
  }
  if (!(delta0 > 0.0)) throw PreconditionError("delta(0) must be positive");
  return (o.a - o.b * gamma0) * vxx0 / delta0;
}

bool brute_force_gamma_exists(const SystemSpec2D& sys, double gamma_lo, double gamma_hi,
                              int n_samples, double tol) {
  if (n_samples < 2) throw PreconditionError("brute force needs at least two samples");
  const OriginJet o = origin_jet(sys);
  for (int k = 0; k < n_samples; ++k) {
    const double g = gamma_lo + (gamma_hi - gamma_lo) * k / (n_samples - 1);
    const double value = (o.a - o.b * g) * o.h_xx + (o.b - o.c * g) * o.h_xy;
    if (value > tol) return true;
  }
  return false;
}

}  // namespace lcb
