#include "lcb/iwp.hpp"

#include <cmath>
#include <sstream>

#include "lcb/errors.hpp"

namespace lcb {

void IwpParams::validate() const {
  if (!(a > 0.0 && b > 0.0 && c > 0.0 && M > 0.0)) {
    throw ConfigError("IWP parameters a, b, c, M must be positive");
  }
  if (!(a * c - b * b > 0.0)) {
    std::ostringstream os;
    os << "IWP parameters need ac - b^2 > 0, got " << a * c - b * b;
    throw ConfigError(os.str());
  }
}

SystemSpec2D iwp_system(const IwpParams& p, const Rectangle& domain) {
  p.validate();
  domain.validate();
  SystemSpec2D sys;
  sys.a = SmoothField2D::constant(p.a);
  sys.b = SmoothField2D::constant(p.b);
  sys.c = SmoothField2D::constant(p.c);
  sys.h = SmoothField2D::trig(p.M, 0.0, p.M);
  sys.domain = domain;
  sys.periodic = true;
  return sys;
}

namespace {

void require_oracle_gamma(const IwpParams& p, double gamma0) {
  p.validate();
  if (!(gamma0 > p.a / p.b)) throw ConfigError("closed forms need gamma > a/b");
  if (std::abs(p.b - p.c * gamma0) <= kDefaultTol) throw ConfigError("gamma equals b/c");
}

}  // namespace

double oracle_delta(const IwpParams& p, double gamma0, const SmoothField2D& s, double x,
                    double y) {
  require_oracle_gamma(p, gamma0);
  const double upsilon = (p.a - p.b * gamma0) / (p.b - p.c * gamma0);
  return s(x - upsilon * y, 0.0);
}

double oracle_v(const IwpParams& p, double gamma0, const SmoothField2D& s, const SmoothField2D& r,
                double x, double y) {
  require_oracle_gamma(p, gamma0);
  const double zeta = p.a - p.b * gamma0;
  const double upsilon = zeta / (p.b - p.c * gamma0);
  const double z = x - upsilon * y;
  return p.M * s(z, 0.0) / zeta * (std::cos(x) - std::cos(z)) + r(z, 0.0);
}

IwpConstraints iwp_constraints(const IwpParams& p, double gamma0, double s0, double s1, double r2,
                               double tol) {
  IwpConstraints out;
  const double zeta = p.a - p.b * gamma0;
  const double eta = p.b - p.c * gamma0;
  out.gamma_above_ab = gamma0 > p.a / p.b;
  out.f1_bound = -p.M * s0 / zeta;
  out.f1_ok = r2 > out.f1_bound + tol;
  out.s1_nonzero = std::abs(s1) > tol;

  // (a, b) M (b, c)^T over (b, c) M (b, c)^T with M scaled by eta^2.
  const double q = p.M * s0 + zeta * r2;
  out.f2_numerator = p.a * p.b * eta * eta * r2 - (p.a * p.c + p.b * p.b) * eta * q +
                     p.b * p.c * zeta * q;
  out.f2_denominator = p.b * p.b * eta * eta * r2 - 2.0 * p.b * p.c * eta * q +
                       p.c * p.c * zeta * q;
  if (std::abs(out.f2_denominator) <= tol) {
    out.f2_forbidden = std::nan("");
    out.f2_ok = false;
  } else {
    out.f2_forbidden = out.f2_numerator / out.f2_denominator;
    out.f2_ok = std::abs(gamma0 - out.f2_forbidden) > tol;
  }
  return out;
}

}  // namespace lcb
