#include "lcb/system.hpp"

#include <cmath>
#include <sstream>

#include "lcb/errors.hpp"

namespace lcb {

void Rectangle::validate() const {
  if (!(Lx > 0.0) || !(Ly > 0.0)) {
    throw ConfigError("domain half-widths must be positive");
  }
  if (Nx < 3 || Ny < 3 || Nx % 2 == 0 || Ny % 2 == 0) {
    throw ConfigError("grid counts must be odd and >= 3");
  }
}

bool Rectangle::contains(double x, double y) const {
  const double sx = Lx * (1.0 + 1e-12);
  const double sy = Ly * (1.0 + 1e-12);
  return std::abs(x) <= sx && std::abs(y) <= sy;
}

bool ValidationReport::ok() const {
  for (const auto& c : checks) {
    if (!c.ok) return false;
  }
  return true;
}

const Check& ValidationReport::find(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return c;
  }
  throw PreconditionError("no check named " + name);
}

namespace {

double finite_or_throw(const char* field, double value, double x, double y) {
  if (!std::isfinite(value)) {
    std::ostringstream os;
    os << "field " << field << " is not finite at (" << x << ", " << y << ")";
    throw EvaluationError(os.str());
  }
  return value;
}

// Records a sample that fails `value > tol`; the worst sample is the smallest value.
void record_positive(Check& check, double value, double tol, double x, double y) {
  if (value > tol) return;
  if (check.offenders == 0 || value < check.worst_value) {
    check.worst_value = value;
    check.worst_x = x;
    check.worst_y = y;
  }
  ++check.offenders;
  check.ok = false;
}

}  // namespace

ValidationReport validate_system(const SystemSpec2D& sys, double tol) {
  sys.domain.validate();
  Check a_pos{"a_positive"};
  Check c_pos{"c_positive"};
  Check det_pos{"det_positive"};
  for (int j = 0; j < sys.domain.Ny; ++j) {
    const double y = sys.domain.y(j);
    for (int i = 0; i < sys.domain.Nx; ++i) {
      const double x = sys.domain.x(i);
      const double a = finite_or_throw("a", sys.a(x, y), x, y);
      const double b = finite_or_throw("b", sys.b(x, y), x, y);
      const double c = finite_or_throw("c", sys.c(x, y), x, y);
      finite_or_throw("h", sys.h(x, y), x, y);
      record_positive(a_pos, a, tol, x, y);
      record_positive(c_pos, c, tol, x, y);
      record_positive(det_pos, a * c - b * b, tol, x, y);
    }
  }

  Check critical{"critical_point"};
  const double hx = finite_or_throw("h_x", sys.h.derivative(1, 0, 0.0, 0.0), 0.0, 0.0);
  const double hy = finite_or_throw("h_y", sys.h.derivative(0, 1, 0.0, 0.0), 0.0, 0.0);
  const double grad = std::hypot(hx, hy);
  critical.worst_value = grad;
  if (grad > tol) {
    critical.ok = false;
    critical.offenders = 1;
  }

  ValidationReport report;
  report.checks = {a_pos, c_pos, det_pos, critical};
  return report;
}

void require_valid(const SystemSpec2D& sys, double tol) {
  const auto report = validate_system(sys, tol);
  if (report.ok()) return;
  std::ostringstream os;
  os << "system validation failed:";
  for (const auto& c : report.checks) {
    if (!c.ok) {
      os << ' ' << c.name << " (worst " << c.worst_value << " at " << c.worst_x << ", "
         << c.worst_y << ")";
    }
  }
  throw ConfigError(os.str());
}

SymmetricHessian hessian_h_origin(const SystemSpec2D& sys) {
  return {sys.h.derivative(2, 0, 0.0, 0.0), sys.h.derivative(1, 1, 0.0, 0.0),
          sys.h.derivative(0, 2, 0.0, 0.0)};
}

}  // namespace lcb
