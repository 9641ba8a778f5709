#include "lcb/io.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "lcb/errors.hpp"

namespace lcb {

namespace {

template <class T>
T get(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ConfigError(std::string("missing key: ") + key);
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad value for ") + key + ": " + e.what());
  }
}

std::vector<double> numbers(const json& j, const char* key) {
  return get<std::vector<double>>(j, key);
}

}  // namespace

json field_to_json(const SmoothField2D& f) {
  const double alpha = f.cos_coefficient();
  const double beta = f.sin_coefficient();
  if (alpha != 0.0 && beta == 0.0 && f.degree_x() == 0 && f.degree_y() == 0 &&
      f.coefficient(0, 0) == alpha) {
    return {{"trig", {{"M", alpha}}}};
  }
  json out = {{"coeffs", f.coefficient_table()}};
  if (alpha != 0.0) out["cos"] = alpha;
  if (beta != 0.0) out["sin"] = beta;
  return out;
}

SmoothField2D field_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("field spec must be an object");
  SmoothField2D f;
  bool any = false;
  if (j.contains("coeffs")) {
    f = f + SmoothField2D::polynomial(get<std::vector<std::vector<double>>>(j, "coeffs"));
    any = true;
  }
  if (j.contains("trig")) {
    const double m = get<double>(j.at("trig"), "M");
    f = f + SmoothField2D::trig(m, 0.0, m);
    any = true;
  }
  if (j.contains("cos") || j.contains("sin")) {
    const double alpha = j.contains("cos") ? get<double>(j, "cos") : 0.0;
    const double beta = j.contains("sin") ? get<double>(j, "sin") : 0.0;
    f = f + SmoothField2D::trig(alpha, beta);
    any = true;
  }
  if (!any) throw ConfigError("field spec needs coeffs, trig, cos or sin");
  return f;
}

json rectangle_to_json(const Rectangle& r) {
  return {{"Lx", r.Lx}, {"Ly", r.Ly}, {"Nx", r.Nx}, {"Ny", r.Ny}};
}

Rectangle rectangle_from_json(const json& j) {
  Rectangle r{get<double>(j, "Lx"), get<double>(j, "Ly"), get<int>(j, "Nx"), get<int>(j, "Ny")};
  r.validate();
  return r;
}

json system_to_json(const SystemSpec2D& sys) {
  return {{"a", field_to_json(sys.a)},
          {"b", field_to_json(sys.b)},
          {"c", field_to_json(sys.c)},
          {"h", field_to_json(sys.h)},
          {"domain", rectangle_to_json(sys.domain)},
          {"periodic", sys.periodic}};
}

SystemSpec2D system_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("system config must be a JSON object");
  SystemSpec2D sys;
  for (const char* key : {"a", "b", "c", "h"}) {
    if (!j.contains(key)) throw ConfigError(std::string("missing key: ") + key);
  }
  sys.a = field_from_json(j.at("a"));
  sys.b = field_from_json(j.at("b"));
  sys.c = field_from_json(j.at("c"));
  sys.h = field_from_json(j.at("h"));
  if (j.contains("domain")) sys.domain = rectangle_from_json(j.at("domain"));
  sys.periodic = j.contains("periodic") ? get<bool>(j, "periodic") : false;
  return sys;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError("cannot parse " + path + ": " + e.what());
  }
}

void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write " + path);
  out << j.dump(2) << '\n';
}

json boundary_to_json(const BoundaryData& b) {
  return {{"s", field_to_json(b.s)}, {"r", field_to_json(b.r)}, {"s0", b.s0}, {"s1", b.s1},
          {"r0", b.r0},              {"r1", b.r1},              {"r2", b.r2}};
}

BoundaryData boundary_from_json(const json& j) {
  return BoundaryData::from_profiles(field_from_json(j.at("s")), field_from_json(j.at("r")));
}

json controller_to_json(const Controller& ctrl) {
  return {{"gamma", ctrl.gamma0()},
          {"kappa", ctrl.kappa()},
          {"l", ctrl.l()},
          {"grid", rectangle_to_json(ctrl.chart())},
          {"delta", ctrl.delta().values()},
          {"v", ctrl.v().values()},
          {"boundary", boundary_to_json(ctrl.boundary())},
          {"system", system_to_json(ctrl.system())}};
}

Controller controller_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("controller file must be a JSON object");
  const SystemSpec2D sys = system_from_json(j.contains("system") ? j.at("system") : json());
  const double gamma0 = get<double>(j, "gamma");
  const Rectangle grid = rectangle_from_json(j.at("grid"));
  FieldGrid delta(grid, numbers(j, "delta"));
  FieldGrid v(grid, numbers(j, "v"));
  const CharacteristicField cf(sys, gamma0);
  std::vector<double> rhs_d(grid.size()), rhs_v(grid.size());
  for (int jj = 0; jj < grid.Ny; ++jj) {
    for (int i = 0; i < grid.Nx; ++i) {
      const std::size_t k = delta.index(i, jj);
      rhs_d[k] = cf.B(grid.x(i), grid.y(jj)) * delta.values()[k];
      rhs_v[k] = cf.h_x(grid.x(i), grid.y(jj)) * delta.values()[k];
    }
  }
  install_pde_slopes(sys, gamma0, delta, rhs_d);
  install_pde_slopes(sys, gamma0, v, rhs_v);
  BoundaryData bd = j.contains("boundary") ? boundary_from_json(j.at("boundary")) : BoundaryData{};
  return Controller(sys, gamma0, std::move(delta), std::move(v), get<double>(j, "l"),
                    get<double>(j, "kappa"), std::move(bd));
}

json to_json(const ValidationReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks) {
    checks.push_back({{"name", c.name},
                      {"ok", c.ok},
                      {"offenders", c.offenders},
                      {"worst", {c.worst_x, c.worst_y}},
                      {"worst_value", c.worst_value}});
  }
  return {{"ok", r.ok()}, {"checks", checks}};
}

json to_json(const StabilizabilityVerdict& v) {
  return {{"clause_bc", v.clause_bc},
          {"clause_hxx", v.clause_hxx},
          {"stabilizable", v.stabilizable}};
}

json to_json(const GammaChoice& g) {
  return {{"gamma0", g.gamma0},
          {"satisfied", g.satisfied},
          {"margin", g.margin},
          {"route", g.route},
          {"bound", g.bound}};
}

json to_json(const BoundaryChoice& b) {
  return {{"gamma0", b.gamma0},
          {"gamma_adjusted", b.gamma_adjusted},
          {"boundary", boundary_to_json(b.boundary)},
          {"pr2_bound", b.pr2_bound},
          {"l1_forbidden_ratio", b.l1_forbidden_ratio},
          {"l2_forbidden", b.l2_forbidden}};
}

json to_json(const VHessian& h) {
  return {{"v_xx", h.hessian.xx},
          {"v_xy", h.hessian.xy},
          {"v_yy", h.hessian.yy},
          {"det", h.det},
          {"factored", h.factored},
          {"positive_definite", h.positive_definite}};
}

json to_json(const Residual& r, const Rectangle& d) {
  json out = {{"max_abs", r.max_abs}};
  if (r.i >= 0) out["at"] = {d.x(r.i), d.y(r.j)};
  return out;
}

json to_json(const PositivityReport& p) {
  return {{"ok", p.ok()},
          {"delta_positive", p.delta_positive},
          {"v_origin_zero", p.v_origin_zero},
          {"v_positive", p.v_positive},
          {"delta_min", p.delta_min},
          {"v_origin", p.v_origin},
          {"v_min_off_origin", p.v_min_off_origin},
          {"valid_fraction", p.valid_fraction},
          {"valid_Lx", p.valid_Lx},
          {"valid_Ly", p.valid_Ly}};
}

json to_json(const DecreaseReport& d) {
  return {{"ok", d.ok()},
          {"monotone", d.monotone},
          {"identity_ok", d.identity_ok},
          {"worst_increase", d.worst_increase},
          {"worst_identity", d.worst_identity},
          {"worst_identity_t", d.worst_identity_t}};
}

json to_json(const LaSalleReport& r) {
  json samples = json::array();
  for (const auto& s : r.chain_samples) {
    samples.push_back({{"x", s.x}, {"y", s.y}, {"px", s.px}, {"py", s.py}, {"distance", s.distance}});
  }
  return {{"verdict", r.verdict},
          {"K0", r.K0},
          {"gradL0", {r.gradL0[0], r.gradL0[1]}},
          {"M", {{r.M(0, 0), r.M(0, 1)}, {r.M(1, 0), r.M(1, 1)}}},
          {"l1_ok", r.l1_ok},
          {"l1_forbidden_ratio", r.l1.forbidden_ratio},
          {"l1_ratio", r.l1.ratio},
          {"l2_ok", r.l2_ok},
          {"l2_forbidden", r.l2.forbidden},
          {"gradL0_nonzero", r.gradL0_nonzero},
          {"counts", {r.s0_count, r.s1_count, r.s2_count, r.s3_count}},
          {"tol", r.tol},
          {"chain_radius", r.chain_radius},
          {"max_chain_distance", r.max_chain_distance},
          {"chain_samples", samples}};
}

void write_field_csv(std::ostream& os, const FieldGrid& f) {
  const Rectangle& d = f.domain();
  os << "x,y,value\n" << std::setprecision(17);
  for (int j = 0; j < d.Ny; ++j) {
    for (int i = 0; i < d.Nx; ++i) os << d.x(i) << ',' << d.y(j) << ',' << f.at(i, j) << '\n';
  }
}

FieldGrid read_field_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != "x,y,value") {
    throw ConfigError("field CSV must start with the header x,y,value");
  }
  std::vector<double> xs, ys, vals;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    double x, y, v;
    char c1, c2;
    if (!(row >> x >> c1 >> y >> c2 >> v) || c1 != ',' || c2 != ',') {
      throw ConfigError("malformed field CSV row: " + line);
    }
    xs.push_back(x);
    ys.push_back(y);
    vals.push_back(v);
  }
  if (vals.empty()) throw ConfigError("field CSV has no rows");
  int nx = 1;
  while (nx < static_cast<int>(ys.size()) && ys[nx] == ys[0]) ++nx;
  if (vals.size() % nx != 0) throw ConfigError("field CSV is not a full grid");
  const int ny = static_cast<int>(vals.size()) / nx;
  Rectangle d{std::abs(xs.front()), std::abs(ys.front()), nx, ny};
  return FieldGrid(d, vals);
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj) {
  os << "t,x,y,px,py,V,mu,lambda,dVdt\n" << std::setprecision(17);
  for (const auto& s : traj.samples) {
    os << s.t << ',' << s.s.x << ',' << s.s.y << ',' << s.s.px << ',' << s.s.py << ',' << s.V
       << ',' << s.mu << ',' << s.lambda << ',' << s.dVdt << '\n';
  }
}

}  // namespace lcb
