#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "lcb/control_law.hpp"
#include "lcb/lasalle.hpp"
#include "lcb/pde_solver.hpp"
#include "lcb/simulator.hpp"
#include "lcb/stabilizability.hpp"

namespace lcb {

using json = nlohmann::json;

// Fields: {"coeffs": [[c00, c01, ...], [c10, ...]]} (row = power of x),
// {"trig": {"M": m}} for m (1 + cos x), or {"cos": alpha, "sin": beta}; keys add up.
json field_to_json(const SmoothField2D& f);
SmoothField2D field_from_json(const json& j);

json rectangle_to_json(const Rectangle& r);
Rectangle rectangle_from_json(const json& j);

json system_to_json(const SystemSpec2D& sys);
/// Throws ConfigError on missing keys or wrong types.
SystemSpec2D system_from_json(const json& j);

json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const json& j);

json boundary_to_json(const BoundaryData& b);
BoundaryData boundary_from_json(const json& j);

json controller_to_json(const Controller& ctrl);
/// Rebuilds the grids and reinstalls the equation-consistent slopes.
Controller controller_from_json(const json& j);

json to_json(const ValidationReport& r);
json to_json(const StabilizabilityVerdict& v);
json to_json(const GammaChoice& g);
json to_json(const BoundaryChoice& b);
json to_json(const VHessian& h);
json to_json(const Residual& r, const Rectangle& d);
json to_json(const PositivityReport& p);
json to_json(const DecreaseReport& d);
json to_json(const LaSalleReport& r);

/// Header x,y,value; j outer, i inner.
void write_field_csv(std::ostream& os, const FieldGrid& f);
FieldGrid read_field_csv(std::istream& is);

/// Header t,x,y,px,py,V,mu,lambda,dVdt.
void write_trajectory_csv(std::ostream& os, const Trajectory& traj);

}  // namespace lcb
