#include "lcb/synthesis.hpp"

#include <sstream>

#include <spdlog/spdlog.h>

#include "lcb/errors.hpp"

namespace lcb {

namespace {

BoundaryData make_profiles(const SystemSpec2D& sys, ProfileKind kind, double s0, double s1,
                           double r2) {
  const bool periodic = kind == ProfileKind::Periodic || (kind == ProfileKind::Auto && sys.periodic);
  return periodic ? BoundaryData::periodic(s0, s1, r2) : BoundaryData::polynomial(s0, s1, r2);
}

}  // namespace

SynthesisResult synthesize(const SystemSpec2D& sys, const SynthesisParams& params) {
  require_valid(sys, params.tol);
  const StabilizabilityVerdict verdict = check_condpos2(sys, params.tol);
  if (!verdict.stabilizable) {
    std::ostringstream os;
    os << "condpos2 fails: [b h_xx + c h_xy](0) = " << verdict.clause_bc
       << ", h_xx(0) = " << verdict.clause_hxx;
    throw NotStabilizable(os.str());
  }

  std::optional<GammaChoice> gamma_choice;
  double gamma0 = 0.0;
  if (params.gamma) {
    gamma0 = *params.gamma;
  } else {
    gamma_choice = choose_gamma(sys, std::nullopt, params.margin, params.tol);
    gamma0 = gamma_choice->gamma0;
  }
  spdlog::debug("gamma(0) = {}", gamma0);

  BoundaryChoice bc = choose_boundary(sys, gamma0, params.margin, params.tol);
  if (params.gamma && bc.gamma_adjusted) {
    spdlog::warn("gamma override {} collides with the l2 restriction; keeping it", gamma0);
    bc.gamma0 = gamma0;
    bc.gamma_adjusted = false;
  }
  gamma0 = bc.gamma0;
  const double s1 = params.s1.value_or(bc.boundary.s1);
  const double r2 = params.r2.value_or(bc.boundary.r2);
  bc.boundary = make_profiles(sys, params.profiles, bc.boundary.s0, s1, r2);
  spdlog::debug("boundary s0 = {}, s1 = {}, r2 = {}", bc.boundary.s0, s1, r2);

  const Rectangle chart = params.chart.value_or(sys.domain);
  FieldGrid delta = solve_kinetic(sys, gamma0, bc.boundary.s, chart, params.trace);
  FieldGrid v = solve_potential(sys, gamma0, delta, bc.boundary.r, params.trace);

  const Residual kin = residual_kinetic(sys, gamma0, delta);
  const Residual pot = residual_potential(sys, gamma0, delta, v);
  const PositivityReport pos = positivity_report(delta, v, params.tol);
  std::optional<VHessian> hess;
  try {
    hess = hessian_v_origin(sys, gamma0, bc.boundary, params.tol);
  } catch (const GbcViolation&) {
  }

  Controller ctrl(sys, gamma0, std::move(delta), std::move(v), params.l, params.kappa,
                  bc.boundary);
  return {verdict, gamma_choice, bc, std::move(ctrl), kin, pot, pos, hess};
}

}  // namespace lcb
