#pragma once

#include "lcb/iwp.hpp"
#include "lcb/stabilizability.hpp"
#include "lcb/synthesis.hpp"

namespace lcb::testing {

inline const IwpParams kIwp{2.0, 1.0, 1.0, 1.0};
inline constexpr double kGamma = 3.0;

/// s = 1 + 0.1 x, r = x^2.
inline BoundaryData iwp_boundary(double s1 = 0.1, double r2 = 2.0) {
  return BoundaryData::polynomial(1.0, s1, r2);
}

inline SystemSpec2D quadratic_system(double a, double b, double c, double hxx, double hxy,
                                     double hyy = 0.0) {
  SystemSpec2D sys;
  sys.a = SmoothField2D::constant(a);
  sys.b = SmoothField2D::constant(b);
  sys.c = SmoothField2D::constant(c);
  sys.h = SmoothField2D::polynomial({{0.0, 0.0, 0.5 * hyy}, {0.0, hxy}, {0.5 * hxx}});
  return sys;
}

inline SynthesisParams iwp_params(const Rectangle& chart = {}, double s1 = 0.1, double r2 = 2.0) {
  SynthesisParams p;
  p.gamma = kGamma;
  p.s1 = s1;
  p.r2 = r2;
  p.profiles = ProfileKind::Polynomial;
  p.chart = chart;
  return p;
}

/// Controller for the acceptance instance on the given chart.
inline Controller iwp_controller(const Rectangle& chart = {}, double kappa = 1.0, double l = 1.0,
                                 double s1 = 0.1) {
  auto p = iwp_params(chart, s1);
  p.kappa = kappa;
  p.l = l;
  return synthesize(iwp_system(kIwp), p).controller;
}

}  // namespace lcb::testing
