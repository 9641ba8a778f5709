#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "lcb/errors.hpp"
#include "lcb/iwp.hpp"
#include "lcb/pde_solver.hpp"

using namespace lcb;
using namespace lcb::testing;

TEST(IwpParams, Validation) {
  EXPECT_NO_THROW(kIwp.validate());
  EXPECT_THROW((IwpParams{1, 1, 1, 1}).validate(), ConfigError);
  EXPECT_THROW((IwpParams{2, 1, 1, 0}).validate(), ConfigError);
  EXPECT_THROW(iwp_system({1, 1, 1, 1}), ConfigError);
}

TEST(IwpSystem, Shape) {
  const auto sys = iwp_system(kIwp);
  EXPECT_TRUE(sys.periodic);
  EXPECT_DOUBLE_EQ(sys.h(0.0, 0.0), 2.0);
  EXPECT_NEAR(sys.h(M_PI, 0.3), 0.0, 1e-15);
  EXPECT_DOUBLE_EQ(sys.b(0.2, -0.1), 1.0);
}

TEST(IwpOracle, ValuesAndPreconditions) {
  const auto bd = iwp_boundary();
  EXPECT_NEAR(oracle_delta(kIwp, kGamma, bd.s, 0.2, 0.2), 1.01, 1e-15);
  EXPECT_NEAR(oracle_v(kIwp, kGamma, bd.s, bd.r, 0.2, 0.2),
              -1.01 * (std::cos(0.2) - std::cos(0.1)) + 0.01, 1e-15);
  EXPECT_EQ(oracle_v(kIwp, kGamma, bd.s, bd.r, 0.0, 0.0), 0.0);
  EXPECT_THROW(oracle_delta(kIwp, 1.0, bd.s, 0.1, 0.1), ConfigError);  // gamma = b/c
  EXPECT_THROW(oracle_delta(kIwp, 1.5, bd.s, 0.1, 0.1), ConfigError);  // gamma < a/b
}

TEST(IwpOracle, SatisfiesBothEquations) {
  const auto sys = iwp_system(kIwp);
  const auto bd = iwp_boundary();
  const Rectangle d{0.5, 0.5, 201, 201};
  std::vector<double> dv(d.size()), vv(d.size());
  for (int j = 0; j < d.Ny; ++j) {
    for (int i = 0; i < d.Nx; ++i) {
      const std::size_t k = static_cast<std::size_t>(j) * d.Nx + i;
      dv[k] = oracle_delta(kIwp, kGamma, bd.s, d.x(i), d.y(j));
      vv[k] = oracle_v(kIwp, kGamma, bd.s, bd.r, d.x(i), d.y(j));
    }
  }
  const FieldGrid delta(d, dv), v(d, vv);
  EXPECT_LT(residual_kinetic(sys, kGamma, delta).max_abs, 1e-4);
  EXPECT_LT(residual_potential(sys, kGamma, delta, v).max_abs, 1e-4);
}

TEST(IwpConstraints, AcceptanceInstance) {
  const auto c = iwp_constraints(kIwp, kGamma, 1.0, 0.1, 2.0);
  EXPECT_TRUE(c.gamma_above_ab);
  EXPECT_DOUBLE_EQ(c.f1_bound, 1.0);
  EXPECT_TRUE(c.f1_ok);
  EXPECT_TRUE(c.s1_nonzero);
  EXPECT_NEAR(c.f2_forbidden, 2.2, 1e-15);
  EXPECT_TRUE(c.f2_ok);
  EXPECT_TRUE(c.ok());
}

TEST(IwpConstraints, Failures) {
  // The forbidden value moves with gamma: at 2.2 it is 7.8 / 4.2.
  const auto moved = iwp_constraints(kIwp, 2.2, 1.0, 0.1, 2.0);
  EXPECT_NEAR(moved.f2_forbidden, 13.0 / 7.0, 1e-14);
  EXPECT_TRUE(moved.f2_ok);
  EXPECT_FALSE(iwp_constraints(kIwp, kGamma, 1.0, 0.1, 1.0).f1_ok);
  EXPECT_FALSE(iwp_constraints(kIwp, kGamma, 1.0, 0.0, 2.0).s1_nonzero);
  EXPECT_FALSE(iwp_constraints(kIwp, 1.5, 1.0, 0.1, 2.0).gamma_above_ab);
}

TEST(IwpConstraints, F2AgreesWithGeneralFormula) {
  std::mt19937_64 rng(73);
  std::uniform_real_distribution<double> u(0.5, 2.0);
  for (int k = 0; k < 20; ++k) {
    IwpParams p{u(rng), u(rng), 0.0, u(rng)};
    p.c = p.b * p.b / p.a + u(rng);
    const double g = p.a / p.b + u(rng);
    const double s0 = u(rng), r2 = 3.0 * u(rng);
    const auto c = iwp_constraints(p, g, s0, 0.1, r2);
    const double general = gamma_forbidden_l2(iwp_system(p), g, s0, r2);
    EXPECT_NEAR(c.f2_forbidden, general, 1e-10 * std::max(1.0, std::abs(general)));
    // num - gamma den = -M b s0 (b - c gamma)^2, so the restriction never binds here.
    const double eta = p.b - p.c * g;
    EXPECT_NEAR(c.f2_numerator - g * c.f2_denominator, -p.M * p.b * s0 * eta * eta,
                1e-10 * std::max(1.0, std::abs(c.f2_numerator)));
    EXPECT_TRUE(c.f2_ok);
  }
}
