#include <cmath>
#include <limits>
#include <random>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "lcb/errors.hpp"
#include "lcb/iwp.hpp"
#include "lcb/system.hpp"

using namespace lcb;
using namespace lcb::testing;

TEST(ValidateSystem, IwpPassesEveryCheck) {
  const auto rep = validate_system(iwp_system(kIwp));
  EXPECT_TRUE(rep.ok());
  EXPECT_EQ(rep.checks.size(), 4u);
  EXPECT_NEAR(rep.find("critical_point").worst_value, 0.0, 1e-15);
}

TEST(ValidateSystem, NegativeDeterminantFailsAtEveryNode) {
  auto sys = quadratic_system(1.0, 2.0, 1.0, 1.0, 0.0);
  sys.domain = {0.5, 0.5, 11, 11};
  const auto rep = validate_system(sys);
  EXPECT_FALSE(rep.ok());
  const auto& det = rep.find("det_positive");
  EXPECT_FALSE(det.ok);
  EXPECT_EQ(det.offenders, 121u);
  EXPECT_DOUBLE_EQ(det.worst_value, -3.0);
  EXPECT_TRUE(rep.find("a_positive").ok);
}

TEST(ValidateSystem, NonCriticalOriginFails) {
  auto sys = quadratic_system(1.0, 0.0, 1.0, 0.0, 0.0);
  sys.h = SmoothField2D::polynomial({{0.0}, {1.0}});  // h = x
  const auto rep = validate_system(sys);
  const auto& crit = rep.find("critical_point");
  EXPECT_FALSE(crit.ok);
  EXPECT_DOUBLE_EQ(crit.worst_value, 1.0);
  EXPECT_THROW(require_valid(sys), ConfigError);
}

TEST(ValidateSystem, NonFiniteFieldIsAnEvaluationError) {
  auto sys = quadratic_system(1.0, 0.0, 1.0, 1.0, 0.0);
  sys.a = SmoothField2D::constant(std::numeric_limits<double>::infinity());
  EXPECT_THROW(validate_system(sys), EvaluationError);
}

TEST(ValidateSystem, RejectsEvenGrid) {
  auto sys = iwp_system(kIwp);
  sys.domain.Nx = 100;
  EXPECT_THROW(validate_system(sys), ConfigError);
}

TEST(ValidateSystem, IwpFamilyPassesIffDeterminantPositive) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.1, 3.0);
  for (int k = 0; k < 50; ++k) {
    const double a = u(rng), b = u(rng), c = u(rng), m = u(rng);
    auto sys = iwp_system({1.0, 0.5, 1.0, 1.0}, Rectangle{0.5, 0.5, 5, 5});
    sys.a = SmoothField2D::constant(a);
    sys.b = SmoothField2D::constant(b);
    sys.c = SmoothField2D::constant(c);
    sys.h = SmoothField2D::trig(m, 0.0, m);
    EXPECT_EQ(validate_system(sys).ok(), a * c - b * b > kDefaultTol);
  }
}

TEST(HessianH, Examples) {
  const auto h1 = hessian_h_origin(iwp_system(kIwp));
  EXPECT_DOUBLE_EQ(h1.xx, -1.0);
  EXPECT_DOUBLE_EQ(h1.xy, 0.0);
  EXPECT_DOUBLE_EQ(h1.yy, 0.0);
  const auto h2 = hessian_h_origin(quadratic_system(1, 0, 1, 1.0, 0.0, 1.0));
  EXPECT_DOUBLE_EQ(h2.xx, 1.0);
  EXPECT_DOUBLE_EQ(h2.yy, 1.0);
  auto sys = quadratic_system(1, 0, 1, 0, 0);
  sys.h = SmoothField2D::polynomial({{0.0}, {0.0, 1.0}});  // h = x y
  const auto h3 = hessian_h_origin(sys);
  EXPECT_DOUBLE_EQ(h3.xx, 0.0);
  EXPECT_DOUBLE_EQ(h3.xy, 1.0);
  EXPECT_DOUBLE_EQ(h3.yy, 0.0);
}
