#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "lcb/control_law.hpp"
#include "lcb/errors.hpp"
#include "lcb/simulator.hpp"

using namespace lcb;
using namespace lcb::testing;

namespace {

const Controller& ctrl() {
  static const Controller c = iwp_controller(Rectangle{0.5, 0.5, 101, 101});
  return c;
}

State random_state(std::mt19937_64& rng, double r) {
  std::uniform_real_distribution<double> u(-r, r);
  return {u(rng), u(rng), u(rng), u(rng)};
}

}  // namespace

TEST(Controller, RejectsBadParameters) {
  const auto& c = ctrl();
  EXPECT_THROW(Controller(c.system(), kGamma, c.delta(), c.v(), 0.0), ConfigError);
  EXPECT_THROW(Controller(c.system(), kGamma, c.delta(), c.v(), 1.0, -1.0), ConfigError);
  const FieldGrid other(Rectangle{0.5, 0.5, 5, 5}, std::vector<double>(25, 1.0));
  EXPECT_THROW(Controller(c.system(), kGamma, c.delta(), other), ConfigError);
  EXPECT_NO_THROW(Controller(c.system(), kGamma, c.delta(), c.v(), 1.0, 0.0));
}

TEST(Lyapunov, Examples) {
  EXPECT_EQ(lyapunov_value(ctrl(), {}), 0.0);
  const Controller small_l(ctrl().system(), kGamma, ctrl().delta(), ctrl().v(), 0.01);
  EXPECT_NEAR(lyapunov_value(small_l, {0, 0, 1, 0}), 0.545, 1e-14);
  const auto m = reconstruct_V_matrix(small_l, 0.0, 0.0);
  EXPECT_NEAR(m.m(0, 0), 1.09, 1e-14);
  EXPECT_NEAR(m.m(0, 1), 0.03, 1e-14);
  EXPECT_NEAR(m.m(1, 0), 0.03, 1e-14);
  EXPECT_NEAR(m.m(1, 1), 0.01, 1e-14);
  EXPECT_TRUE(m.positive_definite);
}

TEST(Lyapunov, MatrixFormMatchesValue) {
  std::mt19937_64 rng(41);
  for (int k = 0; k < 100; ++k) {
    const State s = random_state(rng, 0.4);
    const auto m = reconstruct_V_matrix(ctrl(), s.x, s.y);
    const Eigen::Vector2d p(s.px, s.py);
    const double expected = 0.5 * p.dot(m.m * p) + ctrl().v()(s.x, s.y);
    EXPECT_NEAR(lyapunov_value(ctrl(), s), expected, 1e-13);
  }
}

TEST(Lyapunov, GradientMatchesFiniteDifferences) {
  std::mt19937_64 rng(43);
  const double e = 1e-6;
  for (int k = 0; k < 50; ++k) {
    const State s = random_state(rng, 0.4);
    const auto g = lyapunov_gradient(ctrl(), s);
    for (int q = 2; q < 4; ++q) {
      Eigen::Vector4d up = s.vec(), dn = s.vec();
      up[q] += e;
      dn[q] -= e;
      const double fd = (lyapunov_value(ctrl(), State::from(up)) -
                         lyapunov_value(ctrl(), State::from(dn))) / (2 * e);
      EXPECT_NEAR(g[q], fd, 1e-7);
    }
    // x-derivative comes from the interpolant; compare loosely.
    Eigen::Vector4d up = s.vec(), dn = s.vec();
    up[0] += e;
    dn[0] -= e;
    const double fdx = (lyapunov_value(ctrl(), State::from(up)) -
                        lyapunov_value(ctrl(), State::from(dn))) / (2 * e);
    EXPECT_NEAR(g[0], fdx, 1e-5);
  }
}

TEST(Lyapunov, PositiveOnPuncturedBall) {
  for (const State& s : sample_ball(1000, 0.1, 47)) {
    if (s.norm() < 1e-3) continue;
    EXPECT_GT(lyapunov_value(ctrl(), s), 0.0);
  }
}

TEST(Mu, Examples) {
  EXPECT_DOUBLE_EQ(mu_value(ctrl(), {0, 0, 1, -2}), 1.0);
  EXPECT_DOUBLE_EQ(mu_value(ctrl(), {0.1, 0.1, 1, -3}), 0.0);
  const Controller c2(ctrl().system(), kGamma, ctrl().delta(), ctrl().v(), 2.0, 0.5);
  EXPECT_DOUBLE_EQ(mu_value(c2, {0, 0, 0, 1}), 0.5 * 4.0);
  std::mt19937_64 rng(53);
  for (int k = 0; k < 100; ++k) EXPECT_GE(mu_value(ctrl(), random_state(rng, 0.4)), 0.0);
}

TEST(ClosedLoop, PlantPartAndOrigin) {
  const auto f = closed_loop_field(ctrl(), {0.1, 0.0, 0.0, 0.0}, true);
  EXPECT_NEAR(f[2], std::sin(0.1), 1e-15);
  EXPECT_EQ(f[0], 0.0);
  EXPECT_EQ(f[1], 0.0);
  EXPECT_NEAR(lambda_value(ctrl(), {}), 0.0, 1e-12);
  EXPECT_NEAR(closed_loop_field(ctrl(), {}).norm(), 0.0, 1e-12);
  EXPECT_THROW(closed_loop_field(ctrl(), {0.6, 0.0, 0.0, 0.0}), OutOfDomain);
}

TEST(ClosedLoop, DecreaseIdentityOnRandomStates) {
  std::mt19937_64 rng(59);
  int checked = 0;
  while (checked < 1000) {
    const State s = random_state(rng, 0.45);
    const double d = kGamma * s.px + s.py;
    if (std::abs(d) < 1e-3) continue;
    const double dv = lyapunov_gradient(ctrl(), s).dot(closed_loop_field(ctrl(), s));
    const double mu = mu_value(ctrl(), s);
    EXPECT_NEAR(dv, -mu, 1e-9 * std::max(1.0, mu));
    ++checked;
  }
}

TEST(ClosedLoop, BracketVanishesOnTheSlice) {
  std::mt19937_64 rng(61);
  std::uniform_real_distribution<double> u(-0.45, 0.45), p(-1.0, 1.0);
  double worst = 0.0;
  for (int k = 0; k < 500; ++k) {
    const double px = p(rng);
    worst = std::max(worst, std::abs(poisson_bracket_VH(ctrl(), {u(rng), u(rng), px, -kGamma * px})));
  }
  EXPECT_LT(worst, 1e-4);
  EXPECT_LT(slice_bracket_residual(ctrl(), 11), 1e-4);
}

TEST(Lambda, LimitBranchIsContinuous) {
  std::mt19937_64 rng(67);
  std::uniform_real_distribution<double> u(-0.4, 0.4);
  for (int k = 0; k < 100; ++k) {
    const double x = u(rng), y = u(rng), px = u(rng);
    const State on{x, y, px, -kGamma * px};
    const double lim = lambda_limit(ctrl(), on);
    EXPECT_NEAR(lim, lat_value(ctrl(), x, y, px), 1e-6);
    EXPECT_EQ(lambda_value(ctrl(), on), lim);
    const State near{x, y, px, -kGamma * px + 1e-4};
    EXPECT_NEAR(lambda_quotient(ctrl(), near), lim, 1e-3);
  }
}
