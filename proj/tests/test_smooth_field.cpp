#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "lcb/errors.hpp"
#include "lcb/smooth_field.hpp"

using lcb::SmoothField2D;

TEST(SmoothField, PolynomialEvaluation) {
  // 1 + 2x + 3y + 4xy + 5x^2
  const auto f = SmoothField2D::polynomial({{1.0, 3.0}, {2.0, 4.0}, {5.0}});
  EXPECT_DOUBLE_EQ(f(0.0, 0.0), 1.0);
  EXPECT_DOUBLE_EQ(f(1.0, 2.0), 1.0 + 2.0 + 6.0 + 8.0 + 5.0);
  EXPECT_EQ(f.degree_x(), 2);
  EXPECT_EQ(f.degree_y(), 1);
}

TEST(SmoothField, TrigDerivativesRotate) {
  const auto h = SmoothField2D::trig(1.0, 0.0, 1.0);  // 1 + cos x
  EXPECT_DOUBLE_EQ(h(0.0, 0.0), 2.0);
  EXPECT_NEAR(h.derivative(1, 0, 0.3, 0.0), -std::sin(0.3), 1e-15);
  EXPECT_NEAR(h.derivative(2, 0, 0.3, 0.0), -std::cos(0.3), 1e-15);
  EXPECT_NEAR(h.derivative(3, 0, 0.3, 0.0), std::sin(0.3), 1e-15);
  EXPECT_NEAR(h.derivative(4, 0, 0.3, 0.0), std::cos(0.3), 1e-15);
  EXPECT_DOUBLE_EQ(h.derivative(0, 1, 0.3, 0.2), 0.0);
}

TEST(SmoothField, DerivativeOfRepresentationIsRepresentationOfDerivative) {
  const auto f = SmoothField2D::polynomial({{0.5, -1.0, 2.0}, {0.0, 3.0}, {1.5}}) +
                 SmoothField2D::trig(0.7, -0.2);
  EXPECT_EQ(f.differentiated(1, 0).differentiated(0, 1), f.differentiated(1, 1));
  EXPECT_EQ(f.differentiated(2, 0), f.differentiated(1, 0).differentiated(1, 0));
}

TEST(SmoothField, CentralDifferencesMatchExactDerivatives) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> coef(-1.0, 1.0), pt(-0.5, 0.5);
  std::vector<std::vector<double>> table(5, std::vector<double>(5));
  for (auto& row : table)
    for (double& c : row) c = coef(rng);
  const auto p = SmoothField2D::polynomial(table);
  const double e = 1e-5;
  for (int k = 0; k < 100; ++k) {
    const double x = pt(rng), y = pt(rng);
    const double fdx = (p(x + e, y) - p(x - e, y)) / (2 * e);
    const double fdy = (p(x, y + e) - p(x, y - e)) / (2 * e);
    const double ex = p.derivative(1, 0, x, y);
    const double ey = p.derivative(0, 1, x, y);
    EXPECT_LE(std::abs(fdx - ex), 1e-8 * std::max(1.0, std::abs(ex)));
    EXPECT_LE(std::abs(fdy - ey), 1e-8 * std::max(1.0, std::abs(ey)));
  }
}

TEST(SmoothField, RejectsDegreeAboveEight) {
  EXPECT_THROW(SmoothField2D::polynomial(std::vector<std::vector<double>>(10, {1.0})),
               lcb::ConfigError);
}

TEST(SmoothField, Arithmetic) {
  const auto f = SmoothField2D::polynomial_x({1.0, 2.0}) * 3.0 + SmoothField2D::constant(1.0);
  EXPECT_DOUBLE_EQ(f(1.0, 5.0), 10.0);
  EXPECT_TRUE(SmoothField2D::constant(2.0).is_constant());
  EXPECT_TRUE(f.is_univariate_x());
}
