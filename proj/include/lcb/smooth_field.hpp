#pragma once

#include <array>
#include <vector>

namespace lcb {

/**
 * Exact scalar field on a chart of R^2:
 *
 *   f(x, y) = sum_{i,j <= 8} c_ij x^i y^j  +  alpha cos(x) + beta sin(x)
 *
 * The family is closed under differentiation, so every partial derivative
 * is again a SmoothField2D and is evaluated without finite differences.
 */
class SmoothField2D {
 public:
  static constexpr int kMaxDegree = 8;
  using Coefficients = std::array<std::array<double, kMaxDegree + 1>, kMaxDegree + 1>;

  SmoothField2D();

  static SmoothField2D constant(double value);

  /// coeffs[i][j] multiplies x^i y^j. Ragged rows are zero-padded.
  static SmoothField2D polynomial(const std::vector<std::vector<double>>& coeffs);

  /// alpha cos(x) + beta sin(x) + offset.
  static SmoothField2D trig(double alpha, double beta, double offset = 0.0);

  /// Univariate polynomial in x: sum_i coeffs[i] x^i.
  static SmoothField2D polynomial_x(const std::vector<double>& coeffs);

  double operator()(double x, double y) const;

  /// d^{nx+ny} f / dx^nx dy^ny evaluated at (x, y).
  double derivative(int nx, int ny, double x, double y) const;

  SmoothField2D differentiated(int nx, int ny) const;

  double coefficient(int i, int j) const { return coeffs_[i][j]; }
  double cos_coefficient() const { return alpha_; }
  double sin_coefficient() const { return beta_; }
  int degree_x() const { return deg_x_; }
  int degree_y() const { return deg_y_; }
  bool has_trig() const { return alpha_ != 0.0 || beta_ != 0.0; }

  /// True when the field does not depend on y.
  bool is_univariate_x() const { return deg_y_ == 0; }
  bool is_constant() const { return deg_x_ == 0 && deg_y_ == 0 && !has_trig(); }

  /// Nested coefficient table trimmed to the populated degrees.
  std::vector<std::vector<double>> coefficient_table() const;

  SmoothField2D operator+(const SmoothField2D& other) const;
  SmoothField2D operator*(double scale) const;

  bool operator==(const SmoothField2D& other) const = default;

 private:
  void refresh_degrees();

  Coefficients coeffs_{};
  double alpha_ = 0.0;
  double beta_ = 0.0;
  int deg_x_ = 0;
  int deg_y_ = 0;
};

}  // namespace lcb
