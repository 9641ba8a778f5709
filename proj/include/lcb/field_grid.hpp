#pragma once

#include <vector>

#include <Eigen/Core>

#include "lcb/system.hpp"

namespace lcb {

/**
 * Scalar field sampled on the nodes of a Rectangle, stored row by row
 * (index j * Nx + i, j along y).
 *
 * Off-node values come from bicubic Hermite interpolation, which is C^1 across
 * cells. The nodal slopes default to fourth-order differences of the values;
 * a solver that knows better slopes (for instance from the PDE it solved)
 * can install them with set_slopes.
 */
class FieldGrid {
 public:
  FieldGrid() = default;
  /// Throws ConfigError when the value count does not match the domain or a value is not finite.
  FieldGrid(Rectangle domain, std::vector<double> values);

  const Rectangle& domain() const { return domain_; }
  const std::vector<double>& values() const { return values_; }
  double at(int i, int j) const { return values_[index(i, j)]; }
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(j) * static_cast<std::size_t>(domain_.Nx) +
           static_cast<std::size_t>(i);
  }

  bool contains(double x, double y) const { return domain_.contains(x, y); }

  /// Interpolated value; throws OutOfDomain off the rectangle.
  double operator()(double x, double y) const;
  /// Value and gradient of the interpolant.
  double eval(double x, double y, Eigen::Vector2d* grad) const;

  void set_slopes(std::vector<double> fx, std::vector<double> fy, std::vector<double> fxy);
  const std::vector<double>& slope_x() const { return fx_; }
  const std::vector<double>& slope_y() const { return fy_; }

  // Second-order grid differences at a node (one-sided at the edges).
  double fd_x(int i, int j) const;
  double fd_y(int i, int j) const;
  double fd_xx(int i, int j) const;
  double fd_yy(int i, int j) const;
  double fd_xy(int i, int j) const;

  double min_value() const;
  double max_value() const;

 private:
  void default_slopes();

  Rectangle domain_;
  std::vector<double> values_;
  std::vector<double> fx_, fy_, fxy_;
};

/// Fourth-order first derivative of equally spaced samples (second order when n < 5).
std::vector<double> derivative_fd4(const std::vector<double>& f, double h);

/// Applies derivative_fd4 along x for every row of a grid array.
std::vector<double> grid_dx_fd4(const Rectangle& d, const std::vector<double>& f);
/// Applies derivative_fd4 along y for every column of a grid array.
std::vector<double> grid_dy_fd4(const Rectangle& d, const std::vector<double>& f);

}  // namespace lcb
