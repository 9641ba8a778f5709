#include "lcb/smooth_field.hpp"

#include <cmath>

#include "lcb/errors.hpp"

namespace lcb {

SmoothField2D::SmoothField2D() = default;

SmoothField2D SmoothField2D::constant(double value) {
  SmoothField2D f;
  f.coeffs_[0][0] = value;
  return f;
}

SmoothField2D SmoothField2D::polynomial(const std::vector<std::vector<double>>& coeffs) {
  if (coeffs.size() > static_cast<std::size_t>(kMaxDegree + 1)) {
    throw ConfigError("polynomial x-degree exceeds 8");
  }
  SmoothField2D f;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i].size() > static_cast<std::size_t>(kMaxDegree + 1)) {
      throw ConfigError("polynomial y-degree exceeds 8");
    }
    for (std::size_t j = 0; j < coeffs[i].size(); ++j) {
      f.coeffs_[i][j] = coeffs[i][j];
    }
  }
  f.refresh_degrees();
  return f;
}

SmoothField2D SmoothField2D::polynomial_x(const std::vector<double>& coeffs) {
  std::vector<std::vector<double>> table;
  table.reserve(coeffs.size());
  for (double c : coeffs) table.push_back({c});
  return polynomial(table);
}

SmoothField2D SmoothField2D::trig(double alpha, double beta, double offset) {
  SmoothField2D f = constant(offset);
  f.alpha_ = alpha;
  f.beta_ = beta;
  return f;
}

void SmoothField2D::refresh_degrees() {
  deg_x_ = 0;
  deg_y_ = 0;
  for (int i = 0; i <= kMaxDegree; ++i) {
    for (int j = 0; j <= kMaxDegree; ++j) {
      if (coeffs_[i][j] != 0.0) {
        if (i > deg_x_) deg_x_ = i;
        if (j > deg_y_) deg_y_ = j;
      }
    }
  }
}

double SmoothField2D::operator()(double x, double y) const {
  // Horner in x of Horner-in-y rows.
  double acc = 0.0;
  for (int i = deg_x_; i >= 0; --i) {
    double row = 0.0;
    for (int j = deg_y_; j >= 0; --j) row = row * y + coeffs_[i][j];
    acc = acc * x + row;
  }
  if (alpha_ != 0.0) acc += alpha_ * std::cos(x);
  if (beta_ != 0.0) acc += beta_ * std::sin(x);
  return acc;
}

SmoothField2D SmoothField2D::differentiated(int nx, int ny) const {
  if (nx < 0 || ny < 0) throw PreconditionError("negative derivative order");
  SmoothField2D out;
  for (int i = nx; i <= deg_x_; ++i) {
    for (int j = ny; j <= deg_y_; ++j) {
      double factor = 1.0;
      for (int k = 0; k < nx; ++k) factor *= static_cast<double>(i - k);
      for (int k = 0; k < ny; ++k) factor *= static_cast<double>(j - k);
      out.coeffs_[i - nx][j - ny] = factor * coeffs_[i][j];
    }
  }
  if (ny == 0) {
    // d/dx (alpha cos + beta sin) = beta cos - alpha sin; period 4 in nx.
    double alpha = alpha_;
    double beta = beta_;
    for (int k = 0; k < nx % 4; ++k) {
      const double next_alpha = beta;
      const double next_beta = -alpha;
      alpha = next_alpha;
      beta = next_beta;
    }
    out.alpha_ = alpha;
    out.beta_ = beta;
  }
  out.refresh_degrees();
  return out;
}

double SmoothField2D::derivative(int nx, int ny, double x, double y) const {
  if (nx == 0 && ny == 0) return (*this)(x, y);
  return differentiated(nx, ny)(x, y);
}

std::vector<std::vector<double>> SmoothField2D::coefficient_table() const {
  std::vector<std::vector<double>> table(deg_x_ + 1, std::vector<double>(deg_y_ + 1, 0.0));
  for (int i = 0; i <= deg_x_; ++i) {
    for (int j = 0; j <= deg_y_; ++j) table[i][j] = coeffs_[i][j];
  }
  return table;
}

SmoothField2D SmoothField2D::operator+(const SmoothField2D& other) const {
  SmoothField2D out = *this;
  for (int i = 0; i <= kMaxDegree; ++i) {
    for (int j = 0; j <= kMaxDegree; ++j) out.coeffs_[i][j] += other.coeffs_[i][j];
  }
  out.alpha_ += other.alpha_;
  out.beta_ += other.beta_;
  out.refresh_degrees();
  return out;
}

SmoothField2D SmoothField2D::operator*(double scale) const {
  SmoothField2D out = *this;
  for (auto& row : out.coeffs_) {
    for (double& c : row) c *= scale;
  }
  out.alpha_ *= scale;
  out.beta_ *= scale;
  out.refresh_degrees();
  return out;
}

}  // namespace lcb
