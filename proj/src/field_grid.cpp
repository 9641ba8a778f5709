#include "lcb/field_grid.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "lcb/errors.hpp"

namespace lcb {

std::vector<double> derivative_fd4(const std::vector<double>& f, double h) {
  const int n = static_cast<int>(f.size());
  std::vector<double> d(n, 0.0);
  if (n < 2) return d;
  if (n < 5) {
    d[0] = (f[1] - f[0]) / h;
    d[n - 1] = (f[n - 1] - f[n - 2]) / h;
    for (int i = 1; i + 1 < n; ++i) d[i] = (f[i + 1] - f[i - 1]) / (2.0 * h);
    return d;
  }
  const double w = 1.0 / (12.0 * h);
  d[0] = w * (-25.0 * f[0] + 48.0 * f[1] - 36.0 * f[2] + 16.0 * f[3] - 3.0 * f[4]);
  d[1] = w * (-3.0 * f[0] - 10.0 * f[1] + 18.0 * f[2] - 6.0 * f[3] + f[4]);
  for (int i = 2; i < n - 2; ++i) {
    d[i] = w * (f[i - 2] - 8.0 * f[i - 1] + 8.0 * f[i + 1] - f[i + 2]);
  }
  d[n - 2] = -w * (-3.0 * f[n - 1] - 10.0 * f[n - 2] + 18.0 * f[n - 3] - 6.0 * f[n - 4] + f[n - 5]);
  d[n - 1] = -w * (-25.0 * f[n - 1] + 48.0 * f[n - 2] - 36.0 * f[n - 3] + 16.0 * f[n - 4] -
                   3.0 * f[n - 5]);
  return d;
}

std::vector<double> grid_dx_fd4(const Rectangle& d, const std::vector<double>& f) {
  std::vector<double> out(f.size());
  std::vector<double> row(d.Nx);
  for (int j = 0; j < d.Ny; ++j) {
    for (int i = 0; i < d.Nx; ++i) row[i] = f[static_cast<std::size_t>(j) * d.Nx + i];
    const auto dr = derivative_fd4(row, d.hx());
    for (int i = 0; i < d.Nx; ++i) out[static_cast<std::size_t>(j) * d.Nx + i] = dr[i];
  }
  return out;
}

std::vector<double> grid_dy_fd4(const Rectangle& d, const std::vector<double>& f) {
  std::vector<double> out(f.size());
  std::vector<double> col(d.Ny);
  for (int i = 0; i < d.Nx; ++i) {
    for (int j = 0; j < d.Ny; ++j) col[j] = f[static_cast<std::size_t>(j) * d.Nx + i];
    const auto dc = derivative_fd4(col, d.hy());
    for (int j = 0; j < d.Ny; ++j) out[static_cast<std::size_t>(j) * d.Nx + i] = dc[j];
  }
  return out;
}

FieldGrid::FieldGrid(Rectangle domain, std::vector<double> values)
    : domain_(domain), values_(std::move(values)) {
  domain_.validate();
  if (values_.size() != domain_.size()) {
    std::ostringstream os;
    os << "field has " << values_.size() << " values, grid needs " << domain_.size();
    throw ConfigError(os.str());
  }
  for (std::size_t k = 0; k < values_.size(); ++k) {
    if (!std::isfinite(values_[k])) {
      std::ostringstream os;
      os << "non-finite field value at node " << k % domain_.Nx << ", " << k / domain_.Nx;
      throw ConfigError(os.str());
    }
  }
  default_slopes();
}

void FieldGrid::default_slopes() {
  fx_ = grid_dx_fd4(domain_, values_);
  fy_ = grid_dy_fd4(domain_, values_);
  fxy_ = grid_dx_fd4(domain_, fy_);
}

void FieldGrid::set_slopes(std::vector<double> fx, std::vector<double> fy,
                           std::vector<double> fxy) {
  if (fx.size() != values_.size() || fy.size() != values_.size() ||
      fxy.size() != values_.size()) {
    throw PreconditionError("slope arrays must match the grid");
  }
  fx_ = std::move(fx);
  fy_ = std::move(fy);
  fxy_ = std::move(fxy);
}

namespace {

// Cubic Hermite basis and derivatives on [0, 1].
struct Basis {
  double v0, v1, d0, d1;      // value basis for f(0), f(1), f'(0), f'(1)
  double dv0, dv1, dd0, dd1;  // their t-derivatives
};

Basis hermite(double t) {
  const double t2 = t * t;
  const double t3 = t2 * t;
  Basis b;
  b.v0 = 2.0 * t3 - 3.0 * t2 + 1.0;
  b.v1 = -2.0 * t3 + 3.0 * t2;
  b.d0 = t3 - 2.0 * t2 + t;
  b.d1 = t3 - t2;
  b.dv0 = 6.0 * t2 - 6.0 * t;
  b.dv1 = -6.0 * t2 + 6.0 * t;
  b.dd0 = 3.0 * t2 - 4.0 * t + 1.0;
  b.dd1 = 3.0 * t2 - 2.0 * t;
  return b;
}

// Cell index and local coordinate; the last cell absorbs the right edge.
void locate(double x, double lo, double h, int n, int* cell, double* t) {
  int c = static_cast<int>(std::floor((x - lo) / h));
  c = std::clamp(c, 0, n - 2);
  *cell = c;
  *t = (x - (lo + c * h)) / h;
}

}  // namespace

double FieldGrid::eval(double x, double y, Eigen::Vector2d* grad) const {
  if (!domain_.contains(x, y)) {
    std::ostringstream os;
    os << "point (" << x << ", " << y << ") is outside the field grid";
    throw OutOfDomain(os.str());
  }
  const double hx = domain_.hx();
  const double hy = domain_.hy();
  int i = 0;
  int j = 0;
  double t = 0.0;
  double u = 0.0;
  locate(x, -domain_.Lx, hx, domain_.Nx, &i, &t);
  locate(y, -domain_.Ly, hy, domain_.Ny, &j, &u);
  const Basis bx = hermite(t);
  const Basis by = hermite(u);

  const std::size_t k00 = index(i, j);
  const std::size_t k10 = index(i + 1, j);
  const std::size_t k01 = index(i, j + 1);
  const std::size_t k11 = index(i + 1, j + 1);

  // Per corner: value, hx * f_x, hy * f_y, hx * hy * f_xy.
  const double f[2][2] = {{values_[k00], values_[k01]}, {values_[k10], values_[k11]}};
  const double fx[2][2] = {{hx * fx_[k00], hx * fx_[k01]}, {hx * fx_[k10], hx * fx_[k11]}};
  const double fy[2][2] = {{hy * fy_[k00], hy * fy_[k01]}, {hy * fy_[k10], hy * fy_[k11]}};
  const double fxy[2][2] = {{hx * hy * fxy_[k00], hx * hy * fxy_[k01]},
                            {hx * hy * fxy_[k10], hx * hy * fxy_[k11]}};

  const double vx[2] = {bx.v0, bx.v1}, dx[2] = {bx.d0, bx.d1};
  const double vy[2] = {by.v0, by.v1}, dy[2] = {by.d0, by.d1};
  const double vx_t[2] = {bx.dv0, bx.dv1}, dx_t[2] = {bx.dd0, bx.dd1};
  const double vy_u[2] = {by.dv0, by.dv1}, dy_u[2] = {by.dd0, by.dd1};

  double value = 0.0;
  double gt = 0.0;
  double gu = 0.0;
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      value += f[a][b] * vx[a] * vy[b] + fx[a][b] * dx[a] * vy[b] + fy[a][b] * vx[a] * dy[b] +
               fxy[a][b] * dx[a] * dy[b];
      if (grad != nullptr) {
        gt += f[a][b] * vx_t[a] * vy[b] + fx[a][b] * dx_t[a] * vy[b] +
              fy[a][b] * vx_t[a] * dy[b] + fxy[a][b] * dx_t[a] * dy[b];
        gu += f[a][b] * vx[a] * vy_u[b] + fx[a][b] * dx[a] * vy_u[b] +
              fy[a][b] * vx[a] * dy_u[b] + fxy[a][b] * dx[a] * dy_u[b];
      }
    }
  }
  if (grad != nullptr) *grad = Eigen::Vector2d(gt / hx, gu / hy);
  return value;
}

double FieldGrid::operator()(double x, double y) const { return eval(x, y, nullptr); }

double FieldGrid::fd_x(int i, int j) const {
  const double h = domain_.hx();
  if (i == 0) return (-3.0 * at(0, j) + 4.0 * at(1, j) - at(2, j)) / (2.0 * h);
  const int n = domain_.Nx - 1;
  if (i == n) return (3.0 * at(n, j) - 4.0 * at(n - 1, j) + at(n - 2, j)) / (2.0 * h);
  return (at(i + 1, j) - at(i - 1, j)) / (2.0 * h);
}

double FieldGrid::fd_y(int i, int j) const {
  const double h = domain_.hy();
  if (j == 0) return (-3.0 * at(i, 0) + 4.0 * at(i, 1) - at(i, 2)) / (2.0 * h);
  const int n = domain_.Ny - 1;
  if (j == n) return (3.0 * at(i, n) - 4.0 * at(i, n - 1) + at(i, n - 2)) / (2.0 * h);
  return (at(i, j + 1) - at(i, j - 1)) / (2.0 * h);
}

double FieldGrid::fd_xx(int i, int j) const {
  const double h = domain_.hx();
  const int c = std::clamp(i, 1, domain_.Nx - 2);
  return (at(c + 1, j) - 2.0 * at(c, j) + at(c - 1, j)) / (h * h);
}

double FieldGrid::fd_yy(int i, int j) const {
  const double h = domain_.hy();
  const int c = std::clamp(j, 1, domain_.Ny - 2);
  return (at(i, c + 1) - 2.0 * at(i, c) + at(i, c - 1)) / (h * h);
}

double FieldGrid::fd_xy(int i, int j) const {
  const int ci = std::clamp(i, 1, domain_.Nx - 2);
  const int cj = std::clamp(j, 1, domain_.Ny - 2);
  return (at(ci + 1, cj + 1) - at(ci + 1, cj - 1) - at(ci - 1, cj + 1) + at(ci - 1, cj - 1)) /
         (4.0 * domain_.hx() * domain_.hy());
}

double FieldGrid::min_value() const { return *std::min_element(values_.begin(), values_.end()); }
double FieldGrid::max_value() const { return *std::max_element(values_.begin(), values_.end()); }

}  // namespace lcb
