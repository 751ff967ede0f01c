#include "saddle/grid.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <random>
#include <stdexcept>

namespace saddle {

namespace {

void check_n(int n) {
  if (n < 3) throw std::invalid_argument("GridSpec: need at least 3 cells per axis");
}

// Face quadrature weight: domain-boundary faces control half cells.
inline double w1(int i, int n) { return (i == 0 || i == n) ? 0.5 : 1.0; }

}  // namespace

GridSpec GridSpec::unit_square(int n) {
  check_n(n);
  GridSpec g;
  g.n = n;
  g.domain = Domain::unit_square;
  g.side = 1.0;
  return g;
}

GridSpec GridSpec::quarter(int n) {
  check_n(n);
  GridSpec g;
  g.n = n;
  g.domain = Domain::quarter_square;
  g.symmetry = true;
  g.side = 0.5;
  return g;
}

GridSpec GridSpec::disk(int n, double radius, double cx, double cy) {
  check_n(n);
  if (radius < 0.0) throw std::invalid_argument("GridSpec: negative disk radius");
  if (cx - radius < 0.0 || cx + radius > 1.0 || cy - radius < 0.0 ||
      cy + radius > 1.0)
    throw std::invalid_argument("GridSpec: disk not contained in the square");
  GridSpec g;
  g.n = n;
  g.domain = Domain::disk_in_square;
  g.side = 1.0;
  g.disk_radius = radius;
  g.disk_cx = cx;
  g.disk_cy = cy;
  return g;
}

double ScalarField::norm() const {
  double s = 0.0;
  for (double x : v) s += x * x;
  return grid.h() * std::sqrt(s);
}

bool ScalarField::all_finite() const {
  for (double x : v)
    if (!std::isfinite(x)) return false;
  return true;
}

void FaceField::apply_symmetry_traces() {
  if (!grid.symmetry) return;
  const int n = grid.n;
  for (int j = 0; j < n; ++j) at1(0, j) = 0.0;
  for (int i = 0; i < n; ++i) at2(i, 0) = 0.0;
}

double FaceField::norm() const { return std::sqrt(inner(*this, *this)); }

bool FaceField::all_finite() const {
  for (double x : c1)
    if (!std::isfinite(x)) return false;
  for (double x : c2)
    if (!std::isfinite(x)) return false;
  return true;
}

double inner(const ScalarField& a, const ScalarField& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.v.size(); ++i) s += a.v[i] * b.v[i];
  const double h = a.grid.h();
  return h * h * s;
}

double inner(const FaceField& a, const FaceField& b) {
  const int n = a.grid.n;
  double s = 0.0;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i <= n; ++i)
      s += w1(i, n) * a.at1(i, j) * b.at1(i, j);
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i < n; ++i)
      s += w1(j, n) * a.at2(i, j) * b.at2(i, j);
  const double h = a.grid.h();
  return h * h * s;
}

FaceField gradient(const ScalarField& u) {
  const GridSpec& g = u.grid;
  const int n = g.n;
  const double ih = 1.0 / g.h();
  FaceField out(g);
  for (int j = 0; j < n; ++j) {
    out.at1(0, j) = g.symmetry ? 0.0 : 2.0 * u.at(0, j) * ih;
    for (int i = 1; i < n; ++i)
      out.at1(i, j) = (u.at(i, j) - u.at(i - 1, j)) * ih;
    out.at1(n, j) = -2.0 * u.at(n - 1, j) * ih;
  }
  for (int i = 0; i < n; ++i) {
    out.at2(i, 0) = g.symmetry ? 0.0 : 2.0 * u.at(i, 0) * ih;
    out.at2(i, n) = -2.0 * u.at(i, n - 1) * ih;
  }
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < n; ++i)
      out.at2(i, j) = (u.at(i, j) - u.at(i, j - 1)) * ih;
  return out;
}

ScalarField divergence(const FaceField& p) {
  const GridSpec& g = p.grid;
  const int n = g.n;
  const double ih = 1.0 / g.h();
  ScalarField out(g);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      // Quarter-symmetry traces read as zero so Div stays -(grad)^* for any
      // stored data.
      double left = (i == 0 && g.symmetry) ? 0.0 : p.at1(i, j);
      double bottom = (j == 0 && g.symmetry) ? 0.0 : p.at2(i, j);
      out.at(i, j) =
          (p.at1(i + 1, j) - left + p.at2(i, j + 1) - bottom) * ih;
    }
  return out;
}

double check_adjointness(const ScalarField& u, const FaceField& p) {
  FaceField gu = gradient(u);
  ScalarField dp = divergence(p);
  double num = inner(gu, p) + inner(u, dp);
  double den = u.norm() * p.norm();
  return den == 0.0 ? 0.0 : std::abs(num) / den;
}

double operator_norm_bound(const GridSpec& grid) {
  return 2.0 * std::sqrt(2.0) / grid.h();
}

double power_iteration_norm(const GridSpec& grid, int iters) {
  if (iters < 50)
    throw std::invalid_argument("power_iteration_norm: need iters >= 50");
  std::mt19937_64 rng(42);
  std::normal_distribution<double> gauss(0.0, 1.0);
  ScalarField v(grid);
  for (double& x : v.v) x = gauss(rng);
  double lambda = 0.0;
  for (int it = 0; it < iters; ++it) {
    // w = (grad)^* grad v = -Div grad v
    ScalarField w = divergence(gradient(v));
    for (double& x : w.v) x = -x;
    double vv = 0.0, vw = 0.0, ww = 0.0;
    for (std::size_t k = 0; k < v.v.size(); ++k) {
      vv += v.v[k] * v.v[k];
      vw += v.v[k] * w.v[k];
      ww += w.v[k] * w.v[k];
    }
    lambda = vw / vv;
    double s = 1.0 / std::sqrt(ww);
    for (std::size_t k = 0; k < v.v.size(); ++k) v.v[k] = w.v[k] * s;
  }
  return std::sqrt(lambda);
}

std::vector<std::size_t> mask_disk(const GridSpec& grid) {
  if (grid.domain != Domain::disk_in_square)
    throw std::invalid_argument("mask_disk: grid has no disk domain");
  std::vector<std::size_t> inside;
  const double h = grid.h();
  const double r2 = grid.disk_radius * grid.disk_radius;
  for (int j = 0; j < grid.n; ++j)
    for (int i = 0; i < grid.n; ++i) {
      double x = (i + 0.5) * h - grid.disk_cx;
      double y = (j + 0.5) * h - grid.disk_cy;
      if (x * x + y * y < r2)
        inside.push_back(std::size_t(i) + std::size_t(grid.n) * j);
    }
  return inside;
}

std::vector<unsigned char> active_cells(const GridSpec& grid) {
  if (grid.domain != Domain::disk_in_square)
    return std::vector<unsigned char>(grid.cells(), 1);
  std::vector<unsigned char> mask(grid.cells(), 0);
  for (std::size_t idx : mask_disk(grid)) mask[idx] = 1;
  return mask;
}

namespace {

void write_rows(std::ostream& os, const double* data, int nx, int ny) {
  char buf[32];
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      std::snprintf(buf, sizeof buf, "%.17g",
                    data[std::size_t(i) + std::size_t(nx) * j]);
      os << buf << (i + 1 < nx ? ' ' : '\n');
    }
  }
}

void read_rows(std::istream& is, double* data, int nx, int ny) {
  for (std::size_t k = 0; k < std::size_t(nx) * ny; ++k)
    if (!(is >> data[k])) throw std::runtime_error("field read: truncated data");
}

void write_h(std::ostream& os, double h) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", h);
  os << buf;
}

}  // namespace

void write_field(std::ostream& os, const ScalarField& u) {
  os << u.grid.n << ' ';
  write_h(os, u.grid.h());
  os << '\n';
  write_rows(os, u.v.data(), u.grid.n, u.grid.n);
}

void write_field(std::ostream& os, const FaceField& p) {
  const int n = p.grid.n;
  os << (n + 1) << ' ' << n << ' ';
  write_h(os, p.grid.h());
  os << '\n';
  write_rows(os, p.c1.data(), n + 1, n);
  os << n << ' ' << (n + 1) << ' ';
  write_h(os, p.grid.h());
  os << '\n';
  write_rows(os, p.c2.data(), n, n + 1);
}

ScalarField read_scalar_field(std::istream& is, const GridSpec& grid) {
  int n = 0;
  double h = 0.0;
  if (!(is >> n >> h) || n != grid.n)
    throw std::runtime_error("field read: dimension header mismatch");
  ScalarField u(grid);
  read_rows(is, u.v.data(), grid.n, grid.n);
  return u;
}

FaceField read_face_field(std::istream& is, const GridSpec& grid) {
  FaceField p(grid);
  int nx = 0, ny = 0;
  double h = 0.0;
  if (!(is >> nx >> ny >> h) || nx != grid.n + 1 || ny != grid.n)
    throw std::runtime_error("field read: dimension header mismatch");
  read_rows(is, p.c1.data(), grid.n + 1, grid.n);
  if (!(is >> nx >> ny >> h) || nx != grid.n || ny != grid.n + 1)
    throw std::runtime_error("field read: dimension header mismatch");
  read_rows(is, p.c2.data(), grid.n, grid.n + 1);
  return p;
}

}  // namespace saddle
