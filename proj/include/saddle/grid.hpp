#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

namespace saddle {

// Staggered MAC discretization of the square: scalars at cell centers,
// vector components on cell faces. The defining contract is the exact
// adjointness Div^h = -(grad^h)^* under the weighted face inner product
// (domain-boundary faces carry weight 1/2, matching the half-cell one-sided
// Dirichlet closure). With that closure the sampled sine is an exact discrete
// eigenvector and ||grad^h|| = 2*sqrt(2)/h is attained.

enum class Domain { unit_square, quarter_square, disk_in_square };

struct GridSpec {
  int n = 0;  // cells per axis
  Domain domain = Domain::unit_square;
  bool symmetry = false;  // quarter-domain BCs active
  double side = 1.0;
  double disk_radius = 0.0;
  double disk_cx = 0.0, disk_cy = 0.0;

  double h() const { return side / n; }
  std::size_t cells() const { return std::size_t(n) * n; }

  static GridSpec unit_square(int n);
  static GridSpec quarter(int n);  // side 0.5, symmetry BCs at x=0, y=0
  static GridSpec disk(int n, double radius = 0.5, double cx = 0.5,
                       double cy = 0.5);

  bool operator==(const GridSpec&) const = default;
};

struct ScalarField {
  GridSpec grid;
  std::vector<double> v;  // n*n, index i + n*j

  ScalarField() = default;
  explicit ScalarField(const GridSpec& g) : grid(g), v(g.cells(), 0.0) {}

  double& at(int i, int j) { return v[std::size_t(i) + std::size_t(grid.n) * j]; }
  double at(int i, int j) const { return v[std::size_t(i) + std::size_t(grid.n) * j]; }

  double norm() const;  // discrete L2: h * sqrt(sum v^2)
  bool all_finite() const;
};

struct FaceField {
  GridSpec grid;
  std::vector<double> c1;  // (n+1) x n vertical faces, index i + (n+1)*j
  std::vector<double> c2;  // n x (n+1) horizontal faces, index i + n*j

  FaceField() = default;
  explicit FaceField(const GridSpec& g)
      : grid(g),
        c1(std::size_t(g.n + 1) * g.n, 0.0),
        c2(std::size_t(g.n) * (g.n + 1), 0.0) {}

  double& at1(int i, int j) { return c1[std::size_t(i) + std::size_t(grid.n + 1) * j]; }
  double at1(int i, int j) const { return c1[std::size_t(i) + std::size_t(grid.n + 1) * j]; }
  double& at2(int i, int j) { return c2[std::size_t(i) + std::size_t(grid.n) * j]; }
  double at2(int i, int j) const { return c2[std::size_t(i) + std::size_t(grid.n) * j]; }

  // p1(0,.) = p2(.,0) = 0 when quarter symmetry is active.
  void apply_symmetry_traces();

  double norm() const;  // weighted discrete L2
  bool all_finite() const;
};

double inner(const ScalarField& a, const ScalarField& b);
double inner(const FaceField& a, const FaceField& b);  // weighted

// Two-point face differences with u = 0 on the physical boundary located on
// cell faces (value at the boundary face used directly, i.e. +-2u/h), zero
// normal component on quarter-symmetry faces.
FaceField gradient(const ScalarField& u);

// Negative adjoint of gradient; quarter-symmetry traces read as zero.
ScalarField divergence(const FaceField& p);

// |<grad u, p> + <u, Div p>| / (|u| |p|); the module's defining contract
// keeps this at roundoff level (<= 1e-13).
double check_adjointness(const ScalarField& u, const FaceField& p);

// c_h = 2*sqrt(2)/h, the bound used in explicit step-size selection.
double operator_norm_bound(const GridSpec& grid);

// Largest-singular-value estimate of grad^h by power iteration on
// (grad^h)^* grad^h from a fixed-seed random start. Requires iters >= 50.
double power_iteration_norm(const GridSpec& grid, int iters);

// Cell indices whose centers lie inside the disk; the complement defines the
// mask-zero projector approximating u in H^1_0(disk).
std::vector<std::size_t> mask_disk(const GridSpec& grid);

// Cell activity mask: 1 everywhere except outside the disk in disk mode.
std::vector<unsigned char> active_cells(const GridSpec& grid);

// Text serialization, 17 significant digits. ScalarField: "N h" then N rows
// (y-outer) of N values. FaceField: two blocks "nx ny h" + rows, comp1 then
// comp2.
void write_field(std::ostream& os, const ScalarField& u);
void write_field(std::ostream& os, const FaceField& p);
ScalarField read_scalar_field(std::istream& is, const GridSpec& grid);
FaceField read_face_field(std::istream& is, const GridSpec& grid);

}  // namespace saddle
