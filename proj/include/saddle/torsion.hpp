#pragma once

#include <array>
#include <optional>

#include "saddle/core.hpp"
#include "saddle/grid.hpp"

namespace saddle::torsion {

using Vec2 = std::array<double, 2>;

// Integrand of the torsion-rod problem: |z| for |z| <= 1, (|z|^2 + 1)/2
// above; continuous at the unit circle.
double phi(const Vec2& z);
double phi_magnitude(double m);

// Fenchel conjugate: (|p|^2 - 1)_+ / 2.
double phi_star(const Vec2& p);
double phi_star_magnitude(double m);

// Lipschitz constant of the regularized derivative, (2 + eps) / (2 eps).
double dual_lipschitz(double epsilon);

// Radial factor f with dphi*_eps(p) = f(|p|) p: 0 below the connection band,
// 1 above it, (2+eps)/(2 eps) * (m + eps/2 - 1)/m inside ||p|-1| <= eps/2.
// f(0) = 0.
double dphi_star_eps_factor(double m, double epsilon);
Vec2 dphi_star_eps(const Vec2& p, double epsilon);

enum class Scheme { ES, IS, ISS };

struct TorsionConfig {
  GridSpec grid;
  double lambda = 5.0;
  double epsilon = 0.0;  // <= 0 resolves to the default 3h
  Scheme scheme = Scheme::ES;
  int kappa = 50;  // dual sub-iterations, ISS only
  std::optional<StepParams> steps;  // unset: derive_steps
  double stop_tolerance = 1e-4;
  long max_outer_iters = 400000;
  double inner_tolerance = 1e-10;

  double epsilon_value() const { return epsilon > 0 ? epsilon : 3.0 * grid.h(); }
  void validate() const;  // throws std::invalid_argument
};

struct TorsionResult {
  ScalarField u;
  FaceField p;
  ConvergenceReport report;
  std::vector<double> primal_energy_history;  // integral of phi(grad u)
  std::vector<double> dual_energy_history;    // integral of phi*(p)
};

// Scheme-dependent (alpha, beta): alpha = s * 4 eps/(2+eps) with the split
// s = 0.45 (ES, ISS sub-step) / 0.60 (IS), then beta maximal with margin 0.95
// under the scheme's condition
//   ES:  alpha*beta*c_h^2 + alpha*(2+eps)/(4 eps) <= 1,  c_h = 2 sqrt(2)/h
//   IS:  alpha*beta       + alpha*(2+eps)/(4 eps) <  1
//   ISS: sub-step alpha/kappa inside the dual loop, the full alpha in the
//        product term.
StepParams derive_steps(const TorsionConfig& config);

// Paper stop criterion: discrete L2 norm of Div p + lambda over the active
// domain.
double residual(const FaceField& p, double lambda);
double residual(const FaceField& p, double lambda,
                const std::vector<unsigned char>& active);

// Dual update p + alpha (grad(ubar) - dphi*_eps(p)) on the staggered grid;
// the tangential component at each face is the average of the 4 nearest
// faces of the other component (one-sided at the domain boundary).
void dual_step(FaceField& p, const FaceField& grad_ubar, double alpha,
               double epsilon);

// Midpoint quadrature of phi(grad u) / phi*(p) with face values averaged to
// cell centers; disk mode integrates over active cells only.
double primal_energy(const ScalarField& u);
double dual_energy(const FaceField& p);

// Runs the selected scheme from zero fields until the stop criterion or the
// outer budget. ES applies the Dirichlet/disk mask after the primal step; the
// implicit schemes absorb the boundary condition into the Helmholtz solve.
TorsionResult run_scheme(const TorsionConfig& config);

struct RadiusEstimate {
  std::optional<double> r_N;  // max radius with |grad u| < 1/2 inside the annulus
  std::optional<double> R_N;  // min radius with |grad u| > 1
};

// Disk-domain radius extraction from cell-centered |grad u| (face-averaged).
RadiusEstimate extract_radii(const ScalarField& u);

struct OptimalityReport {
  double feasibility = 0.0;         // |Div p + lambda|_L2
  double violation_fraction = 0.0;  // cells with |grad u - dphi*_eps(p)| > tol
  double fenchel_gap = 0.0;         // integral of phi(grad u)+phi*(p)-grad u.p
};

// epsilon <= 0 resolves to the 3h default of the grid the fields live on.
OptimalityReport check_optimality(const ScalarField& u, const FaceField& p,
                                  double lambda, double tol,
                                  double epsilon = 0.0);

}  // namespace saddle::torsion
