#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "saddle/projections.hpp"
#include "saddle/vec.hpp"

namespace saddle {

// Thrown when an iterate turns non-finite (invalid steps, blow-up).
class DivergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Problem description for inf_u sup_p <Au,p> + F(u) - G(p) over C x K.
// A null grad_F / grad_G means the zero map.
struct SaddleProblem {
  std::size_t primal_dim = 0;
  std::size_t dual_dim = 0;
  std::function<void(const Vector& u, Vector& out)> apply_A;
  std::function<void(const Vector& p, Vector& out)> apply_A_adjoint;
  std::function<void(const Vector& u, Vector& out)> grad_F;
  std::function<void(const Vector& p, Vector& out)> grad_G;
  double lipschitz_F = 0.0;
  double lipschitz_G = 0.0;
  double norm_A = 0.0;  // upper bound on ||A||
  Projector project_C;
  Projector project_K;

  void eval_A(const Vector& u, Vector& out) const;
  void eval_A_adjoint(const Vector& p, Vector& out) const;
  void eval_grad_F(const Vector& u, Vector& out) const;
  void eval_grad_G(const Vector& p, Vector& out) const;
};

struct StepParams {
  double alpha;
  double beta;
  StepParams(double a, double b) : alpha(a), beta(b) {
    if (!(a > 0.0) || !(b > 0.0))
      throw std::invalid_argument("StepParams: alpha and beta must be positive");
  }
};

struct SolverState {
  Vector u, p, u_bar;
  long iter = 0;
};

// Zero element projected onto C and K, u_bar = u0.
SolverState initial_state(const SaddleProblem& problem);

struct StopRule {
  double tolerance = 1e-8;
  long max_iters = 100000;
};

enum class Termination { converged, max_iters, diverged };

std::string to_string(Termination t);

struct ConvergenceReport {
  long iterations = 0;
  std::vector<double> residual_history;  // one entry per iteration
  std::vector<double> energy_history;    // filled by application drivers
  Termination terminated = Termination::max_iters;
  double wall_time = 0.0;  // seconds
  SolverState final_state;
};

// Strict step conditions of the explicit scheme:
//   alpha < 2/L_g, beta < 2/L_f (vacuous at 0), and
//   alpha*beta*(||A||^2 - L_f*L_g/4) + alpha*L_g/2 + beta*L_f/2 < 1.
// Nonpositive steps are rejected with an exception, not a false return.
bool validate_explicit_steps(double alpha, double beta,
                             const SaddleProblem& problem);

// One step of the explicit primal-dual iteration:
//   p+ = Pi_K(p + alpha (A ubar - G'(p)))
//   u+ = Pi_C(u - beta (A* p+ + F'(u)))
//   ubar+ = 2 u+ - u
SolverState explicit_iterate(const SolverState& state,
                             const SaddleProblem& problem,
                             const StepParams& steps);

// |u+ - u| + |p+ - p|
double fixed_point_residual(const SolverState& prev, const SolverState& next);

ConvergenceReport run_explicit(const SaddleProblem& problem,
                               const StepParams& steps,
                               const SolverState& init, const StopRule& stop,
                               bool override_validation = false);

// Generic driver loop shared by the explicit and semi-implicit runs: iterates
// `step` until fixed_point_residual drops below the tolerance, flagging
// divergence on DivergenceError.
ConvergenceReport run_with_step_function(
    const SolverState& init, const StopRule& stop,
    const std::function<SolverState(const SolverState&)>& step);

}  // namespace saddle
