#pragma once

#include <stdexcept>

#include "saddle/core.hpp"

namespace saddle {

class InnerSolveError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Matrix-free conjugate-gradient solver for (A*A + I) x = rhs. The operator
// is SPD by construction, so CG is exact in theory; `tolerance` is a relative
// residual bound.
struct InnerSolver {
  double tolerance = 1e-10;
  int max_inner_iters = 10000;

  Vector solve(const SaddleProblem& problem, const Vector& rhs) const;
};

// Step conditions of the semi-implicit scheme:
//   alpha < 2/L_g, beta < 2/L_f (vacuous at 0), alpha*beta + alpha*L_g/2 < 1.
// No dependence on ||A||.
bool validate_semi_implicit_steps(double alpha, double beta,
                                  const SaddleProblem& problem);

// utilde = (A*A + I)^{-1} (A* q0 + u0), the minimizer of
// (|A u - q0|^2 + |u - u0|^2) / 2.
Vector prox_quadratic(const SaddleProblem& problem, const InnerSolver& solver,
                      const Vector& q0, const Vector& u0);

// One step of the semi-implicit iteration:
//   p+ = Pi_K(p + alpha (A ubar - G'(p)))
//   utilde = (A*A + I)^{-1} (A* p+ + F'(u))
//   u+ = Pi_C(u - beta utilde),  ubar+ = 2 u+ - u
SolverState semi_implicit_iterate(const SolverState& state,
                                  const SaddleProblem& problem,
                                  const StepParams& steps,
                                  const InnerSolver& solver);

ConvergenceReport run_semi_implicit(const SaddleProblem& problem,
                                    const StepParams& steps,
                                    const SolverState& init,
                                    const StopRule& stop,
                                    const InnerSolver& solver,
                                    bool override_validation = false);

// Sampled diagnostic for the hypothesis
//   <A(u - Pi_O(u)), A Pi_O(u)> >= 0  for all u.
// True iff the inequality holds (>= -tol) on `samples` seeded random inputs.
// A sampled check cannot prove the universal statement; this is never used as
// a hard gate.
bool check_hypothesis_Ha(const SaddleProblem& problem,
                         const Projector& projector, int samples,
                         unsigned seed = 2024, double tol = 1e-10);

}  // namespace saddle
