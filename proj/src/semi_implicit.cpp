#include "saddle/semi_implicit.hpp"

#include <cmath>
#include <random>
#include <sstream>

namespace saddle {

namespace {

// (A*A + I) x
void apply_normal_plus_identity(const SaddleProblem& problem, const Vector& x,
                                Vector& scratch_dual, Vector& out) {
  problem.eval_A(x, scratch_dual);
  problem.eval_A_adjoint(scratch_dual, out);
  for (std::size_t i = 0; i < x.size(); ++i) out[i] += x[i];
}

}  // namespace

Vector InnerSolver::solve(const SaddleProblem& problem,
                          const Vector& rhs) const {
  const double nb = norm(rhs);
  Vector x = zeros(rhs.size());
  if (nb == 0.0) return x;
  Vector scratch = zeros(problem.dual_dim);
  Vector r = rhs;  // r = rhs - Op(0)
  Vector d = r;
  Vector ad = zeros(rhs.size());
  double rr = dot(r, r);
  for (int it = 0; it < max_inner_iters; ++it) {
    if (std::sqrt(rr) <= tolerance * nb) return x;
    apply_normal_plus_identity(problem, d, scratch, ad);
    double da = dot(d, ad);
    double a = rr / da;
    axpy(a, d, x);
    axpy(-a, ad, r);
    double rr2 = dot(r, r);
    double b = rr2 / rr;
    rr = rr2;
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = r[i] + b * d[i];
  }
  if (std::sqrt(rr) <= tolerance * nb) return x;
  std::ostringstream msg;
  msg << "InnerSolver: no convergence in " << max_inner_iters
      << " iterations, achieved relative residual " << std::sqrt(rr) / nb;
  throw InnerSolveError(msg.str());
}

bool validate_semi_implicit_steps(double alpha, double beta,
                                  const SaddleProblem& problem) {
  if (!(alpha > 0.0) || !(beta > 0.0))
    throw std::invalid_argument(
        "validate_semi_implicit_steps: steps must be positive");
  const double lf = problem.lipschitz_F;
  const double lg = problem.lipschitz_G;
  if (lg > 0.0 && !(alpha < 2.0 / lg)) return false;
  if (lf > 0.0 && !(beta < 2.0 / lf)) return false;
  return alpha * beta + alpha * lg / 2.0 < 1.0;
}

Vector prox_quadratic(const SaddleProblem& problem, const InnerSolver& solver,
                      const Vector& q0, const Vector& u0) {
  Vector rhs;
  problem.eval_A_adjoint(q0, rhs);
  for (std::size_t i = 0; i < rhs.size(); ++i) rhs[i] += u0[i];
  return solver.solve(problem, rhs);
}

SolverState semi_implicit_iterate(const SolverState& state,
                                  const SaddleProblem& problem,
                                  const StepParams& steps,
                                  const InnerSolver& solver) {
  Vector tmp;
  problem.eval_A(state.u_bar, tmp);
  Vector gp;
  problem.eval_grad_G(state.p, gp);
  Vector pnext = state.p;
  for (std::size_t i = 0; i < pnext.size(); ++i)
    pnext[i] += steps.alpha * (tmp[i] - gp[i]);
  pnext = problem.project_K.project(pnext);

  Vector fu;
  problem.eval_grad_F(state.u, fu);
  Vector utilde = prox_quadratic(problem, solver, pnext, fu);
  Vector unext = state.u;
  for (std::size_t i = 0; i < unext.size(); ++i)
    unext[i] -= steps.beta * utilde[i];
  unext = problem.project_C.project(unext);

  SolverState next;
  next.p = std::move(pnext);
  next.u_bar.resize(unext.size());
  for (std::size_t i = 0; i < unext.size(); ++i)
    next.u_bar[i] = 2.0 * unext[i] - state.u[i];
  next.u = std::move(unext);
  next.iter = state.iter + 1;
  if (!all_finite(next.u) || !all_finite(next.p))
    throw DivergenceError("semi_implicit_iterate: non-finite iterate");
  return next;
}

ConvergenceReport run_semi_implicit(const SaddleProblem& problem,
                                    const StepParams& steps,
                                    const SolverState& init,
                                    const StopRule& stop,
                                    const InnerSolver& solver,
                                    bool override_validation) {
  if (!override_validation &&
      !validate_semi_implicit_steps(steps.alpha, steps.beta, problem))
    throw std::invalid_argument(
        "run_semi_implicit: step sizes violate the convergence conditions");
  return run_with_step_function(init, stop, [&](const SolverState& s) {
    return semi_implicit_iterate(s, problem, steps, solver);
  });
}

bool check_hypothesis_Ha(const SaddleProblem& problem,
                         const Projector& projector, int samples,
                         unsigned seed, double tol) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vector u(problem.primal_dim), au(problem.dual_dim), apu(problem.dual_dim);
  for (int s = 0; s < samples; ++s) {
    for (double& v : u) v = gauss(rng);
    Vector pu = projector.project(u);
    Vector w = u;
    for (std::size_t i = 0; i < w.size(); ++i) w[i] -= pu[i];
    problem.eval_A(w, au);
    problem.eval_A(pu, apu);
    if (dot(au, apu) < -tol) return false;
  }
  return true;
}

}  // namespace saddle
