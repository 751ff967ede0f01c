#include "saddle/core.hpp"

#include <chrono>
#include <limits>

namespace saddle {

void SaddleProblem::eval_A(const Vector& u, Vector& out) const {
  out.assign(dual_dim, 0.0);
  if (apply_A) apply_A(u, out);
}

void SaddleProblem::eval_A_adjoint(const Vector& p, Vector& out) const {
  out.assign(primal_dim, 0.0);
  if (apply_A_adjoint) apply_A_adjoint(p, out);
}

void SaddleProblem::eval_grad_F(const Vector& u, Vector& out) const {
  out.assign(primal_dim, 0.0);
  if (grad_F) grad_F(u, out);
}

void SaddleProblem::eval_grad_G(const Vector& p, Vector& out) const {
  out.assign(dual_dim, 0.0);
  if (grad_G) grad_G(p, out);
}

SolverState initial_state(const SaddleProblem& problem) {
  SolverState s;
  s.u = problem.project_C.project(zeros(problem.primal_dim));
  s.p = problem.project_K.project(zeros(problem.dual_dim));
  s.u_bar = s.u;
  s.iter = 0;
  return s;
}

std::string to_string(Termination t) {
  switch (t) {
    case Termination::converged: return "converged";
    case Termination::max_iters: return "max_iters";
    case Termination::diverged: return "diverged";
  }
  return "unknown";
}

bool validate_explicit_steps(double alpha, double beta,
                             const SaddleProblem& problem) {
  if (!(alpha > 0.0) || !(beta > 0.0))
    throw std::invalid_argument("validate_explicit_steps: steps must be positive");
  const double lf = problem.lipschitz_F;
  const double lg = problem.lipschitz_G;
  const double na = problem.norm_A;
  if (lg > 0.0 && !(alpha < 2.0 / lg)) return false;
  if (lf > 0.0 && !(beta < 2.0 / lf)) return false;
  return alpha * beta * (na * na - lf * lg / 4.0) + alpha * lg / 2.0 +
             beta * lf / 2.0 <
         1.0;
}

SolverState explicit_iterate(const SolverState& state,
                             const SaddleProblem& problem,
                             const StepParams& steps) {
  Vector tmp;
  problem.eval_A(state.u_bar, tmp);  // A ubar
  Vector gp;
  problem.eval_grad_G(state.p, gp);
  Vector pnext = state.p;
  for (std::size_t i = 0; i < pnext.size(); ++i)
    pnext[i] += steps.alpha * (tmp[i] - gp[i]);
  pnext = problem.project_K.project(pnext);

  problem.eval_A_adjoint(pnext, tmp);  // A* p+
  Vector gu;
  problem.eval_grad_F(state.u, gu);
  Vector unext = state.u;
  for (std::size_t i = 0; i < unext.size(); ++i)
    unext[i] -= steps.beta * (tmp[i] + gu[i]);
  unext = problem.project_C.project(unext);

  SolverState next;
  next.p = std::move(pnext);
  next.u_bar.resize(unext.size());
  for (std::size_t i = 0; i < unext.size(); ++i)
    next.u_bar[i] = 2.0 * unext[i] - state.u[i];
  next.u = std::move(unext);
  next.iter = state.iter + 1;
  if (!all_finite(next.u) || !all_finite(next.p))
    throw DivergenceError("explicit_iterate: non-finite iterate");
  return next;
}

double fixed_point_residual(const SolverState& prev, const SolverState& next) {
  double du = 0.0, dp = 0.0;
  for (std::size_t i = 0; i < prev.u.size(); ++i) {
    double d = next.u[i] - prev.u[i];
    du += d * d;
  }
  for (std::size_t i = 0; i < prev.p.size(); ++i) {
    double d = next.p[i] - prev.p[i];
    dp += d * d;
  }
  return std::sqrt(du) + std::sqrt(dp);
}

namespace {

template <typename Step>
ConvergenceReport run_driver(const SolverState& init, const StopRule& stop,
                             Step step) {
  auto t0 = std::chrono::steady_clock::now();
  ConvergenceReport report;
  SolverState state = init;
  report.terminated = Termination::max_iters;
  for (long n = 0; n < stop.max_iters; ++n) {
    SolverState next;
    try {
      next = step(state);
    } catch (const DivergenceError&) {
      report.terminated = Termination::diverged;
      break;
    }
    double res = fixed_point_residual(state, next);
    state = std::move(next);
    report.residual_history.push_back(res);
    if (res < stop.tolerance) {
      report.terminated = Termination::converged;
      break;
    }
  }
  report.iterations = long(report.residual_history.size());
  report.final_state = std::move(state);
  report.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return report;
}

}  // namespace

ConvergenceReport run_explicit(const SaddleProblem& problem,
                               const StepParams& steps,
                               const SolverState& init, const StopRule& stop,
                               bool override_validation) {
  if (!override_validation && !validate_explicit_steps(steps.alpha, steps.beta, problem))
    throw std::invalid_argument(
        "run_explicit: step sizes violate the convergence conditions");
  return run_driver(init, stop, [&](const SolverState& s) {
    return explicit_iterate(s, problem, steps);
  });
}

// Shared with semi_implicit.cpp.
ConvergenceReport run_with_step_function(
    const SolverState& init, const StopRule& stop,
    const std::function<SolverState(const SolverState&)>& step) {
  return run_driver(init, stop, step);
}

}  // namespace saddle
