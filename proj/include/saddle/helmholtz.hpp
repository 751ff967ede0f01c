#pragma once

#include <vector>

#include "saddle/grid.hpp"

namespace saddle {

// Solver for (I - Lap^h) v = rhs with v = 0 on the domain boundary, the inner
// solve of the implicit schemes. Lap^h = Div^h grad^h, so the operator is SPD
// by the adjointness contract; matrix-free conjugate gradients.
struct HelmholtzConfig {
  GridSpec grid;
  double rel_tolerance = 1e-10;
  int max_iters = 100000;

  HelmholtzConfig() = default;
  HelmholtzConfig(const GridSpec& g, double tol = 1e-10, int maxit = 100000);
};

// v - Div(grad v), restricted to active cells in disk mode.
ScalarField helmholtz_apply(const GridSpec& grid, const ScalarField& v);

struct HelmholtzStats {
  int iterations = 0;
  double achieved_rel_residual = 0.0;
};

// CG solve; throws InnerSolveError (message carries the achieved residual)
// when the iteration budget is exhausted. `warm_start` seeds the iteration.
ScalarField helmholtz_solve(const HelmholtzConfig& config,
                            const ScalarField& rhs,
                            const ScalarField* warm_start = nullptr,
                            HelmholtzStats* stats = nullptr);

}  // namespace saddle
