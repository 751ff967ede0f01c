#include "saddle/helmholtz.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "saddle/semi_implicit.hpp"

namespace saddle {

HelmholtzConfig::HelmholtzConfig(const GridSpec& g, double tol, int maxit)
    : grid(g), rel_tolerance(tol), max_iters(maxit) {
  if (!(rel_tolerance > 0.0) || !(rel_tolerance < 1.0))
    throw std::invalid_argument("HelmholtzConfig: rel_tolerance must be in (0,1)");
  if (max_iters < 1)
    throw std::invalid_argument("HelmholtzConfig: max_iters must be >= 1");
}

namespace {

void mask_field(ScalarField& v, const std::vector<unsigned char>& mask) {
  for (std::size_t k = 0; k < v.v.size(); ++k)
    if (!mask[k]) v.v[k] = 0.0;
}

ScalarField apply_masked(const ScalarField& v,
                         const std::vector<unsigned char>& mask, bool masked) {
  ScalarField w = v;
  if (masked) mask_field(w, mask);
  ScalarField out = divergence(gradient(w));
  for (std::size_t k = 0; k < out.v.size(); ++k) out.v[k] = w.v[k] - out.v[k];
  if (masked) mask_field(out, mask);
  return out;
}

}  // namespace

ScalarField helmholtz_apply(const GridSpec& grid, const ScalarField& v) {
  const bool masked = grid.domain == Domain::disk_in_square;
  std::vector<unsigned char> mask;
  if (masked) mask = active_cells(grid);
  return apply_masked(v, mask, masked);
}

ScalarField helmholtz_solve(const HelmholtzConfig& config,
                            const ScalarField& rhs,
                            const ScalarField* warm_start,
                            HelmholtzStats* stats) {
  if (!rhs.all_finite())
    throw std::invalid_argument("helmholtz_solve: non-finite right-hand side");
  const GridSpec& grid = config.grid;
  const bool masked = grid.domain == Domain::disk_in_square;
  std::vector<unsigned char> mask;
  if (masked) mask = active_cells(grid);

  ScalarField b = rhs;
  if (masked) mask_field(b, mask);
  double nb = 0.0;
  for (double x : b.v) nb += x * x;
  nb = std::sqrt(nb);
  if (nb == 0.0) {
    if (stats) *stats = {0, 0.0};
    return ScalarField(grid);
  }

  ScalarField x(grid);
  ScalarField r = b;
  if (warm_start) {
    x = *warm_start;
    if (masked) mask_field(x, mask);
    ScalarField ax = apply_masked(x, mask, masked);
    for (std::size_t k = 0; k < r.v.size(); ++k) r.v[k] = b.v[k] - ax.v[k];
  }
  ScalarField d = r;
  double rr = 0.0;
  for (double v : r.v) rr += v * v;

  int it = 0;
  while (std::sqrt(rr) > config.rel_tolerance * nb) {
    if (it >= config.max_iters) {
      std::ostringstream msg;
      msg << "helmholtz_solve: iteration budget " << config.max_iters
          << " exhausted, achieved relative residual " << std::sqrt(rr) / nb;
      throw InnerSolveError(msg.str());
    }
    ScalarField ad = apply_masked(d, mask, masked);
    double da = 0.0;
    for (std::size_t k = 0; k < d.v.size(); ++k) da += d.v[k] * ad.v[k];
    double a = rr / da;
    for (std::size_t k = 0; k < x.v.size(); ++k) {
      x.v[k] += a * d.v[k];
      r.v[k] -= a * ad.v[k];
    }
    double rr2 = 0.0;
    for (double v : r.v) rr2 += v * v;
    double beta = rr2 / rr;
    rr = rr2;
    for (std::size_t k = 0; k < d.v.size(); ++k)
      d.v[k] = r.v[k] + beta * d.v[k];
    ++it;
  }
  if (stats) *stats = {it, std::sqrt(rr) / nb};
  return x;
}

}  // namespace saddle
