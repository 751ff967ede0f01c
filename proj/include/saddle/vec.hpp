#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace saddle {

// Dense vectors for the generic saddle-point drivers. Grid fields have their
// own containers; these helpers cover the small dy/toy problems and the CG
// inner solver.
using Vector = std::vector<double>;

inline double dot(const Vector& a, const Vector& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm(const Vector& a) { return std::sqrt(dot(a, a)); }

// y += c*x
inline void axpy(double c, const Vector& x, Vector& y) {
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += c * x[i];
}

inline void scale(Vector& a, double c) {
  for (double& v : a) v *= c;
}

inline bool all_finite(const Vector& a) {
  for (double v : a)
    if (!std::isfinite(v)) return false;
  return true;
}

inline Vector zeros(std::size_t n) { return Vector(n, 0.0); }

}  // namespace saddle
