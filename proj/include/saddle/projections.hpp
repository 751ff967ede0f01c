#pragma once

#include <cstddef>
#include <variant>
#include <vector>

#include "saddle/vec.hpp"

namespace saddle {

// Closed-form orthogonal projectors onto the closed convex sets the solvers
// need: boxes, balls, coordinate subspaces (Dirichlet traces / masks) and the
// whole space. Each descriptor projects exactly (clamp arithmetic), is
// idempotent, and satisfies the monotonicity / Pythagorean inequalities that
// the test surface checks.

struct WholeSpace {};

struct Box {
  Vector lower, upper;  // per-component bounds, lower <= upper
};

struct Ball {
  Vector center;
  double radius = 1.0;
};

// Coordinates in `indices` are pinned to the matching `values` entry
// (values empty = all zero). mask_zero and boundary-trace projectors are the
// values == 0 case; translation produces nonzero pins.
struct Pinned {
  std::vector<std::size_t> indices;
  Vector values;  // empty or same length as indices
};

using ProjectorDescriptor = std::variant<WholeSpace, Box, Ball, Pinned>;

class Projector {
 public:
  Projector() : desc_(WholeSpace{}) {}
  explicit Projector(ProjectorDescriptor desc);

  static Projector whole_space() { return Projector(WholeSpace{}); }
  static Projector box(Vector lower, Vector upper);
  static Projector ball(Vector center, double radius);
  static Projector mask_zero(std::vector<std::size_t> indices);
  // Zeroes all components flagged true in `boundary` (Dirichlet trace).
  static Projector boundary_trace_zero(const std::vector<bool>& boundary);

  Vector project(const Vector& x) const;
  const ProjectorDescriptor& descriptor() const { return desc_; }
  bool contains_zero() const;
  // Feasible point sampler for property checks: projects a raw sample.
  Vector sample_member(const Vector& raw) const { return project(raw); }

 private:
  ProjectorDescriptor desc_;
};

// <Pi(x) - Pi(y), x - y> >= |Pi(x) - Pi(y)|^2 - tol
bool check_monotone(const Projector& proj, const Vector& x, const Vector& y,
                    double tol = 1e-12);

// |x - Pi(x)|^2 + |Pi(x)|^2 <= |x|^2 + tol. Requires 0 in D.
bool check_pythagorean(const Projector& proj, const Vector& x,
                       double tol = 1e-12);

// Projector onto D - v. Box/ball/pinned descriptors translate exactly.
Projector translate_projector(const Projector& proj, const Vector& v);

}  // namespace saddle
