#include "saddle/projections.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace saddle {

namespace {

void validate(const ProjectorDescriptor& desc) {
  if (const auto* box = std::get_if<Box>(&desc)) {
    if (box->lower.size() != box->upper.size())
      throw std::invalid_argument("Projector: box bound sizes differ");
    for (std::size_t i = 0; i < box->lower.size(); ++i)
      if (box->lower[i] > box->upper[i])
        throw std::invalid_argument("Projector: empty box (lower > upper)");
  } else if (const auto* ball = std::get_if<Ball>(&desc)) {
    if (ball->radius < 0.0)
      throw std::invalid_argument("Projector: negative ball radius");
  } else if (const auto* pin = std::get_if<Pinned>(&desc)) {
    if (!pin->values.empty() && pin->values.size() != pin->indices.size())
      throw std::invalid_argument("Projector: pinned value count mismatch");
  }
}

}  // namespace

Projector::Projector(ProjectorDescriptor desc) : desc_(std::move(desc)) {
  validate(desc_);
}

Projector Projector::box(Vector lower, Vector upper) {
  return Projector(Box{std::move(lower), std::move(upper)});
}

Projector Projector::ball(Vector center, double radius) {
  return Projector(Ball{std::move(center), radius});
}

Projector Projector::mask_zero(std::vector<std::size_t> indices) {
  return Projector(Pinned{std::move(indices), {}});
}

Projector Projector::boundary_trace_zero(const std::vector<bool>& boundary) {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < boundary.size(); ++i)
    if (boundary[i]) idx.push_back(i);
  return Projector(Pinned{std::move(idx), {}});
}

Vector Projector::project(const Vector& x) const {
  if (std::holds_alternative<WholeSpace>(desc_)) return x;
  if (const auto* box = std::get_if<Box>(&desc_)) {
    Vector y = x;
    for (std::size_t i = 0; i < y.size(); ++i)
      y[i] = std::min(std::max(y[i], box->lower[i]), box->upper[i]);
    return y;
  }
  if (const auto* ball = std::get_if<Ball>(&desc_)) {
    Vector d = x;
    for (std::size_t i = 0; i < d.size(); ++i) d[i] -= ball->center[i];
    double r = norm(d);
    if (r <= ball->radius) return x;
    Vector y = ball->center;
    double f = ball->radius / r;
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += f * d[i];
    return y;
  }
  const auto& pin = std::get<Pinned>(desc_);
  Vector y = x;
  for (std::size_t k = 0; k < pin.indices.size(); ++k)
    y[pin.indices[k]] = pin.values.empty() ? 0.0 : pin.values[k];
  return y;
}

bool Projector::contains_zero() const {
  if (std::holds_alternative<WholeSpace>(desc_)) return true;
  if (const auto* box = std::get_if<Box>(&desc_)) {
    for (std::size_t i = 0; i < box->lower.size(); ++i)
      if (box->lower[i] > 0.0 || box->upper[i] < 0.0) return false;
    return true;
  }
  if (const auto* ball = std::get_if<Ball>(&desc_))
    return norm(ball->center) <= ball->radius;
  const auto& pin = std::get<Pinned>(desc_);
  for (double v : pin.values)
    if (v != 0.0) return false;
  return true;
}

bool check_monotone(const Projector& proj, const Vector& x, const Vector& y,
                    double tol) {
  Vector px = proj.project(x);
  Vector py = proj.project(y);
  double lhs = 0.0, rhs = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double d = px[i] - py[i];
    lhs += d * (x[i] - y[i]);
    rhs += d * d;
  }
  return lhs >= rhs - tol;
}

bool check_pythagorean(const Projector& proj, const Vector& x, double tol) {
  if (!proj.contains_zero())
    throw std::domain_error("check_pythagorean: descriptor does not contain 0");
  Vector px = proj.project(x);
  double a = 0.0, b = 0.0, c = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double r = x[i] - px[i];
    a += r * r;
    b += px[i] * px[i];
    c += x[i] * x[i];
  }
  return a + b <= c + tol;
}

Projector translate_projector(const Projector& proj, const Vector& v) {
  const auto& desc = proj.descriptor();
  if (std::holds_alternative<WholeSpace>(desc)) return proj;
  if (const auto* box = std::get_if<Box>(&desc)) {
    Box t = *box;
    for (std::size_t i = 0; i < t.lower.size(); ++i) {
      t.lower[i] -= v[i];
      t.upper[i] -= v[i];
    }
    return Projector(t);
  }
  if (const auto* ball = std::get_if<Ball>(&desc)) {
    Ball t = *ball;
    for (std::size_t i = 0; i < t.center.size(); ++i) t.center[i] -= v[i];
    return Projector(t);
  }
  Pinned t = std::get<Pinned>(desc);
  if (t.values.empty()) t.values.assign(t.indices.size(), 0.0);
  for (std::size_t k = 0; k < t.indices.size(); ++k) t.values[k] -= v[t.indices[k]];
  return Projector(t);
}

}  // namespace saddle
