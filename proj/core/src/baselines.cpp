#include "nao/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "nao/errors.hpp"

namespace nao {

namespace {

constexpr double kParallelSinThreshold = 1e-7;
constexpr double kAntipodalAngleMargin = 1e-4;

void check_pair(const Vector& x, const Vector& y, const char* who) {
  if (x.size() != y.size())
    throw_invalid(std::string(who) + ": dimensions differ");
}

}  // namespace

Vector lerp(const Vector& x, const Vector& y, double t) {
  check_pair(x, y, "lerp");
  if (!(t >= 0.0 && t <= 1.0)) throw_invalid("lerp: t must be in [0, 1]");
  return (1.0 - t) * x + t * y;
}

Vector slerp(const Vector& x, const Vector& y, double t) {
  check_pair(x, y, "slerp");
  if (!(t >= 0.0 && t <= 1.0)) throw_invalid("slerp: t must be in [0, 1]");
  const double nx = x.norm();
  const double ny = y.norm();
  if (nx == 0.0 || ny == 0.0)
    throw_degenerate("slerp: zero vector has no direction");
  const double cos_angle = std::clamp(x.dot(y) / (nx * ny), -1.0, 1.0);
  const double angle = std::acos(cos_angle);
  if (angle > std::numbers::pi - kAntipodalAngleMargin)
    throw Error(ErrorKind::ambiguous_arc,
                "slerp: near-antipodal inputs have no unique arc");
  const double sin_angle = std::sin(angle);
  if (sin_angle <= kParallelSinThreshold) return lerp(x, y, t);
  return (std::sin((1.0 - t) * angle) / sin_angle) * x +
         (std::sin(t * angle) / sin_angle) * y;
}

Vector euclidean_centroid(const std::vector<Vector>& seeds) {
  if (seeds.empty()) throw_invalid("euclidean_centroid: empty seed set");
  Vector mean = Vector::Zero(seeds.front().size());
  for (const auto& z : seeds) {
    check_pair(mean, z, "euclidean_centroid");
    mean += z;
  }
  return mean / static_cast<double>(seeds.size());
}

Vector normalized_euclidean_centroid(const PriorSpec& spec,
                                     const std::vector<Vector>& seeds) {
  const Vector mean = euclidean_centroid(seeds);
  if (mean.norm() < 1e-9 * spec.mode_radius)
    throw_degenerate(
        "normalized_euclidean_centroid: mean direction is degenerate");
  return rescale_to_norm(mean, spec.mode_radius);
}

SphereProjectionResult sphere_projection_centroid(
    const PriorSpec& spec, const std::vector<Vector>& seeds, double tol,
    int max_iter) {
  if (seeds.empty())
    throw_invalid("sphere_projection_centroid: empty seed set");
  std::vector<Vector> units;
  units.reserve(seeds.size());
  for (const auto& z : seeds) {
    const double norm = z.norm();
    if (norm == 0.0)
      throw_degenerate("sphere_projection_centroid: seed at the origin");
    units.push_back(z / norm);
  }

  const Vector mean = euclidean_centroid(seeds);
  if (mean.norm() < 1e-9 * spec.mode_radius)
    throw_degenerate(
        "sphere_projection_centroid: mean direction is degenerate");
  Vector u = mean / mean.norm();

  SphereProjectionResult result;
  Vector acc(u.size());
  for (int iter = 1; iter <= max_iter; ++iter) {
    acc.setZero();
    for (const auto& ui : units) {
      const double dot = u.dot(ui);
      const double denom_sq =
          1.0 - std::clamp(dot * dot, 0.0, 1.0 - 1e-12);
      acc += ui / std::sqrt(denom_sq);
    }
    const double acc_norm = acc.norm();
    if (acc_norm == 0.0)
      throw_degenerate("sphere_projection_centroid: iterate collapsed");
    acc /= acc_norm;
    result.iterations = iter;
    const double step = (acc - u).norm();
    u = acc;
    if (step <= tol) {
      result.converged = true;
      break;
    }
  }
  result.centroid = spec.mode_radius * u;
  return result;
}

}  // namespace nao
