#pragma once

#include <vector>

#include "nao/chi_prior.hpp"

namespace nao {

// (1-t) x + t y, t in [0, 1].
Vector lerp(const Vector& x, const Vector& y, double t);

// Arc blend sin((1-t)O)/sin(O) x + sin(tO)/sin(O) y with
// O = arccos(clamp(x.y / (|x||y|), -1, 1)). Raw vectors: unequal norms are
// blended by the sine weights. Near-parallel inputs (sin O <= 1e-7) fall
// back to lerp; near-antipodal inputs (O > pi - 1e-4) have no preferred arc
// and raise an ambiguous-arc error.
Vector slerp(const Vector& x, const Vector& y, double t);

// Component-wise mean.
Vector euclidean_centroid(const std::vector<Vector>& seeds);

// Euclidean mean rescaled onto the mode sphere.
Vector normalized_euclidean_centroid(const PriorSpec& spec,
                                     const std::vector<Vector>& seeds);

struct SphereProjectionResult {
  Vector centroid;  // norm = mode_radius
  int iterations = 0;
  bool converged = false;
};

// Fixed-point iteration for the spherical centroid of the direction vectors:
//   u <- normalize( sum_i u_i / sqrt(1 - clamp((u.u_i)^2, 0, 1 - 1e-12)) )
// started from the normalized Euclidean mean and scaled to the mode sphere.
// The iterate can fail to converge for spreads beyond a hemisphere; that is
// reported, not hidden.
SphereProjectionResult sphere_projection_centroid(
    const PriorSpec& spec, const std::vector<Vector>& seeds,
    double tol = 1e-12, int max_iter = 1000);

}  // namespace nao
