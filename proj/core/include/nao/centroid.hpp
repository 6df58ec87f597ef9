#pragma once

#include <vector>

#include "nao/path.hpp"

namespace nao {

struct CentroidConfig {
  int per_path_n = 10;
  // Explicit per-path segment caps; empty = auto (|z_l - c_init| / n per
  // path, floored at 1e-3 * mode_radius / n so coincident seeds keep a
  // usable cap). A single entry broadcasts to every path.
  std::vector<double> deltas;
  double alpha = 0.1;
  double step_size = 0.1;
  int max_iters = 2000;        // joint descent phase
  double grad_tol = 1e-6;
  double adam_beta1 = 0.9;
  double adam_beta2 = 0.999;
  double adam_eps = 1e-8;
  // Per-path budget when scoring candidate centers with freshly optimized
  // paths (the selection phase below).
  int refine_path_iters = 500;
  // Leading W(c) term of the joint objective. On by default; off makes the
  // objective a pure sum of path integrals.
  bool include_centroid_nll = true;
};

struct CentroidProblem {
  std::vector<Vector> seeds;  // k >= 1, all of dimension d
  CentroidConfig cfg;
};

struct CentroidResult {
  Vector centroid;
  std::vector<PiecewisePath> paths;  // paths[l] runs centroid -> seeds[l]
  OptimReport report;                // joint objective
  std::vector<double> resolved_deltas;
};

// Joint objective W(c) + sum_l sum_i W(m^l_i) L^l_i; penalties excluded.
// Every path must be anchored at c (bit-identical first column).
double centroid_objective(const PriorSpec& spec, const Vector& c,
                          const std::vector<PiecewisePath>& paths);

// Two-phase minimizer. Phase one runs joint first-order descent over the
// centroid and all interior path points, starting from the Euclidean mean
// (nudged onto the mode sphere along the first seed's direction when the
// mean is nearly zero) with straight-line paths to each seed. Phase two
// scores candidate centers - the joint-descent result plus the closed-form
// centers (clamped Euclidean mean, normalized Euclidean, sphere projection)
// - by the joint objective with freshly optimized paths, and returns the
// best. Joint descent alone tends to leave the center a percent or two off
// the best fixed-center value at high dimension (its center gradient goes
// flat once on the mode sphere while the path variables are still noisy);
// the selection phase removes that gap.
CentroidResult optimize_centroid(const PriorSpec& spec,
                                 const CentroidProblem& problem);

}  // namespace nao
