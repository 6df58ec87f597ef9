#pragma once

#include "nao/path.hpp"

namespace nao {

struct PathOptResult {
  PiecewisePath path;
  OptimReport report;
};

// Likelihood-maximizing interpolation between z1 and z2: first-order descent
// on the Riemann-sum objective plus the soft segment-cap penalty, starting
// from the straight-line path. Endpoints never move. Equal endpoints return
// the trivial zero-objective path. Non-convergence is reported via the
// `converged` flag, never thrown.
PathOptResult optimize_path(const PriorSpec& spec, const Vector& z1,
                            const Vector& z2, const PathConfig& cfg);

// Same descent, starting from an explicit initial path (endpoints are taken
// from its first and last columns). An unset delta resolves to
// max(|z1 - z2| / n, longest initial segment) so the start is feasible and
// the final objective can never exceed the initial one.
PathOptResult optimize_path_from(const PriorSpec& spec,
                                 const PiecewisePath& init,
                                 const PathConfig& cfg);

}  // namespace nao
