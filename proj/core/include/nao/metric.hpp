#pragma once

#include "nao/path_opt.hpp"
#include "nao/rng.hpp"

namespace nao {

// Distance estimate f(x, y): the final objective of optimize_path. An upper
// bound on the true infimum; exactly 0 when x == y.
double distance(const PriorSpec& spec, const Vector& x, const Vector& y,
                const PathConfig& cfg);

// Empirical evidence for the metric axioms, gathered over sampled triples.
// The axioms hold exactly only for the true infimum, so symmetry and the
// triangle inequality are checked with tolerances; the concatenation check
// (re-optimizing a concatenated x->y->z path never ends above the
// concatenation) is the exact, always-assertable form.
struct MetricAuditReport {
  int trials = 0;
  double identity_max_abs = 0.0;
  double symmetry_max_rel = 0.0;
  int symmetry_violations = 0;   // gaps above symmetry_rel_tol
  int triangle_violations = 0;   // slack above triangle_rel_tol * f(x,z)
  double triangle_worst_rel_slack = 0.0;
  int concat_violations = 0;     // re-optimized > concatenated + 1e-9
  double concat_worst_excess = 0.0;
  double symmetry_rel_tol = 0.01;
  double triangle_rel_tol = 0.02;
  std::uint64_t rng_draws = 0;   // config echo: seeds consumed per trial
};

struct MetricAuditConfig {
  double symmetry_rel_tol = 0.01;
  double triangle_rel_tol = 0.02;
  int threads = 0;  // 0 = hardware concurrency
};

// Trials are independent; each gets its own RNG stream derived from `rng`
// up front, so the report is identical for any thread count.
MetricAuditReport audit_metric(const PriorSpec& spec, int trials,
                               const PathConfig& cfg, RngState& rng,
                               const MetricAuditConfig& audit_cfg = {});

}  // namespace nao
