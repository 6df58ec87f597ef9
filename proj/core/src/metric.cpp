#include "nao/metric.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "nao/errors.hpp"

namespace nao {

double distance(const PriorSpec& spec, const Vector& x, const Vector& y,
                const PathConfig& cfg) {
  return optimize_path(spec, x, y, cfg).report.final_objective;
}

namespace {

struct TrialStats {
  double identity = 0.0;
  double symmetry_rel = 0.0;
  double triangle_rel_slack = 0.0;  // (f(x,z) - f(x,y) - f(y,z)) / f(x,z)
  double concat_excess = 0.0;       // re-optimized - concatenated
};

PiecewisePath concatenate(const PiecewisePath& first,
                          const PiecewisePath& second) {
  PiecewisePath joined;
  const auto n1 = first.segments();
  const auto n2 = second.segments();
  joined.points.resize(first.dim(), n1 + n2 + 1);
  joined.points.leftCols(n1 + 1) = first.points;
  joined.points.rightCols(n2) = second.points.rightCols(n2);
  return joined;
}

TrialStats run_trial(const PriorSpec& spec, const PathConfig& cfg,
                     std::uint64_t trial_seed) {
  RngState rng(trial_seed);
  const Vector x = sample_seed(spec, rng);
  const Vector y = sample_seed(spec, rng);
  const Vector z = sample_seed(spec, rng);

  TrialStats stats;
  stats.identity = std::abs(distance(spec, x, x, cfg));

  const auto path_xy = optimize_path(spec, x, y, cfg);
  const auto path_yx = optimize_path(spec, y, x, cfg);
  const auto path_yz = optimize_path(spec, y, z, cfg);
  const auto path_xz = optimize_path(spec, x, z, cfg);

  const double d_xy = path_xy.report.final_objective;
  const double d_yx = path_yx.report.final_objective;
  const double d_yz = path_yz.report.final_objective;
  const double d_xz = path_xz.report.final_objective;

  const double denom = std::max(d_xy, d_yx);
  stats.symmetry_rel = denom > 0.0 ? std::abs(d_xy - d_yx) / denom : 0.0;
  stats.triangle_rel_slack =
      d_xz > 0.0 ? (d_xz - d_xy - d_yz) / d_xz : 0.0;

  const PiecewisePath via = concatenate(path_xy.path, path_yz.path);
  const double concatenated = path_objective(spec, via);
  PathConfig reopt_cfg = cfg;
  reopt_cfg.delta.reset();  // resolve from the concatenated path itself
  const auto reopt = optimize_path_from(spec, via, reopt_cfg);
  stats.concat_excess = reopt.report.final_objective - concatenated;
  return stats;
}

}  // namespace

MetricAuditReport audit_metric(const PriorSpec& spec, int trials,
                               const PathConfig& cfg, RngState& rng,
                               const MetricAuditConfig& audit_cfg) {
  if (trials < 1) throw_invalid("audit_metric: trials must be >= 1");

  // Derive every trial's stream up front; workers then own their trials.
  std::vector<std::uint64_t> trial_seeds(trials);
  for (auto& seed : trial_seeds) seed = rng.next_u64();

  std::vector<TrialStats> stats(trials);
  int threads = audit_cfg.threads;
  if (threads <= 0)
    threads = static_cast<int>(std::thread::hardware_concurrency());
  threads = std::clamp(threads, 1, trials);

  if (threads == 1) {
    for (int t = 0; t < trials; ++t)
      stats[t] = run_trial(spec, cfg, trial_seeds[t]);
  } else {
    std::atomic<int> next{0};
    auto worker = [&] {
      for (int t = next.fetch_add(1); t < trials; t = next.fetch_add(1))
        stats[t] = run_trial(spec, cfg, trial_seeds[t]);
    };
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  MetricAuditReport report;
  report.trials = trials;
  report.symmetry_rel_tol = audit_cfg.symmetry_rel_tol;
  report.triangle_rel_tol = audit_cfg.triangle_rel_tol;
  report.rng_draws = 3;
  for (const auto& s : stats) {  // aggregation in trial order
    report.identity_max_abs = std::max(report.identity_max_abs, s.identity);
    report.symmetry_max_rel =
        std::max(report.symmetry_max_rel, s.symmetry_rel);
    if (s.symmetry_rel > audit_cfg.symmetry_rel_tol)
      ++report.symmetry_violations;
    report.triangle_worst_rel_slack =
        std::max(report.triangle_worst_rel_slack, s.triangle_rel_slack);
    if (s.triangle_rel_slack > audit_cfg.triangle_rel_tol)
      ++report.triangle_violations;
    report.concat_worst_excess =
        std::max(report.concat_worst_excess, s.concat_excess);
    if (s.concat_excess > 1e-9) ++report.concat_violations;
  }
  return report;
}

}  // namespace nao
