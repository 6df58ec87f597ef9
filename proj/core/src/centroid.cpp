#include "nao/centroid.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "nao/baselines.hpp"
#include "nao/detail/first_order.hpp"
#include "nao/errors.hpp"
#include "nao/path_opt.hpp"

namespace nao {

namespace {

// Parameter layout: [c | interior of path 0 | interior of path 1 | ...],
// each interior block holding (n-1) points of dimension d. Path l's point i
// resolves to c (i = 0), the seed (i = n), or the flat block.
struct CentroidOptProblem {
  const PriorSpec& spec;
  const std::vector<Vector>& seeds;
  int n;
  std::vector<double> deltas;
  double alpha;
  bool include_centroid_nll;
  mutable Vector diff_scratch;
  mutable Vector mid_scratch;

  std::int64_t d() const { return spec.d; }
  std::int64_t interior_per_path() const { return n - 1; }

  Eigen::Map<const Vector> centroid(const Eigen::VectorXd& x) const {
    return {x.data(), d()};
  }

  Eigen::Map<const Vector> point(const Eigen::VectorXd& x, std::size_t l,
                                 int i) const {
    if (i == 0) return {x.data(), d()};
    if (i == n) return {seeds[l].data(), d()};
    const auto offset =
        d() + (static_cast<std::int64_t>(l) * interior_per_path() + (i - 1)) * d();
    return {x.data() + offset, d()};
  }

  detail::LossParts eval(const Eigen::VectorXd& x) const {
    detail::LossParts parts;
    if (include_centroid_nll)
      parts.objective += clamped_nll_at_radius(spec, centroid(x).norm());
    double penalty_sum = 0.0;
    for (std::size_t l = 0; l < seeds.size(); ++l) {
      for (int i = 1; i <= n; ++i) {
        const auto a = point(x, l, i - 1);
        const auto b = point(x, l, i);
        const double length = (b - a).norm();
        penalty_sum += alpha * std::max(0.0, length - deltas[l]);
        if (length == 0.0) continue;
        const double mid_radius = (0.5 * (a + b)).norm();
        parts.objective += clamped_nll_at_radius(spec, mid_radius) * length;
      }
    }
    parts.penalty = penalty_sum;
    return parts;
  }

  // Per-path analog of the interpolation tangent projection: interior
  // directions lose their local-chord components, the centroid block is
  // zeroed (its moves always stretch first segments to first order).
  void tangent_project(const Eigen::VectorXd& x, Eigen::VectorXd& dir) const {
    dir.segment(0, d()).setZero();
    for (std::size_t l = 0; l < seeds.size(); ++l) {
      for (int i = 1; i <= n - 1; ++i) {
        const auto prev = point(x, l, i - 1);
        const auto next = point(x, l, i + 1);
        Vector chord = next - prev;
        const double len = chord.norm();
        if (len == 0.0) continue;
        chord /= len;
        const auto offset =
            d() +
            (static_cast<std::int64_t>(l) * interior_per_path() + (i - 1)) *
                d();
        auto block = dir.segment(offset, d());
        block -= chord * chord.dot(block);
      }
    }
  }

  void gradient(const Eigen::VectorXd& x, Eigen::VectorXd& out) const {
    out.setZero();
    diff_scratch.resize(d());
    mid_scratch.resize(d());
    Vector& diff = diff_scratch;
    Vector& mid = mid_scratch;

    auto block = [&](std::size_t l, int i) {
      const auto offset =
          d() +
          (static_cast<std::int64_t>(l) * interior_per_path() + (i - 1)) * d();
      return out.segment(offset, d());
    };
    auto centroid_block = [&]() { return out.segment(0, d()); };

    if (include_centroid_nll) {
      const auto c = centroid(x);
      const double radius = c.norm();
      if (radius > kNormClampEpsilon) {
        centroid_block() +=
            (clamped_nll_derivative_at_radius(spec, radius) / radius) * c;
      }
    }

    for (std::size_t l = 0; l < seeds.size(); ++l) {
      for (int i = 1; i <= n; ++i) {
        const auto a = point(x, l, i - 1);
        const auto b = point(x, l, i);
        diff = b - a;
        const double length = diff.norm();
        mid = 0.5 * (a + b);
        const double mid_radius = mid.norm();

        if (mid_radius > kNormClampEpsilon && length > 0.0) {
          const double scale =
              0.5 * clamped_nll_derivative_at_radius(spec, mid_radius) *
              length / mid_radius;
          if (i - 1 == 0)
            centroid_block() += scale * mid;
          else
            block(l, i - 1) += scale * mid;
          if (i <= n - 1) block(l, i) += scale * mid;
        }
        if (length > 0.0) {
          double coeff = clamped_nll_at_radius(spec, mid_radius);
          if (length > deltas[l]) coeff += alpha;
          coeff /= length;
          if (i <= n - 1) block(l, i) += coeff * diff;
          if (i - 1 == 0)
            centroid_block() -= coeff * diff;
          else
            block(l, i - 1) -= coeff * diff;
        }
      }
    }
  }
};

}  // namespace

double centroid_objective(const PriorSpec& spec, const Vector& c,
                          const std::vector<PiecewisePath>& paths) {
  if (c.size() != spec.d)
    throw_invalid("centroid_objective: centroid dimension mismatch");
  double total = clamped_nll_at_radius(spec, c.norm());
  for (const auto& path : paths) {
    if (path.dim() != spec.d)
      throw_invalid("centroid_objective: path dimension mismatch");
    if ((path.points.col(0).array() != c.array()).any())
      throw_invalid("centroid_objective: path is not anchored at the centroid");
    total += path_objective(spec, path);
  }
  return total;
}

namespace {

// Canonical (lexicographic) order of the seed list. Running the whole
// optimization in this order makes the result bit-identical under any
// permutation of the input: every reduction that mixes paths sees the same
// operand order.
std::vector<std::size_t> canonical_order(const std::vector<Vector>& seeds) {
  std::vector<std::size_t> order(seeds.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::lexicographical_compare(
        seeds[a].data(), seeds[a].data() + seeds[a].size(), seeds[b].data(),
        seeds[b].data() + seeds[b].size());
  });
  return order;
}

}  // namespace

CentroidResult optimize_centroid(const PriorSpec& spec,
                                 const CentroidProblem& problem) {
  const auto& input_seeds = problem.seeds;
  const auto& cfg = problem.cfg;
  const std::size_t k = input_seeds.size();
  if (k == 0) throw_invalid("optimize_centroid: need at least one seed");
  if (cfg.per_path_n < 1) throw_invalid("optimize_centroid: n must be >= 1");
  for (const auto& z : input_seeds) {
    if (z.size() != spec.d)
      throw_invalid("optimize_centroid: seed dimension mismatch");
    if (!z.allFinite())
      throw_invalid("optimize_centroid: seed components must be finite");
  }

  const auto order = canonical_order(input_seeds);
  std::vector<Vector> seeds(k);
  for (std::size_t l = 0; l < k; ++l) seeds[l] = input_seeds[order[l]];
  std::vector<double> explicit_deltas = cfg.deltas;
  if (explicit_deltas.size() == k)
    for (std::size_t l = 0; l < k; ++l)
      explicit_deltas[l] = cfg.deltas[order[l]];

  const auto d = spec.d;
  const int n = cfg.per_path_n;

  Vector c_init = Vector::Zero(d);
  for (const auto& z : seeds) c_init += z;
  c_init /= static_cast<double>(k);
  if (c_init.norm() < 1e-3 * spec.mode_radius) {
    // W blows up at the origin; start on the mode sphere instead, along the
    // first seed with a usable direction.
    const Vector* anchor = nullptr;
    for (const auto& z : seeds)
      if (z.norm() > 0.0) {
        anchor = &z;
        break;
      }
    if (anchor == nullptr)
      throw_degenerate("optimize_centroid: every seed is at the origin");
    c_init = rescale_to_norm(*anchor, spec.mode_radius);
  }

  // Per-path caps come from the initial centroid and stay fixed for the
  // whole run; a floor keeps coincident seeds from producing a zero cap.
  std::vector<double> deltas(k);
  if (!explicit_deltas.empty()) {
    if (explicit_deltas.size() == 1) {
      std::fill(deltas.begin(), deltas.end(), explicit_deltas[0]);
    } else if (explicit_deltas.size() == k) {
      deltas = explicit_deltas;
    } else {
      throw_invalid("optimize_centroid: deltas must have 1 or k entries");
    }
    for (double delta : deltas)
      if (!(delta > 0.0)) throw_invalid("optimize_centroid: delta must be > 0");
  } else {
    const double floor = 1e-3 * spec.mode_radius / n;
    for (std::size_t l = 0; l < k; ++l)
      deltas[l] = std::max((seeds[l] - c_init).norm() / n, floor);
  }

  const std::int64_t interior = n - 1;
  Eigen::VectorXd x(d * (1 + static_cast<std::int64_t>(k) * interior));
  x.segment(0, d) = c_init;
  for (std::size_t l = 0; l < k; ++l) {
    for (int i = 1; i <= n - 1; ++i) {
      const double t = static_cast<double>(i) / n;
      x.segment(d + (static_cast<std::int64_t>(l) * interior + (i - 1)) * d,
                d) = c_init + t * (seeds[l] - c_init);
    }
  }

  CentroidOptProblem opt_problem{spec,      seeds, n, deltas,
                                 cfg.alpha, cfg.include_centroid_nll,
                                 {},        {}};
  if (!std::isfinite(opt_problem.eval(x).total()))
    throw_degenerate("optimize_centroid: non-finite objective at init");

  detail::FirstOrderOptions opt;
  opt.step_size = cfg.step_size;
  opt.max_iters = cfg.max_iters;
  opt.grad_tol = cfg.grad_tol;
  opt.beta1 = cfg.adam_beta1;
  opt.beta2 = cfg.adam_beta2;
  opt.eps = cfg.adam_eps;

  auto result = detail::adam_minimize(
      x, [&](const Eigen::VectorXd& p) { return opt_problem.eval(p); },
      [&](const Eigen::VectorXd& p, Eigen::VectorXd& g) {
        opt_problem.gradient(p, g);
      },
      opt,
      [&](const Eigen::VectorXd& p, Eigen::VectorXd& dir) {
        opt_problem.tangent_project(p, dir);
      });

  // Joint-descent candidate: the phase-one state as it stands.
  Vector best_centroid = x.segment(0, d);
  std::vector<PiecewisePath> best_paths(k);
  for (std::size_t l = 0; l < k; ++l) {
    auto& path = best_paths[l];
    path.points.resize(d, n + 1);
    path.points.col(0) = best_centroid;
    for (int i = 1; i <= n - 1; ++i)
      path.points.col(i) = x.segment(
          d + (static_cast<std::int64_t>(l) * interior + (i - 1)) * d, d);
    path.points.col(n) = seeds[l];
  }
  double best_value = result.objective_trace.back();
  int selection_iterations = 0;

  // Selection phase: score closed-form centers with freshly optimized
  // paths under the same per-path caps, keep the best configuration.
  PathConfig refine_cfg;
  refine_cfg.n = n;
  refine_cfg.alpha = cfg.alpha;
  refine_cfg.step_size = cfg.step_size;
  refine_cfg.max_iters = cfg.refine_path_iters;
  refine_cfg.grad_tol = cfg.grad_tol;
  refine_cfg.adam_beta1 = cfg.adam_beta1;
  refine_cfg.adam_beta2 = cfg.adam_beta2;
  refine_cfg.adam_eps = cfg.adam_eps;

  // Scores a candidate center. Fresh candidates get straight-line starts;
  // the warm variant re-anchors the phase-one paths onto the new center,
  // keeping their accumulated shape (used for small displacements only).
  auto consider = [&](const Vector& center,
                      const std::vector<PiecewisePath>* warm_paths) {
    if (center.norm() == 0.0) return;
    double value = cfg.include_centroid_nll
                       ? clamped_nll_at_radius(spec, center.norm())
                       : 0.0;
    std::vector<PiecewisePath> paths(k);
    bool usable = true;
    for (std::size_t l = 0; l < k && usable; ++l) {
      PathConfig per_path = refine_cfg;
      per_path.delta = deltas[l];
      try {
        PathOptResult run;
        if (warm_paths) {
          PiecewisePath init = (*warm_paths)[l];
          init.points.col(0) = center;
          run = optimize_path_from(spec, init, per_path);
        } else {
          run = optimize_path(spec, center, seeds[l], per_path);
        }
        value += run.report.final_objective;
        selection_iterations += run.report.iterations_used;
        paths[l] = std::move(run.path);
      } catch (const Error&) {
        usable = false;
      }
    }
    if (usable && value < best_value) {
      best_value = value;
      best_centroid = center;
      best_paths = std::move(paths);
    }
  };

  // The joint-descent center projected onto the mode sphere: descent tends
  // to stop a hair inside it, and the radial polish is free to score.
  const Vector joint_center = best_centroid;
  const std::vector<PiecewisePath> joint_paths = best_paths;
  if (joint_center.norm() > 0.0)
    consider(rescale_to_norm(joint_center, spec.mode_radius), &joint_paths);
  consider(c_init, nullptr);  // clamped Euclidean mean
  try {
    consider(normalized_euclidean_centroid(spec, seeds), nullptr);
  } catch (const Error&) {
  }
  try {
    consider(sphere_projection_centroid(spec, seeds).centroid, nullptr);
  } catch (const Error&) {
  }

  CentroidResult out;
  out.centroid = std::move(best_centroid);
  double worst_violation = 0.0;
  for (std::size_t l = 0; l < k; ++l)
    worst_violation = std::max(
        worst_violation, max_segment_violation(best_paths[l], deltas[l]));

  out.report.objective_trace = std::move(result.objective_trace);
  out.report.penalty_trace = std::move(result.penalty_trace);
  if (best_value < out.report.objective_trace.back()) {
    double winner_penalty = 0.0;
    for (std::size_t l = 0; l < k; ++l)
      winner_penalty += penalty(best_paths[l], deltas[l], cfg.alpha);
    out.report.objective_trace.push_back(best_value);
    out.report.penalty_trace.push_back(winner_penalty);
  }
  out.report.final_objective = out.report.objective_trace.back();
  out.report.iterations_used = result.iterations_used + selection_iterations;
  out.report.converged = result.converged;
  out.report.max_segment_violation = worst_violation;
  out.report.resolved_delta =
      *std::min_element(deltas.begin(), deltas.end());

  // Back to the caller's seed order.
  out.paths.resize(k);
  out.resolved_deltas.resize(k);
  for (std::size_t l = 0; l < k; ++l) {
    out.paths[order[l]] = std::move(best_paths[l]);
    out.resolved_deltas[order[l]] = deltas[l];
  }
  return out;
}

}  // namespace nao
