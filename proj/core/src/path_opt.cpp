#include "nao/path_opt.hpp"

#include <algorithm>
#include <cmath>

#include "nao/detail/first_order.hpp"
#include "nao/errors.hpp"

namespace nao {

namespace {

// Objective and gradient over the flat interior-point parameter vector.
// Point 0 and point n live outside the parameters; interior point i
// (1 <= i <= n-1) occupies the block [(i-1)*d, i*d).
struct PathProblem {
  const PriorSpec& spec;
  const Vector& z1;
  const Vector& z2;
  int n;
  double delta;
  double alpha;
  mutable Vector diff_scratch;
  mutable Vector mid_scratch;

  Eigen::Map<const Vector> point(const Eigen::VectorXd& x, int i) const {
    const auto d = spec.d;
    if (i == 0) return {z1.data(), d};
    if (i == n) return {z2.data(), d};
    return {x.data() + (i - 1) * d, d};
  }

  detail::LossParts eval(const Eigen::VectorXd& x) const {
    detail::LossParts parts;
    double violation_sum = 0.0;
    for (int i = 1; i <= n; ++i) {
      const auto a = point(x, i - 1);
      const auto b = point(x, i);
      const double length = (b - a).norm();
      violation_sum += std::max(0.0, length - delta);
      if (length == 0.0) continue;
      const double mid_radius = (0.5 * (a + b)).norm();
      parts.objective += clamped_nll_at_radius(spec, mid_radius) * length;
    }
    parts.penalty = alpha * violation_sum;
    return parts;
  }

  // Removes from each interior point's direction the component along the
  // local chord x_{i+1} - x_{i-1}. In straight configurations the remaining
  // move stretches no segment to first order, which is what gets a descent
  // step accepted when every segment sits exactly at the cap.
  void tangent_project(const Eigen::VectorXd& x, Eigen::VectorXd& dir) const {
    const auto d = spec.d;
    for (int i = 1; i <= n - 1; ++i) {
      const auto prev = point(x, i - 1);
      const auto next = point(x, i + 1);
      Vector chord = next - prev;
      const double len = chord.norm();
      if (len == 0.0) continue;
      chord /= len;
      auto block = dir.segment((i - 1) * d, d);
      block -= chord * chord.dot(block);
    }
  }

  void gradient(const Eigen::VectorXd& x, Eigen::VectorXd& out) const {
    const auto d = spec.d;
    out.setZero();
    diff_scratch.resize(d);
    mid_scratch.resize(d);
    Vector& diff = diff_scratch;
    Vector& mid = mid_scratch;
    auto block = [&](int i) { return out.segment((i - 1) * d, d); };
    for (int i = 1; i <= n; ++i) {
      const auto a = point(x, i - 1);
      const auto b = point(x, i);
      diff = b - a;
      const double length = diff.norm();
      mid = 0.5 * (a + b);
      const double mid_radius = mid.norm();

      if (mid_radius > kNormClampEpsilon && length > 0.0) {
        const double scale =
            0.5 * clamped_nll_derivative_at_radius(spec, mid_radius) * length /
            mid_radius;
        if (i - 1 >= 1) block(i - 1) += scale * mid;
        if (i <= n - 1) block(i) += scale * mid;
      }
      if (length > 0.0) {
        double coeff = clamped_nll_at_radius(spec, mid_radius);
        if (length > delta) coeff += alpha;
        coeff /= length;
        if (i <= n - 1) block(i) += coeff * diff;
        if (i - 1 >= 1) block(i - 1) -= coeff * diff;
      }
    }
  }
};

detail::FirstOrderOptions to_first_order(const PathConfig& cfg) {
  detail::FirstOrderOptions opt;
  opt.step_size = cfg.step_size;
  opt.max_iters = cfg.max_iters;
  opt.grad_tol = cfg.grad_tol;
  opt.beta1 = cfg.adam_beta1;
  opt.beta2 = cfg.adam_beta2;
  opt.eps = cfg.adam_eps;
  return opt;
}

void validate_endpoint(const PriorSpec& spec, const Vector& z,
                       const char* name) {
  if (z.size() != spec.d)
    throw_invalid(std::string(name) + ": dimension does not match prior");
  if (!z.allFinite())
    throw_invalid(std::string(name) + ": components must be finite");
  if (z.norm() == 0.0)
    throw_degenerate(std::string(name) + ": endpoint at the origin");
}

PathOptResult run_descent(const PriorSpec& spec, const PiecewisePath& init,
                          double delta, const PathConfig& cfg) {
  const int n = static_cast<int>(init.segments());
  const auto d = spec.d;
  const Vector z1 = init.front();
  const Vector z2 = init.back();

  Eigen::VectorXd x(static_cast<Eigen::Index>(d) * std::max(n - 1, 0));
  for (int i = 1; i <= n - 1; ++i)
    x.segment((i - 1) * d, d) = init.points.col(i);

  PathProblem problem{spec, z1, z2, n, delta, cfg.alpha, {}, {}};
  if (!std::isfinite(problem.eval(x).total()))
    throw_degenerate("optimize_path: non-finite objective at initialization");

  auto result = detail::adam_minimize(
      x, [&](const Eigen::VectorXd& p) { return problem.eval(p); },
      [&](const Eigen::VectorXd& p, Eigen::VectorXd& g) {
        problem.gradient(p, g);
      },
      to_first_order(cfg),
      [&](const Eigen::VectorXd& p, Eigen::VectorXd& dir) {
        problem.tangent_project(p, dir);
      });

  PathOptResult out;
  out.path.points.resize(d, n + 1);
  out.path.points.col(0) = z1;
  for (int i = 1; i <= n - 1; ++i)
    out.path.points.col(i) = x.segment((i - 1) * d, d);
  out.path.points.col(n) = z2;

  out.report.objective_trace = std::move(result.objective_trace);
  out.report.penalty_trace = std::move(result.penalty_trace);
  out.report.final_objective = out.report.objective_trace.back();
  out.report.iterations_used = result.iterations_used;
  out.report.converged = result.converged;
  out.report.resolved_delta = delta;
  out.report.max_segment_violation = max_segment_violation(out.path, delta);
  return out;
}

}  // namespace

PathOptResult optimize_path(const PriorSpec& spec, const Vector& z1,
                            const Vector& z2, const PathConfig& cfg) {
  validate_endpoint(spec, z1, "optimize_path: z1");
  validate_endpoint(spec, z2, "optimize_path: z2");
  if (cfg.n < 1) throw_invalid("optimize_path: n must be >= 1");

  if (z1.size() == z2.size() && (z1.array() == z2.array()).all()) {
    PathOptResult out;
    out.path = linear_init(z1, z2, cfg.n);
    out.report.objective_trace = {0.0};
    out.report.penalty_trace = {0.0};
    out.report.final_objective = 0.0;
    out.report.converged = true;
    out.report.resolved_delta = cfg.delta.value_or(0.0);
    return out;
  }

  const double delta = resolve_delta(cfg, z1, z2);
  return run_descent(spec, linear_init(z1, z2, cfg.n), delta, cfg);
}

PathOptResult optimize_path_from(const PriorSpec& spec,
                                 const PiecewisePath& init,
                                 const PathConfig& cfg) {
  if (init.dim() != spec.d)
    throw_invalid("optimize_path_from: path dimension does not match prior");
  if (init.segments() < 1)
    throw_invalid("optimize_path_from: need at least one segment");
  if (!init.points.allFinite())
    throw_invalid("optimize_path_from: path components must be finite");

  double delta;
  if (cfg.delta) {
    delta = *cfg.delta;
    if (!(delta > 0.0)) throw_invalid("optimize_path_from: delta must be > 0");
  } else {
    const int n = static_cast<int>(init.segments());
    double longest = 0.0;
    for (int i = 1; i <= n; ++i)
      longest = std::max(
          longest, (init.points.col(i) - init.points.col(i - 1)).norm());
    delta = std::max((init.back() - init.front()).norm() / n, longest);
    if (delta == 0.0)
      throw_degenerate("optimize_path_from: initial path has zero length");
  }
  return run_descent(spec, init, delta, cfg);
}

}  // namespace nao
