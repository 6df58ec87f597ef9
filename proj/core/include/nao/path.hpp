#pragma once

#include <Eigen/Core>
#include <optional>
#include <vector>

#include "nao/chi_prior.hpp"

namespace nao {

// Piecewise-linear path x_0..x_n stored column-wise (d rows, n+1 columns).
// Endpoints are pinned: optimizers only ever move the interior columns.
struct PiecewisePath {
  Eigen::MatrixXd points;

  std::int64_t dim() const { return points.rows(); }
  std::int64_t segments() const { return points.cols() - 1; }
  Vector point(std::int64_t i) const { return points.col(i); }
  Vector front() const { return points.col(0); }
  Vector back() const { return points.col(points.cols() - 1); }
};

// The alpha default balances two regimes: the auto segment cap sums to
// exactly the endpoint distance, so every curved path must overrun it, and a
// heavy penalty pins paths to the straight chord (at d = 2 that lands up to
// tens of percent above the grid-oracle optimum and breaks the triangle
// inequality of the induced distance estimates). 0.1 keeps estimates within
// a couple percent of the oracle while still holding segment spread to
// about one delta. The step size works with the backtracking guard in the
// optimizer, which rescales any step that would increase the loss.
struct PathConfig {
  int n = 10;                    // interior discretization (n segments)
  std::optional<double> delta;   // segment cap; nullopt = |z1-z2| / n
  double alpha = 0.1;            // penalty weight
  double step_size = 0.1;
  int max_iters = 2000;
  double grad_tol = 1e-6;        // on the gradient infinity-norm
  double adam_beta1 = 0.9;
  double adam_beta2 = 0.999;
  double adam_eps = 1e-8;
};

struct OptimReport {
  std::vector<double> objective_trace;  // entry 0 is the initial objective
  std::vector<double> penalty_trace;
  double final_objective = 0.0;
  double max_segment_violation = 0.0;   // max_i |x_i - x_{i-1}| - delta
  int iterations_used = 0;
  bool converged = false;
  double resolved_delta = 0.0;
};

// Norm floor used inside objective/gradient evaluation so that W and its
// gradient stay finite if an iterate wanders through the origin. The pure
// prior functions in chi_prior.hpp do not clamp.
inline constexpr double kNormClampEpsilon = 1e-8;

// W and dW/dr at a radius clamped from below by kNormClampEpsilon.
double clamped_nll_at_radius(const PriorSpec& spec, double r);
double clamped_nll_derivative_at_radius(const PriorSpec& spec, double r);

// Equally spaced straight-line path from z1 to z2 with n segments.
PiecewisePath linear_init(const Vector& z1, const Vector& z2, int n);

// Riemann-sum objective: sum_i W((x_i + x_{i-1}) / 2) |x_i - x_{i-1}|.
// Penalty excluded. Midpoint norms are clamped at kNormClampEpsilon.
double path_objective(const PriorSpec& spec, const PiecewisePath& path);

// alpha * sum_i max(0, |x_i - x_{i-1}| - delta).
double penalty(const PiecewisePath& path, double delta, double alpha);

// Gradient of objective + penalty with respect to every point; the endpoint
// columns are reported as zero. Subgradient 0 is used at the ReLU kink and
// for zero-length segments.
Eigen::MatrixXd path_gradient(const PriorSpec& spec, const PiecewisePath& path,
                              double delta, double alpha);

// m points at uniform arc-length fractions k/(m+1), k = 1..m; endpoints
// excluded. A zero-length path yields m copies of x_0.
std::vector<Vector> sample_along(const PiecewisePath& path, int m);

// The configured delta, or |z1 - z2| / n when unset.
double resolve_delta(const PathConfig& cfg, const Vector& z1, const Vector& z2);

double max_segment_violation(const PiecewisePath& path, double delta);

}  // namespace nao
