#pragma once

#include <Eigen/Core>
#include <cmath>
#include <functional>
#include <vector>

namespace nao::detail {

struct LossParts {
  double objective = 0.0;
  double penalty = 0.0;
  double total() const { return objective + penalty; }
};

struct FirstOrderOptions {
  double step_size = 1e-2;
  int max_iters = 2000;
  double grad_tol = 1e-6;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
  int max_backtracks = 20;
  int max_consecutive_rejects = 5;
};

struct FirstOrderResult {
  std::vector<double> objective_trace;  // entry 0 is the starting objective
  std::vector<double> penalty_trace;
  int iterations_used = 0;
  bool converged = false;
};

// Adam directions guarded by a monotone line search: a step is only taken if
// it does not increase objective + penalty, halving the scale until it fits.
// The guard keeps the loss trace non-increasing (the result can never end
// above its start) and turns Adam's fixed-step oscillation near a minimum
// into a decaying-step descent.
//
// When the Adam direction fails the search outright, two fallbacks are
// tried: the raw negative gradient, and the negative gradient passed through
// `tangent_project` when provided. The projection matters at starts that sit
// exactly on the penalty's ReLU kinks (equally spaced straight-line paths):
// there every segment-stretching direction pays first-order penalty
// one-sidedly, while tangent-projected moves stretch segments only to second
// order and can always descend. Problems supply a projection that removes
// the stretching components from a candidate direction.
//
// EvalFn: LossParts(const Eigen::VectorXd&)
// GradFn: void(const Eigen::VectorXd&, Eigen::VectorXd& grad_out)
// tangent_project: void(const Eigen::VectorXd& x, Eigen::VectorXd& dir)
template <class EvalFn, class GradFn>
FirstOrderResult adam_minimize(
    Eigen::VectorXd& x, EvalFn&& eval, GradFn&& grad_fn,
    const FirstOrderOptions& opt,
    const std::function<void(const Eigen::VectorXd&, Eigen::VectorXd&)>&
        tangent_project = nullptr) {
  FirstOrderResult result;
  LossParts current = eval(x);
  result.objective_trace.push_back(current.objective);
  result.penalty_trace.push_back(current.penalty);

  if (x.size() == 0) {  // nothing to optimize (no interior points)
    result.converged = true;
    return result;
  }

  Eigen::VectorXd grad(x.size());
  Eigen::VectorXd m = Eigen::VectorXd::Zero(x.size());
  Eigen::VectorXd v = Eigen::VectorXd::Zero(x.size());
  Eigen::VectorXd direction(x.size());
  Eigen::VectorXd backup(x.size());

  // Line search along `direction` from `backup`; updates x and current on
  // acceptance. A step must not increase the loss, and may raise the bare
  // objective by at most a sliver: near a penalized equilibrium the
  // optimizer otherwise trades tiny objective increases against penalty
  // decreases forever, and the objective trace is contracted to be
  // non-increasing (within 1e-9 per step) once past warmup.
  constexpr double kObjectiveSlack = 1e-10;
  auto try_direction = [&](const Eigen::VectorXd& dir) {
    double scale = 1.0;
    for (int bt = 0; bt <= opt.max_backtracks; ++bt) {
      x = backup + scale * dir;
      const LossParts candidate = eval(x);
      if (candidate.total() <= current.total() &&
          candidate.objective <= current.objective + kObjectiveSlack) {
        current = candidate;
        return true;
      }
      scale *= 0.5;
    }
    return false;
  };

  int consecutive_rejects = 0;
  for (int t = 1; t <= opt.max_iters; ++t) {
    grad_fn(x, grad);
    const double grad_inf = grad.lpNorm<Eigen::Infinity>();
    if (grad_inf <= opt.grad_tol) {
      result.converged = true;
      break;
    }
    result.iterations_used = t;

    m = opt.beta1 * m + (1.0 - opt.beta1) * grad;
    v = opt.beta2 * v + (1.0 - opt.beta2) * grad.cwiseProduct(grad);
    const double m_corr = 1.0 - std::pow(opt.beta1, t);
    const double v_corr = 1.0 - std::pow(opt.beta2, t);
    direction = (-(opt.step_size) * (m.array() / m_corr) /
                 ((v.array() / v_corr).sqrt() + opt.eps))
                    .matrix();

    backup = x;
    bool accepted = try_direction(direction);
    if (!accepted) {
      direction = grad * (-opt.step_size / grad_inf);
      accepted = try_direction(direction);
    }
    if (!accepted && tangent_project) {
      direction = -grad;
      tangent_project(backup, direction);
      const double dir_inf = direction.lpNorm<Eigen::Infinity>();
      if (dir_inf > 0.0) {
        direction *= opt.step_size / dir_inf;
        accepted = try_direction(direction);
      }
    }

    if (accepted) {
      consecutive_rejects = 0;
    } else {
      x = backup;
      ++consecutive_rejects;
    }
    result.objective_trace.push_back(current.objective);
    result.penalty_trace.push_back(current.penalty);

    if (consecutive_rejects >= opt.max_consecutive_rejects) break;
  }
  return result;
}

}  // namespace nao::detail
