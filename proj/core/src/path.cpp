#include "nao/path.hpp"

#include <algorithm>
#include <cmath>

#include "nao/errors.hpp"

namespace nao {

double clamped_nll_at_radius(const PriorSpec& spec, double r) {
  return nll_at_radius(spec, std::max(r, kNormClampEpsilon));
}

double clamped_nll_derivative_at_radius(const PriorSpec& spec, double r) {
  const double rc = std::max(r, kNormClampEpsilon);
  return rc - static_cast<double>(spec.d - 1) / rc;
}

PiecewisePath linear_init(const Vector& z1, const Vector& z2, int n) {
  if (z1.size() != z2.size())
    throw_invalid("linear_init: endpoint dimensions differ");
  if (n < 1) throw_invalid("linear_init: n must be >= 1");
  PiecewisePath path;
  path.points.resize(z1.size(), n + 1);
  for (int i = 0; i <= n; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(n);
    path.points.col(i) = z1 + t * (z2 - z1);
  }
  // Pin the endpoints bit-exactly; the blend above can round.
  path.points.col(0) = z1;
  path.points.col(n) = z2;
  return path;
}

double path_objective(const PriorSpec& spec, const PiecewisePath& path) {
  if (path.dim() != spec.d)
    throw_invalid("path_objective: path dimension does not match prior");
  if (path.segments() < 1)
    throw_invalid("path_objective: need at least one segment");
  double total = 0.0;
  for (std::int64_t i = 1; i < path.points.cols(); ++i) {
    const auto a = path.points.col(i - 1);
    const auto b = path.points.col(i);
    const double length = (b - a).norm();
    if (length == 0.0) continue;
    const double mid_radius = (0.5 * (a + b)).norm();
    total += clamped_nll_at_radius(spec, mid_radius) * length;
  }
  return total;
}

double penalty(const PiecewisePath& path, double delta, double alpha) {
  if (!(delta > 0.0)) throw_invalid("penalty: delta must be > 0");
  if (alpha < 0.0) throw_invalid("penalty: alpha must be >= 0");
  double total = 0.0;
  for (std::int64_t i = 1; i < path.points.cols(); ++i) {
    const double length =
        (path.points.col(i) - path.points.col(i - 1)).norm();
    total += std::max(0.0, length - delta);
  }
  return alpha * total;
}

Eigen::MatrixXd path_gradient(const PriorSpec& spec, const PiecewisePath& path,
                              double delta, double alpha) {
  if (path.dim() != spec.d)
    throw_invalid("path_gradient: path dimension does not match prior");
  const std::int64_t cols = path.points.cols();
  Eigen::MatrixXd grad = Eigen::MatrixXd::Zero(path.dim(), cols);

  // Each segment i contributes W(m_i) L_i + alpha relu(L_i - delta); its
  // gradient splits between the two incident points. Endpoint columns are
  // zeroed afterwards since they are constraints, not variables.
  Vector mid(path.dim());
  Vector diff(path.dim());
  for (std::int64_t i = 1; i < cols; ++i) {
    const auto a = path.points.col(i - 1);
    const auto b = path.points.col(i);
    diff = b - a;
    const double length = diff.norm();
    mid = 0.5 * (a + b);
    const double mid_radius = mid.norm();
    const double w = clamped_nll_at_radius(spec, mid_radius);

    // d(W(m_i))/dx = (1/2) W'(r) m / r, identical for both endpoints.
    if (mid_radius > kNormClampEpsilon) {
      const double scale =
          0.5 * clamped_nll_derivative_at_radius(spec, mid_radius) * length / mid_radius;
      grad.col(i - 1) += scale * mid;
      grad.col(i) += scale * mid;
    }
    // d(L_i)/dx_i = diff / L_i; zero-length segments use subgradient 0.
    if (length > 0.0) {
      double length_coeff = w;
      if (length > delta) length_coeff += alpha;  // relu slope past the kink
      grad.col(i) += (length_coeff / length) * diff;
      grad.col(i - 1) -= (length_coeff / length) * diff;
    }
  }
  grad.col(0).setZero();
  grad.col(cols - 1).setZero();
  return grad;
}

std::vector<Vector> sample_along(const PiecewisePath& path, int m) {
  if (m < 1) throw_invalid("sample_along: m must be >= 1");
  const std::int64_t n = path.segments();
  std::vector<double> cumulative(n + 1, 0.0);
  for (std::int64_t i = 1; i <= n; ++i) {
    cumulative[i] = cumulative[i - 1] +
                    (path.points.col(i) - path.points.col(i - 1)).norm();
  }
  const double total = cumulative[n];
  std::vector<Vector> samples;
  samples.reserve(m);
  if (total == 0.0) {
    for (int k = 0; k < m; ++k) samples.push_back(path.front());
    return samples;
  }
  std::int64_t seg = 1;
  for (int k = 1; k <= m; ++k) {
    const double target =
        total * static_cast<double>(k) / static_cast<double>(m + 1);
    while (seg < n && cumulative[seg] < target) ++seg;
    const double seg_len = cumulative[seg] - cumulative[seg - 1];
    const double t =
        seg_len > 0.0 ? (target - cumulative[seg - 1]) / seg_len : 0.0;
    samples.push_back(path.points.col(seg - 1) +
                      t * (path.points.col(seg) - path.points.col(seg - 1)));
  }
  return samples;
}

double resolve_delta(const PathConfig& cfg, const Vector& z1,
                     const Vector& z2) {
  if (cfg.delta) {
    if (!(*cfg.delta > 0.0)) throw_invalid("delta must be > 0");
    return *cfg.delta;
  }
  if (cfg.n < 1) throw_invalid("n must be >= 1");
  return (z2 - z1).norm() / static_cast<double>(cfg.n);
}

double max_segment_violation(const PiecewisePath& path, double delta) {
  double worst = 0.0;
  for (std::int64_t i = 1; i < path.points.cols(); ++i) {
    const double length =
        (path.points.col(i) - path.points.col(i - 1)).norm();
    worst = std::max(worst, length - delta);
  }
  return worst;
}

}  // namespace nao
