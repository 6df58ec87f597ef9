#include "nao/oracle2d.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

#include "nao/errors.hpp"

namespace nao {

namespace {

// Antiderivative of ln(s^2 + p^2): s ln(s^2 + p^2) - 2s + 2p atan(s/p),
// continuous limit s ln(s^2) - 2s as p -> 0.
double log_quadratic_antiderivative(double s, double p) {
  if (p > 0.0) return s * std::log(s * s + p * p) - 2.0 * s + 2.0 * p * std::atan(s / p);
  if (s == 0.0) return 0.0;
  return s * std::log(s * s) - 2.0 * s;
}

}  // namespace

double segment_weight_integral(const PriorSpec& spec,
                               const std::array<double, 2>& a,
                               const std::array<double, 2>& b) {
  if (spec.d != 2)
    throw_invalid("segment_weight_integral: requires d = 2");
  const double ux = b[0] - a[0];
  const double uy = b[1] - a[1];
  const double length = std::hypot(ux, uy);
  if (length == 0.0) return 0.0;
  const double dirx = ux / length;
  const double diry = uy / length;

  // W(p(t)) = C + q(t)/2 - ln(q(t))/2 with q(t) = |a + t dir|^2.
  const double beta = a[0] * dirx + a[1] * diry;     // a . dir
  const double a_sq = a[0] * a[0] + a[1] * a[1];
  const double p_sq = std::max(a_sq - beta * beta, 0.0);
  const double p = std::sqrt(p_sq);

  const double quad_integral =
      length * length * length / 3.0 + beta * length * length + a_sq * length;
  const double log_integral = log_quadratic_antiderivative(length + beta, p) -
                              log_quadratic_antiderivative(beta, p);
  return spec.log_normalizer * length + 0.5 * quad_integral -
         0.5 * log_integral;
}

namespace {

struct StencilOffsets {
  std::vector<std::array<int, 2>> offsets;
};

StencilOffsets make_stencil(int stencil) {
  StencilOffsets s;
  const std::array<std::array<int, 2>, 8> base{{{1, 0},
                                                {-1, 0},
                                                {0, 1},
                                                {0, -1},
                                                {1, 1},
                                                {1, -1},
                                                {-1, 1},
                                                {-1, -1}}};
  s.offsets.assign(base.begin(), base.end());
  if (stencil == 16) {
    const std::array<std::array<int, 2>, 8> knight{{{1, 2},
                                                    {2, 1},
                                                    {2, -1},
                                                    {1, -2},
                                                    {-1, -2},
                                                    {-2, -1},
                                                    {-2, 1},
                                                    {-1, 2}}};
    s.offsets.insert(s.offsets.end(), knight.begin(), knight.end());
  }
  return s;
}

}  // namespace

GridPathResult grid_shortest_path(const PriorSpec& spec, const GridSpec& grid,
                                  const Vector& a, const Vector& b) {
  if (spec.d != 2) throw_invalid("grid_shortest_path: requires d = 2");
  if (a.size() != 2 || b.size() != 2)
    throw_invalid("grid_shortest_path: endpoints must be 2D");
  if (grid.resolution < 32)
    throw_invalid("grid_shortest_path: resolution must be >= 32");
  if (grid.stencil != 8 && grid.stencil != 16)
    throw_invalid("grid_shortest_path: stencil must be 8 or 16");
  if (!(grid.max_corner[0] > grid.min_corner[0] &&
        grid.max_corner[1] > grid.min_corner[1]))
    throw_invalid("grid_shortest_path: max_corner must dominate min_corner");
  for (int axis = 0; axis < 2; ++axis) {
    if (a[axis] < grid.min_corner[axis] || a[axis] > grid.max_corner[axis] ||
        b[axis] < grid.min_corner[axis] || b[axis] > grid.max_corner[axis])
      throw_invalid("grid_shortest_path: endpoint outside grid bounds");
  }

  const int res = grid.resolution;
  const double dx = (grid.max_corner[0] - grid.min_corner[0]) / (res - 1);
  const double dy = (grid.max_corner[1] - grid.min_corner[1]) / (res - 1);
  auto position = [&](int i, int j) -> std::array<double, 2> {
    return {grid.min_corner[0] + i * dx, grid.min_corner[1] + j * dy};
  };
  auto node_id = [&](int i, int j) { return j * res + i; };
  auto snap = [&](const Vector& point, double& snap_error) {
    const int i = std::clamp(
        static_cast<int>(std::lround((point[0] - grid.min_corner[0]) / dx)), 0,
        res - 1);
    const int j = std::clamp(
        static_cast<int>(std::lround((point[1] - grid.min_corner[1]) / dy)), 0,
        res - 1);
    const auto pos = position(i, j);
    snap_error = std::hypot(point[0] - pos[0], point[1] - pos[1]);
    return std::pair{i, j};
  };

  GridPathResult result;
  auto [ai, aj] = snap(a, result.snap_error_a);
  auto [bi, bj] = snap(b, result.snap_error_b);

  // Canonical query order: the graph is undirected, so cost(a, b) and
  // cost(b, a) are the same number; computing both through one ordering
  // makes the symmetry bit-exact.
  bool swapped = false;
  if (node_id(bi, bj) < node_id(ai, aj)) {
    std::swap(ai, bi);
    std::swap(aj, bj);
    std::swap(result.snap_error_a, result.snap_error_b);
    swapped = true;
  }
  const int source = node_id(ai, aj);
  const int target = node_id(bi, bj);

  if (source == target) {
    result.cost = 0.0;
    result.polyline.push_back(position(ai, aj));
    if (swapped) std::swap(result.snap_error_a, result.snap_error_b);
    return result;
  }

  const auto stencil = make_stencil(grid.stencil);
  const int node_count = res * res;
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(node_count, kInf);
  std::vector<int> parent(node_count, -1);
  std::vector<char> settled(node_count, 0);

  // A node exactly at the origin has W = +inf and cannot be traversed.
  auto impassable = [&](int i, int j) {
    const auto pos = position(i, j);
    return pos[0] == 0.0 && pos[1] == 0.0;
  };

  using QueueEntry = std::pair<double, int>;
  std::priority_queue<QueueEntry, std::vector<QueueEntry>,
                      std::greater<QueueEntry>>
      queue;
  dist[source] = 0.0;
  queue.emplace(0.0, source);

  while (!queue.empty()) {
    const auto [d_u, u] = queue.top();
    queue.pop();
    if (settled[u]) continue;
    settled[u] = 1;
    if (u == target) break;
    const int ui = u % res;
    const int uj = u / res;
    if (impassable(ui, uj)) continue;
    const auto u_pos = position(ui, uj);
    for (const auto& off : stencil.offsets) {
      const int vi = ui + off[0];
      const int vj = uj + off[1];
      if (vi < 0 || vi >= res || vj < 0 || vj >= res) continue;
      if (impassable(vi, vj)) continue;
      const int v = node_id(vi, vj);
      if (settled[v]) continue;
      const double w = segment_weight_integral(spec, u_pos, position(vi, vj));
      const double candidate = d_u + w;
      if (candidate < dist[v]) {
        dist[v] = candidate;
        parent[v] = u;
        queue.emplace(candidate, v);
      }
    }
  }

  if (!std::isfinite(dist[target]))
    throw_degenerate("grid_shortest_path: target unreachable");

  result.cost = dist[target];
  for (int v = target; v != -1; v = parent[v])
    result.polyline.push_back(position(v % res, v / res));
  std::reverse(result.polyline.begin(), result.polyline.end());
  if (swapped) {
    std::reverse(result.polyline.begin(), result.polyline.end());
    std::swap(result.snap_error_a, result.snap_error_b);
  }
  return result;
}

}  // namespace nao
