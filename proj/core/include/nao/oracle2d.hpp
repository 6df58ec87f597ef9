#pragma once

#include <array>
#include <vector>

#include "nao/chi_prior.hpp"

namespace nao {

// Brute-force shortest-weighted-path oracle on a 2D grid graph. Endpoints
// snap to the nearest node; edge (u, v) is weighted with the exact line
// integral of W between the node positions (closed form for d = 2), so a
// nested refinement of any path keeps its cost and finer grids can only
// lower the optimum. Error against the continuous infimum is then bounded by
// the stencil's angular resolution plus endpoint snapping.
struct GridSpec {
  std::array<double, 2> min_corner{-2.5, -2.5};
  std::array<double, 2> max_corner{2.5, 2.5};
  int resolution = 512;  // nodes per axis, >= 32
  int stencil = 16;      // 8 or 16 neighbors
};

struct GridPathResult {
  double cost = 0.0;
  std::vector<std::array<double, 2>> polyline;  // snapped node positions
  double snap_error_a = 0.0;
  double snap_error_b = 0.0;
};

// Exact integral of W along the straight segment from a to b (d = 2 only).
double segment_weight_integral(const PriorSpec& spec,
                               const std::array<double, 2>& a,
                               const std::array<double, 2>& b);

GridPathResult grid_shortest_path(const PriorSpec& spec, const GridSpec& grid,
                                  const Vector& a, const Vector& b);

}  // namespace nao
