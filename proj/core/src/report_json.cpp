#include "nao/report_json.hpp"

namespace nao {

using nlohmann::json;

json to_json(const PathConfig& cfg, double resolved_delta) {
  return json{{"n", cfg.n},
              {"delta", resolved_delta},
              {"delta_auto", !cfg.delta.has_value()},
              {"alpha", cfg.alpha},
              {"step_size", cfg.step_size},
              {"max_iters", cfg.max_iters},
              {"grad_tol", cfg.grad_tol},
              {"adam_beta1", cfg.adam_beta1},
              {"adam_beta2", cfg.adam_beta2},
              {"adam_eps", cfg.adam_eps}};
}

json to_json(const OptimReport& report) {
  return json{{"final_objective", report.final_objective},
              {"iterations_used", report.iterations_used},
              {"converged", report.converged},
              {"max_segment_violation", report.max_segment_violation},
              {"resolved_delta", report.resolved_delta},
              {"objective_trace", report.objective_trace},
              {"penalty_trace", report.penalty_trace}};
}

json to_json(const MetricAuditReport& report) {
  return json{{"trials", report.trials},
              {"identity_max_abs", report.identity_max_abs},
              {"symmetry_max_rel", report.symmetry_max_rel},
              {"symmetry_violations", report.symmetry_violations},
              {"symmetry_rel_tol", report.symmetry_rel_tol},
              {"triangle_violations", report.triangle_violations},
              {"triangle_worst_rel_slack", report.triangle_worst_rel_slack},
              {"triangle_rel_tol", report.triangle_rel_tol},
              {"concat_violations", report.concat_violations},
              {"concat_worst_excess", report.concat_worst_excess}};
}

json to_json(const GridSpec& grid) {
  return json{{"min_corner", grid.min_corner},
              {"max_corner", grid.max_corner},
              {"resolution", grid.resolution},
              {"stencil", grid.stencil}};
}

json to_json(const GridPathResult& result) {
  return json{{"cost", result.cost},
              {"snap_error_a", result.snap_error_a},
              {"snap_error_b", result.snap_error_b},
              {"polyline", result.polyline}};
}

json without_timing(const json& doc) {
  if (doc.is_object()) {
    json out = json::object();
    for (const auto& [key, value] : doc.items()) {
      if (key == "timing") continue;
      out[key] = without_timing(value);
    }
    return out;
  }
  if (doc.is_array()) {
    json out = json::array();
    for (const auto& value : doc) out.push_back(without_timing(value));
    return out;
  }
  return doc;
}

}  // namespace nao
