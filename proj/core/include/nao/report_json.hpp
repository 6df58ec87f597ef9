#pragma once

#include <nlohmann/json.hpp>

#include "nao/centroid.hpp"
#include "nao/metric.hpp"
#include "nao/oracle2d.hpp"
#include "nao/path.hpp"

namespace nao {

// JSON shapes used by CLI reports. Every report document carries
// schema_version so the files stay machine-diffable.
inline constexpr int kReportSchemaVersion = 1;

nlohmann::json to_json(const PathConfig& cfg, double resolved_delta);
nlohmann::json to_json(const OptimReport& report);
nlohmann::json to_json(const MetricAuditReport& report);
nlohmann::json to_json(const GridSpec& grid);
nlohmann::json to_json(const GridPathResult& result);

// Copy with every key named "timing" removed, at any depth. Reports are
// byte-identical across runs once timing is stripped.
nlohmann::json without_timing(const nlohmann::json& doc);

}  // namespace nao
