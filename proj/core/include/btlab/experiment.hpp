#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "btlab/error.hpp"
#include "btlab/field.hpp"

namespace btlab {

struct ExperimentField {
  std::string name;
  FieldDescriptor descriptor;
};

/// Config document:
///   {"fields": [{"name": ..., "descriptor": {...}}], "d": 3, "r_min": 1, "r_max": 2,
///    "budgets": {"ring": 2048, "vertices": 20000, "candidates": ..., "search_nodes": ...,
///                "time_seconds": 600},
///    "output_dir": "out", "cache": true, "cache_dir": "out/cache", "seed": 1}
struct ExperimentConfig {
  std::vector<ExperimentField> fields;
  int d = 3;
  int r_min = 1;
  int r_max = 2;
  Budget budget;
  double time_seconds = 600.0;
  std::filesystem::path output_dir = "btlab-out";
  bool cache = true;
  std::filesystem::path cache_dir;  // defaults to output_dir / "cache"
  std::uint64_t seed = 20160501;
  nlohmann::json source;  // the document as given, embedded in the report
};

/// Throws InvalidInput listing the first problem found.
ExperimentConfig parse_experiment_config(const nlohmann::json& doc);

/// Runs every cell and assembles the report. Cells run concurrently; the
/// report depends only on the config (and the code version), never on timing
/// or cache state, unless the time budget runs out.
nlohmann::json run_experiment(const ExperimentConfig& config);

/// Writes output_dir/report.json atomically and returns its path.
std::filesystem::path write_report(const ExperimentConfig& config, const nlohmann::json& report);

/// Write to a sibling temporary file, then rename over `path`.
void atomic_write(const std::filesystem::path& path, const std::string& content);

/// Pretty-printed JSON with sorted keys and a trailing newline.
std::string dump_report(const nlohmann::json& report);

}  // namespace btlab
