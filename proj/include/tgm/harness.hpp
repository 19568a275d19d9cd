#ifndef TGM_HARNESS_HPP
#define TGM_HARNESS_HPP

#include <optional>
#include <string>
#include <vector>

#include "tgm/filter.hpp"
#include "tgm/scenario_io.hpp"

namespace tgm {

enum class MapperKind { kTgm, kOgm, kCogm };
enum class PoseMode { kGroundTruth, kSlam };

std::string mapper_name(MapperKind kind);
std::optional<MapperKind> mapper_from_name(const std::string& name);

struct RunConfig {
    std::optional<Scenario> scenario;  // takes precedence over scenario_path
    std::string scenario_path;
    MapperKind mapper = MapperKind::kTgm;
    PoseMode pose_mode = PoseMode::kGroundTruth;
    std::uint64_t seed = 1;
    std::string out_dir;  // empty: no artifacts written
    std::vector<double> snapshot_times_s;

    // Scenario overrides; unset values come from the scenario file.
    std::optional<double> sensor_range_m;
    std::optional<double> resolution_m;
    std::optional<double> prior_static;
    std::optional<double> prior_dynamic;
    std::optional<double> v_max_mps;
};

struct RunMetrics {
    int frames = 0;
    long observed_cells = 0;
    // Fraction of observed ground-truth-static cells classified occupied
    // plus observed free-at-end cells classified free.
    double static_accuracy = 0.0;
    // Cells still believed occupied (p > 0.5) that were only ever
    // transiently covered by an obstacle.
    long trace_count = 0;
    double pose_rmse_m = 0.0;
    double pose_rmse_before_event_m = 0.0;
    double pose_rmse_after_event_m = 0.0;
    double mean_step_ms = 0.0;
    double max_step_ms = 0.0;
    std::vector<double> time_s;
    std::vector<double> err_x, err_y, err_theta;
    std::vector<double> step_ms;
    StepDiagnostics diagnostics;
    long motion_model_fallbacks = 0;
};

/// Executes the full simulate -> map -> evaluate loop. Writes map
/// snapshots, the pose trace CSV and a summary report into out_dir when it
/// is set. Identical config and seed give byte-identical CSV and images.
RunMetrics run(const RunConfig& config);

struct ComparisonRow {
    std::string mapper;
    RunMetrics metrics;
};

struct Comparison {
    std::vector<ComparisonRow> rows;
    std::string table;  // aligned text
};

/// Runs every config on the shared scenario and tabulates the metrics.
/// Requires >= 2 configs agreeing on scenario, seed and pose mode.
Comparison compare(const std::vector<RunConfig>& configs);

}  // namespace tgm

#endif  // TGM_HARNESS_HPP
