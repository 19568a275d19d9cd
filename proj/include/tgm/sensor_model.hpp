#ifndef TGM_SENSOR_MODEL_HPP
#define TGM_SENSOR_MODEL_HPP

#include <utility>
#include <vector>

#include "tgm/grid.hpp"

namespace tgm {

/// Per-scan cell classification shared by the three-state filter and the
/// log-odds baselines: every cell a beam traverses is free evidence, every
/// non-max-range beam endpoint is occupied evidence, and occupied evidence
/// wins when one scan produces both for the same cell. Indices are linear,
/// ascending, disjoint between the two lists.
struct ScanClassification {
    std::vector<int> free_cells;
    std::vector<int> hit_cells;
};

/// Throws std::invalid_argument when the pose lies outside the grid.
/// Max-range beams contribute free evidence along the whole ray.
ScanClassification classify_scan(const GridGeometry& geom, const Scan& scan, const Pose2D& pose);

/// Single-scan measurement term p(m | z, x): beam endpoints carry
/// p_hit_occupied split between static and dynamic by the prior ratio,
/// traversed cells carry p_miss_free with the occupied remainder split the
/// same way.
struct InverseSensorModel {
    double p_hit_occupied = 0.8;
    double p_miss_free = 0.7;

    InverseSensorModel() = default;
    InverseSensorModel(double hit, double miss);

    CellBelief occupied_belief(double prior_static, double prior_dynamic) const;
    CellBelief free_belief(double prior_static, double prior_dynamic) const;
};

/// Cells the scan says something about; everything absent means "no
/// information" and keeps its predicted belief.
struct SparseMeasurement {
    std::vector<std::pair<int, CellBelief>> cells;  // linear index, ascending
};

SparseMeasurement inverse_sensor_model(const Scan& scan, const Pose2D& pose,
                                       const GridGeometry& geom, const InverseSensorModel& ism,
                                       double prior_static, double prior_dynamic);

}  // namespace tgm

#endif  // TGM_SENSOR_MODEL_HPP
