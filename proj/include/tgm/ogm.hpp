#ifndef TGM_OGM_HPP
#define TGM_OGM_HPP

#include <optional>

#include "tgm/grid.hpp"
#include "tgm/render.hpp"
#include "tgm/sensor_model.hpp"

namespace tgm {

/// Classic additive log-odds occupancy grid. With `clamp` set this is the
/// clamped variant: the log-odds never leave the probability bounds, so
/// contradicting evidence shifts cells after a bounded number of scans.
struct OgmMap {
    GridGeometry geometry;
    std::vector<double> log_odds;  // prior 0.5 <=> 0
    std::optional<std::pair<double, double>> clamp;  // probability-space [lo, hi]

    double probability_at(int index) const {
        return 1.0 - 1.0 / (1.0 + std::exp(log_odds[index]));
    }
};

OgmMap new_ogm(const GridGeometry& geom,
               std::optional<std::pair<double, double>> clamp = std::nullopt);

/// Standard update: traversed cells accumulate log-odds(1 - p_miss_free),
/// endpoint cells log-odds(p_hit_occupied). Shares the scan classification
/// with the three-state filter so baseline comparisons see the same rays.
void ogm_step(OgmMap& map, const Scan& scan, const Pose2D& pose, const InverseSensorModel& ism);

/// Gray scale: probability 0 -> white, 1 -> black, linear.
Image render_ogm(const OgmMap& map);

}  // namespace tgm

#endif  // TGM_OGM_HPP
