#ifndef TGM_SCAN_MATCHER_HPP
#define TGM_SCAN_MATCHER_HPP

#include <optional>

#include "tgm/filter.hpp"
#include "tgm/grid.hpp"
#include "tgm/ogm.hpp"

namespace tgm {

/// Bilinear interpolation of a scalar probability field over cell centers;
/// reads as 0 outside the grid. At cell centers the field equals the
/// source values exactly, and bilinear blending keeps it inside [0, 1].
class SmoothStaticField {
public:
    SmoothStaticField(const GridGeometry& geom, std::vector<double> values);

    /// Static-layer field of a map; ignores the dynamic layer entirely.
    static SmoothStaticField from_static_layer(const TgmMap& map);
    /// Occupancy-probability field of a log-odds baseline map.
    static SmoothStaticField from_ogm(const OgmMap& map);

    double value(const Vec2& world) const;
    /// d(value)/d(world_x), d(value)/d(world_y).
    Vec2 gradient(const Vec2& world) const;

    const GridGeometry& geometry() const { return geom_; }

private:
    double cell_value(int x, int y) const {
        if (x < 0 || x >= geom_.width || y < 0 || y >= geom_.height) return 0.0;
        return values_[y * geom_.width + x];
    }

    GridGeometry geom_;
    std::vector<double> values_;
};

struct MatchConfig {
    double window_cells = 1.5;   // coarse translation window, +- cells
    double step_cells = 0.5;     // coarse translation step, cells
    double window_theta = 0.05;  // coarse rotation window, +- rad
    double step_theta = 0.025;   // coarse rotation step, rad
    int max_iterations = 30;
    double step_tolerance = 1e-4;
    int max_halvings = 10;
};

struct MatchResult {
    Pose2D pose;
    double cost = 0.0;  // final sum of squared residuals, <= number of scan points
    int iterations = 0;
    bool converged = false;
};

/// Pose minimizing sum_k (1 - field(T_pose z_k))^2 over the non-max-range
/// beams: coarse grid search around the prior, then Gauss-Newton with
/// analytic Jacobians and step halving. Ties in the coarse search break
/// toward the lexicographically smallest pose. Throws std::invalid_argument
/// when the scan has no usable beam.
MatchResult match(const Scan& scan, const Pose2D& prior_pose, const SmoothStaticField& field,
                  const MatchConfig& config = {});

/// Constant-velocity pose predictor over the two most recent estimates.
struct SlamState {
    explicit SlamState(const Pose2D& initial) : prev(initial) {}

    Pose2D seed() const {
        if (!prev2) return prev;
        return {2.0 * prev.x - prev2->x, 2.0 * prev.y - prev2->y,
                prev.theta + wrap_angle(prev.theta - prev2->theta)};
    }
    void push(const Pose2D& pose) {
        prev2 = prev;
        prev = pose;
    }

    Pose2D prev;
    std::optional<Pose2D> prev2;
};

struct SlamStepResult {
    Pose2D pose;
    MatchResult match;
    bool used_motion_model = false;  // matcher failed; fell back to the seed
};

/// Match against the static layer of the previous map, then run the filter
/// step at the matched pose.
SlamStepResult slam_step(TgmMap& map, const Scan& scan, SlamState& state,
                         const TransitionKernel& kernel, const InverseSensorModel& ism,
                         const SaturationLimits& limits, const MatchConfig& config = {},
                         StepDiagnostics* diag = nullptr);

/// Baseline variant: matches against the full occupancy field.
SlamStepResult ogm_slam_step(OgmMap& map, const Scan& scan, SlamState& state,
                             const InverseSensorModel& ism, const MatchConfig& config = {});

}  // namespace tgm

#endif  // TGM_SCAN_MATCHER_HPP
