#ifndef TGM_FILTER_HPP
#define TGM_FILTER_HPP

#include <optional>

#include "tgm/grid.hpp"
#include "tgm/kernel.hpp"
#include "tgm/predict.hpp"
#include "tgm/sensor_model.hpp"

namespace tgm {

/// Hard caps on per-cell confidence; contradicting evidence can then flip
/// a cell in a bounded number of observations.
struct SaturationLimits {
    double static_lo = 0.0;
    double static_hi = 1.0;
    double dynamic_lo = 0.0;
    double dynamic_hi = 1.0;

    SaturationLimits() = default;
    SaturationLimits(double s_lo, double s_hi, double d_lo, double d_hi);

    static SaturationLimits none() { return {}; }
    /// p_static capped at 0.95, p_dynamic floored at 0.05.
    static SaturationLimits tgm_default() { return {0.0, 0.95, 0.05, 1.0}; }
};

/// Three-state posterior of one cell: per-state product of measurement and
/// prediction over the prior, normalized to sum 1. A zero normalizer
/// (contradictory certainties) resolves to the prior and reports through
/// `degenerate`. Saturation is NOT applied here; see apply_saturation.
CellBelief update_cell(const CellBelief& prediction, const CellBelief& measurement,
                       const CellBelief& prior, bool* degenerate = nullptr);

/// Clamps p_static and p_dynamic into their ranges. When clamping pushes
/// the sum past 1, the excess is taken out of the unclamped components in
/// proportion to their size.
CellBelief apply_saturation(const CellBelief& belief, const SaturationLimits& limits);

struct StepDiagnostics {
    long clipped_cells = 0;       // prediction simplex repairs
    double clipped_mass = 0.0;
    long degenerate_updates = 0;  // zero-normalizer updates resolved to the prior
    long measured_cells = 0;
};

/// One full filter cycle: smooth the previous belief through the
/// transition model, then fold the scan into the smoothed belief. Cells
/// the scan says nothing about keep their predicted belief. Saturation
/// applies after each measurement update.
TgmMap step(const TgmMap& map, const Scan& scan, const Pose2D& pose,
            const TransitionKernel& kernel, const InverseSensorModel& ism,
            const SaturationLimits& limits, const std::optional<CellRect>& region = std::nullopt,
            StepDiagnostics* diag = nullptr);

}  // namespace tgm

#endif  // TGM_FILTER_HPP
