#include "tgm/filter.hpp"

#include <algorithm>
#include <stdexcept>

namespace tgm {

SaturationLimits::SaturationLimits(double s_lo, double s_hi, double d_lo, double d_hi)
    : static_lo(s_lo), static_hi(s_hi), dynamic_lo(d_lo), dynamic_hi(d_hi) {
    if (s_lo > s_hi || d_lo > d_hi || s_lo < 0.0 || s_hi > 1.0 || d_lo < 0.0 || d_hi > 1.0)
        throw std::invalid_argument("SaturationLimits: ranges must be ordered subsets of [0,1]");
}

CellBelief update_cell(const CellBelief& prediction, const CellBelief& measurement,
                       const CellBelief& prior, bool* degenerate) {
    if (!(prior.p_static > 0.0 && prior.p_dynamic > 0.0 && prior.p_free() > 0.0))
        throw std::invalid_argument("update_cell: prior components must be strictly positive");

    const double us = measurement.p_static * prediction.p_static / prior.p_static;
    const double ud = measurement.p_dynamic * prediction.p_dynamic / prior.p_dynamic;
    const double uf = measurement.p_free() * prediction.p_free() / prior.p_free();
    const double eta = us + ud + uf;
    if (degenerate) *degenerate = false;
    if (eta <= 0.0) {
        // Contradictory certainties cancel all three states; fall back to
        // the least-commitment belief.
        if (degenerate) *degenerate = true;
        return prior;
    }
    return {us / eta, ud / eta};
}

CellBelief apply_saturation(const CellBelief& belief, const SaturationLimits& limits) {
    double s = std::clamp(belief.p_static, limits.static_lo, limits.static_hi);
    double d = std::clamp(belief.p_dynamic, limits.dynamic_lo, limits.dynamic_hi);
    const bool s_bound = s != belief.p_static;
    const bool d_bound = d != belief.p_dynamic;

    double excess = s + d - 1.0;
    if (excess > 0.0) {
        double pool = (s_bound ? 0.0 : s) + (d_bound ? 0.0 : d);
        if (pool >= excess && pool > 0.0) {
            const double scale = 1.0 - excess / pool;
            if (!s_bound) s *= scale;
            if (!d_bound) d *= scale;
        } else {
            // Both components pinned by the limits; shrink proportionally
            // so the result stays a valid belief.
            const double scale = 1.0 / (s + d);
            s *= scale;
            d *= scale;
        }
    }
    return {s, d};
}

TgmMap step(const TgmMap& map, const Scan& scan, const Pose2D& pose,
            const TransitionKernel& kernel, const InverseSensorModel& ism,
            const SaturationLimits& limits, const std::optional<CellRect>& region,
            StepDiagnostics* diag) {
    if (!(map.prior_static > 0.0 && map.prior_dynamic > 0.0 &&
          map.prior_static + map.prior_dynamic < 1.0))
        throw std::invalid_argument("step: map priors must be strictly inside the simplex");

    Prediction pred = predict(map, kernel, region);
    const SparseMeasurement meas =
        inverse_sensor_model(scan, pose, map.geometry, ism, map.prior_static, map.prior_dynamic);

    TgmMap out;
    out.geometry = map.geometry;
    out.prior_static = map.prior_static;
    out.prior_dynamic = map.prior_dynamic;
    out.static_layer = std::move(pred.static_layer);
    out.dynamic_layer = std::move(pred.dynamic_layer);

    const CellBelief prior{map.prior_static, map.prior_dynamic};
    long degenerate_count = 0;
    for (const auto& [index, cell_meas] : meas.cells) {
        const CellBelief predicted{out.static_layer[index], out.dynamic_layer[index]};
        bool degenerate = false;
        CellBelief updated = update_cell(predicted, cell_meas, prior, &degenerate);
        if (degenerate) ++degenerate_count;
        updated = apply_saturation(updated, limits);
        out.static_layer[index] = updated.p_static;
        out.dynamic_layer[index] = updated.p_dynamic;
    }

    if (diag) {
        diag->clipped_cells += pred.clipped_cells;
        diag->clipped_mass += pred.clipped_mass;
        diag->degenerate_updates += degenerate_count;
        diag->measured_cells += static_cast<long>(meas.cells.size());
    }
    return out;
}

}  // namespace tgm
