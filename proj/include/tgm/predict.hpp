#ifndef TGM_PREDICT_HPP
#define TGM_PREDICT_HPP

#include <optional>

#include "tgm/grid.hpp"
#include "tgm/kernel.hpp"

namespace tgm {

/// Inclusive cell rectangle.
struct CellRect {
    int x0 = 0;
    int y0 = 0;
    int x1 = 0;
    int y1 = 0;

    bool contains(int x, int y) const { return x >= x0 && x <= x1 && y >= y0 && y <= y1; }
};

/// One-step propagation of the belief through the transition model.
struct Prediction {
    std::vector<double> static_layer;
    std::vector<double> dynamic_layer;
    // Simplex repair diagnostics: cells where p_dynamic had to be clipped
    // to 1 - p_static, and the total mass removed.
    long clipped_cells = 0;
    double clipped_mass = 0.0;
};

/// Propagates the map one time step. The static layer passes through
/// unchanged; the dynamic layer of cell i becomes
///
///   M_d[i] * (tau0 + conv(M_s, K')[i]) + (1 - M_s[i]) * conv(M_d, K)[i]
///
/// with zero padding outside the grid. When `region` is given, only cells
/// inside it are recomputed (reads still reach outside the region) and all
/// other cells are copied from the input. Uniform kernels take a running-sum
/// path; general kernels are evaluated as a direct stencil.
Prediction predict(const TgmMap& map, const TransitionKernel& kernel,
                   const std::optional<CellRect>& region = std::nullopt);

/// Reference implementation: per-cell summation over the kernel footprint,
/// kept free of any code shared with predict() so the two can check each
/// other.
Prediction predict_bruteforce(const TgmMap& map, const TransitionKernel& kernel);

}  // namespace tgm

#endif  // TGM_PREDICT_HPP
