#ifndef TGM_TESTS_TEST_HELPERS_HPP
#define TGM_TESTS_TEST_HELPERS_HPP

#include <random>

#include "tgm/grid.hpp"
#include "tgm/kernel.hpp"

namespace tgm::testing {

/// Map with uniformly random valid beliefs (p_s + p_d <= 1 per cell).
inline TgmMap random_map(std::mt19937& rng, int width, int height) {
    TgmMap map = new_map(GridGeometry(0.0, 0.0, 1.0, width, height), 0.0, 0.0);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < width * height; ++i) {
        const double s = u(rng);
        const double d = u(rng) * (1.0 - s);
        map.static_layer[i] = s;
        map.dynamic_layer[i] = d;
    }
    return map;
}

/// Kernel with random nonnegative weights normalized to 1. Not uniform, so
/// predict() takes its general path.
inline TransitionKernel random_kernel(std::mt19937& rng, int radius) {
    TransitionKernel k;
    k.radius_cells = radius;
    const int side = k.side();
    k.weights.assign(static_cast<std::size_t>(side) * side, 0.0);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double sum = 0.0;
    for (double& w : k.weights) {
        w = u(rng);
        sum += w;
    }
    for (double& w : k.weights) w /= sum;
    k.tau0 = k.weights[k.offset_index(0, 0)];
    k.uniform = false;
    k.off_center = k.weights;
    k.off_center[k.offset_index(0, 0)] = 0.0;
    k.off_center_flipped.assign(k.off_center.size(), 0.0);
    for (int dy = -radius; dy <= radius; ++dy)
        for (int dx = -radius; dx <= radius; ++dx)
            k.off_center_flipped[k.offset_index(dx, dy)] = k.off_center[k.offset_index(-dx, -dy)];
    return k;
}

inline CellBelief random_belief(std::mt19937& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double s = u(rng);
    const double d = u(rng) * (1.0 - s);
    return {s, d};
}

}  // namespace tgm::testing

#endif  // TGM_TESTS_TEST_HELPERS_HPP
