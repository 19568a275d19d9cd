#include "tgm/kernel.hpp"

#include <cmath>
#include <stdexcept>

namespace tgm {

TransitionKernel uniform_disk_kernel(double v_max, double dt, double resolution) {
    if (v_max < 0.0) throw std::invalid_argument("uniform_disk_kernel: v_max must be >= 0");
    if (!(dt > 0.0)) throw std::invalid_argument("uniform_disk_kernel: dt must be > 0");
    if (!(resolution > 0.0))
        throw std::invalid_argument("uniform_disk_kernel: resolution must be > 0");

    const double d_max_cells = v_max * dt / resolution;
    const double d2 = d_max_cells * d_max_cells;
    const int radius = static_cast<int>(std::floor(d_max_cells));

    TransitionKernel k;
    k.radius_cells = radius;
    const int side = k.side();
    k.weights.assign(static_cast<std::size_t>(side) * side, 0.0);

    int n = 0;
    for (int dy = -radius; dy <= radius; ++dy)
        for (int dx = -radius; dx <= radius; ++dx)
            if (static_cast<double>(dx * dx + dy * dy) <= d2) ++n;

    const double w = 1.0 / n;  // exact rational evaluated once
    for (int dy = -radius; dy <= radius; ++dy)
        for (int dx = -radius; dx <= radius; ++dx)
            if (static_cast<double>(dx * dx + dy * dy) <= d2)
                k.weights[k.offset_index(dx, dy)] = w;

    k.tau0 = k.weights[k.offset_index(0, 0)];
    k.uniform = true;

    k.off_center = k.weights;
    k.off_center[k.offset_index(0, 0)] = 0.0;
    k.off_center_flipped.assign(k.off_center.size(), 0.0);
    for (int dy = -radius; dy <= radius; ++dy)
        for (int dx = -radius; dx <= radius; ++dx)
            k.off_center_flipped[k.offset_index(dx, dy)] = k.off_center[k.offset_index(-dx, -dy)];
    return k;
}

double transition_probability(const TransitionKernel& kernel, const BinaryStaticMap& static_map,
                              const CellIndex& from, const CellIndex& to) {
    const bool from_static = static_map.is_static(from);
    const bool to_static = static_map.is_static(to);

    if (!(from == to)) {
        if (from_static || to_static) return 0.0;
        return kernel.weight(to.x - from.x, to.y - from.y);
    }

    if (from_static) return 1.0;

    // Staying gains the mass of every move blocked by a static neighbor.
    double blocked = 0.0;
    const int r = kernel.radius_cells;
    for (int dy = -r; dy <= r; ++dy) {
        for (int dx = -r; dx <= r; ++dx) {
            if (dx == 0 && dy == 0) continue;
            if (static_map.is_static({from.x + dx, from.y + dy}))
                blocked += kernel.weight(dx, dy);
        }
    }
    return kernel.tau0 + blocked;
}

}  // namespace tgm
