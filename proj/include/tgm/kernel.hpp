#ifndef TGM_KERNEL_HPP
#define TGM_KERNEL_HPP

#include <vector>

#include "tgm/grid.hpp"

namespace tgm {

/// Translation-invariant distribution over single-step cell-to-cell moves
/// of dynamic content. `weights` is T over the square footprint
/// [-radius, radius]^2; `off_center` is K (T with the center zeroed) and
/// `off_center_flipped` is its point reflection K'.
struct TransitionKernel {
    int radius_cells = 0;
    std::vector<double> weights;             // T, (2r+1)^2 row-major
    std::vector<double> off_center;          // K
    std::vector<double> off_center_flipped;  // K'
    double tau0 = 1.0;                       // T[0,0]
    bool uniform = false;  // all support weights equal (enables the fast predict path)

    int side() const { return 2 * radius_cells + 1; }
    int offset_index(int dx, int dy) const {
        return (dy + radius_cells) * side() + (dx + radius_cells);
    }
    /// T[dx,dy]; zero outside the footprint.
    double weight(int dx, int dy) const {
        if (dx < -radius_cells || dx > radius_cells || dy < -radius_cells || dy > radius_cells)
            return 0.0;
        return weights[offset_index(dx, dy)];
    }
};

/// Uniform transition distribution over the disk of radius
/// v_max * dt / resolution cells: every offset with dx^2 + dy^2 <= d^2
/// gets weight 1/n, where n is the number of such offsets. Offsets
/// exactly on the circle are included.
TransitionKernel uniform_disk_kernel(double v_max, double dt, double resolution);

/// Binary static assignment used by the brute-force transition semantics.
/// Cells outside the grid read as non-static.
struct BinaryStaticMap {
    GridGeometry geometry;
    std::vector<std::uint8_t> cells;

    bool is_static(const CellIndex& c) const {
        return geometry.contains(c) && cells[geometry.index_of(c)] != 0;
    }
};

/// Probability that the content of cell `from` moves to cell `to` in one
/// step, given the binary static map: transitions touching a static cell
/// are blocked, static cells stay put with probability 1, and blocked
/// outgoing mass folds into staying.
double transition_probability(const TransitionKernel& kernel, const BinaryStaticMap& static_map,
                              const CellIndex& from, const CellIndex& to);

}  // namespace tgm

#endif  // TGM_KERNEL_HPP
