#ifndef TGM_RAYCAST_HPP
#define TGM_RAYCAST_HPP

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "tgm/grid.hpp"

namespace tgm {

/// Walks every grid cell the segment [from, to] passes through, in order,
/// starting at the cell containing `from`. The visitor receives the cell
/// index; returning false stops the walk. Cells outside the grid end the
/// walk (the segment never re-enters once the start cell is inside).
template <typename Visitor>
void traverse_cells(const GridGeometry& geom, const Vec2& from, const Vec2& to, Visitor&& visit) {
    const double dx = to.x - from.x;
    const double dy = to.y - from.y;
    const double len = std::hypot(dx, dy);

    const auto start = world_to_cell(geom, from);
    if (!start) return;
    CellIndex cell = *start;

    if (len == 0.0) {
        visit(cell);
        return;
    }
    const double inv_len = 1.0 / len;
    const double ux = dx * inv_len, uy = dy * inv_len;
    const Vec2 corner = geom.min_corner();

    const int step_x = ux > 0.0 ? 1 : (ux < 0.0 ? -1 : 0);
    const int step_y = uy > 0.0 ? 1 : (uy < 0.0 ? -1 : 0);

    const double inf = std::numeric_limits<double>::infinity();
    // Distance along the ray to the first boundary crossing on each axis.
    double t_max_x = inf, t_max_y = inf, t_delta_x = inf, t_delta_y = inf;
    if (step_x != 0) {
        const double next_bx = corner.x + (cell.x + (step_x > 0 ? 1 : 0)) * geom.resolution;
        t_max_x = (next_bx - from.x) / ux;
        t_delta_x = geom.resolution / std::fabs(ux);
    }
    if (step_y != 0) {
        const double next_by = corner.y + (cell.y + (step_y > 0 ? 1 : 0)) * geom.resolution;
        t_max_y = (next_by - from.y) / uy;
        t_delta_y = geom.resolution / std::fabs(uy);
    }

    while (true) {
        if (!visit(cell)) return;
        const double t_next = std::min(t_max_x, t_max_y);
        if (t_next > len) return;  // endpoint lies in the current cell
        if (t_max_x <= t_max_y) {
            cell.x += step_x;
            t_max_x += t_delta_x;
        } else {
            cell.y += step_y;
            t_max_y += t_delta_y;
        }
        if (!geom.contains(cell)) return;
    }
}

/// Boolean occupancy raster for ray casting.
struct OccupancyRaster {
    GridGeometry geometry;
    std::vector<std::uint8_t> cells;

    bool occupied(const CellIndex& c) const { return cells[geometry.index_of(c)] != 0; }
};

/// First intersection of the ray with an occupied cell, as the distance at
/// which the ray enters that cell (0 when the start cell itself is
/// occupied). nullopt when nothing is hit within max_range or the ray
/// leaves the grid.
std::optional<double> cast_ray(const OccupancyRaster& raster, const Vec2& origin, double angle,
                               double max_range);

}  // namespace tgm

#endif  // TGM_RAYCAST_HPP
