#include "tgm/raycast.hpp"

namespace tgm {

std::optional<double> cast_ray(const OccupancyRaster& raster, const Vec2& origin, double angle,
                               double max_range) {
    const Vec2 end{origin.x + max_range * std::cos(angle), origin.y + max_range * std::sin(angle)};

    std::optional<double> hit;
    double t_entry = 0.0;
    const GridGeometry& geom = raster.geometry;
    const Vec2 corner = geom.min_corner();
    const double ux = std::cos(angle), uy = std::sin(angle);

    traverse_cells(geom, origin, end, [&](const CellIndex& c) {
        if (raster.occupied(c)) {
            hit = t_entry;
            return false;
        }
        // Entry distance of the next cell = exit distance of this one.
        double tx = std::numeric_limits<double>::infinity();
        double ty = tx;
        if (ux != 0.0) {
            const double bx = corner.x + (c.x + (ux > 0.0 ? 1 : 0)) * geom.resolution;
            tx = (bx - origin.x) / ux;
        }
        if (uy != 0.0) {
            const double by = corner.y + (c.y + (uy > 0.0 ? 1 : 0)) * geom.resolution;
            ty = (by - origin.y) / uy;
        }
        t_entry = std::min(tx, ty);
        return true;
    });
    return hit;
}

}  // namespace tgm
