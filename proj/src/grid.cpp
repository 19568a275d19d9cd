#include "tgm/grid.hpp"

#include <stdexcept>

namespace tgm {

GridGeometry::GridGeometry(double ox, double oy, double res, int w, int h)
    : origin_x(ox), origin_y(oy), resolution(res), width(w), height(h) {
    if (!(res > 0.0))
        throw std::invalid_argument("GridGeometry: resolution must be > 0");
    if (w < 1 || h < 1)
        throw std::invalid_argument("GridGeometry: width and height must be >= 1");
}

std::optional<CellIndex> world_to_cell(const GridGeometry& geom, const Vec2& point) {
    // Cell centers sit on the integer lattice of (point - origin)/resolution.
    const int ix = static_cast<int>(std::floor((point.x - geom.origin_x) / geom.resolution + 0.5));
    const int iy = static_cast<int>(std::floor((point.y - geom.origin_y) / geom.resolution + 0.5));
    const CellIndex c{ix, iy};
    if (!geom.contains(c)) return std::nullopt;
    return c;
}

TgmMap new_map(const GridGeometry& geom, double prior_static, double prior_dynamic) {
    if (prior_static < 0.0 || prior_static > 1.0 || prior_dynamic < 0.0 || prior_dynamic > 1.0)
        throw std::invalid_argument("new_map: priors must lie in [0, 1]");
    if (prior_static + prior_dynamic > 1.0)
        throw std::invalid_argument("new_map: prior_static + prior_dynamic must not exceed 1");

    TgmMap map;
    map.geometry = geom;
    map.static_layer.assign(static_cast<std::size_t>(geom.cell_count()), prior_static);
    map.dynamic_layer.assign(static_cast<std::size_t>(geom.cell_count()), prior_dynamic);
    map.prior_static = prior_static;
    map.prior_dynamic = prior_dynamic;
    return map;
}

}  // namespace tgm
