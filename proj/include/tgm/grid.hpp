#ifndef TGM_GRID_HPP
#define TGM_GRID_HPP

#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

namespace tgm {

inline constexpr double kPi = 3.14159265358979323846;

/// Wraps an angle to (-pi, pi].
inline double wrap_angle(double a) {
    a = std::fmod(a + kPi, 2.0 * kPi);
    if (a <= 0.0) a += 2.0 * kPi;
    return a - kPi;
}

struct CellIndex {
    int x = 0;
    int y = 0;

    bool operator==(const CellIndex&) const = default;
};

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

/// Regular 2D grid. `origin` is the world position of the CENTER of cell
/// (0,0); cell (i,j) is the half-open square of side `resolution` centered
/// at origin + (i,j)*resolution.
struct GridGeometry {
    double origin_x = 0.0;
    double origin_y = 0.0;
    double resolution = 0.0;  // meters per cell, > 0
    int width = 0;            // cells, >= 1
    int height = 0;           // cells, >= 1

    GridGeometry() = default;
    GridGeometry(double ox, double oy, double res, int w, int h);

    int cell_count() const { return width * height; }
    bool contains(const CellIndex& c) const {
        return c.x >= 0 && c.x < width && c.y >= 0 && c.y < height;
    }
    int index_of(const CellIndex& c) const { return c.y * width + c.x; }

    Vec2 cell_center(const CellIndex& c) const {
        return {origin_x + c.x * resolution, origin_y + c.y * resolution};
    }
    /// World coordinate of the low corner of cell (0,0); the grid spans
    /// [min, min + extent) on each axis.
    Vec2 min_corner() const {
        return {origin_x - 0.5 * resolution, origin_y - 0.5 * resolution};
    }
};

/// Cell index containing `point`, or nullopt when the point lies outside
/// the grid extent.
std::optional<CellIndex> world_to_cell(const GridGeometry& geom, const Vec2& point);

/// Per-cell posterior over {static, dynamic, free}; p_free is the simplex
/// remainder 1 - p_static - p_dynamic.
struct CellBelief {
    double p_static = 0.0;
    double p_dynamic = 0.0;

    double p_free() const { return 1.0 - p_static - p_dynamic; }
    bool valid(double tol = 1e-9) const {
        return p_static >= -1e-12 && p_dynamic >= -1e-12 &&
               p_static + p_dynamic <= 1.0 + tol;
    }
};

/// Two co-registered belief layers over one grid. Layers are dense
/// row-major scalar fields so the prediction step can sweep them whole.
struct TgmMap {
    GridGeometry geometry;
    std::vector<double> static_layer;   // p_static per cell
    std::vector<double> dynamic_layer;  // p_dynamic per cell
    double prior_static = 0.0;
    double prior_dynamic = 0.0;

    CellBelief belief_at(const CellIndex& c) const {
        const int i = geometry.index_of(c);
        return {static_layer[i], dynamic_layer[i]};
    }
    void set_belief(const CellIndex& c, const CellBelief& b) {
        const int i = geometry.index_of(c);
        static_layer[i] = b.p_static;
        dynamic_layer[i] = b.p_dynamic;
    }
};

/// Map with every cell at the given priors. Throws std::invalid_argument
/// when the priors violate the probability simplex.
TgmMap new_map(const GridGeometry& geom, double prior_static, double prior_dynamic);

struct Pose2D {
    double x = 0.0;
    double y = 0.0;
    double theta = 0.0;  // radians, (-pi, pi]

    Pose2D() = default;
    Pose2D(double px, double py, double ptheta) : x(px), y(py), theta(wrap_angle(ptheta)) {}

    /// Sensor-frame point -> world frame.
    Vec2 transform(const Vec2& p) const {
        const double c = std::cos(theta), s = std::sin(theta);
        return {x + c * p.x - s * p.y, y + s * p.x + c * p.y};
    }
};

struct Beam {
    double bearing = 0.0;  // radians, sensor frame
    double range = 0.0;    // meters
    bool is_max_range = false;
};

/// One revolution of range returns, bearings strictly increasing.
struct Scan {
    std::vector<Beam> beams;
    double max_range = 0.0;

    Vec2 endpoint_sensor_frame(std::size_t k) const {
        const Beam& b = beams[k];
        return {b.range * std::cos(b.bearing), b.range * std::sin(b.bearing)};
    }
};

}  // namespace tgm

#endif  // TGM_GRID_HPP
