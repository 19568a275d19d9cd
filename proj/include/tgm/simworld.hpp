#ifndef TGM_SIMWORLD_HPP
#define TGM_SIMWORLD_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "tgm/grid.hpp"
#include "tgm/raycast.hpp"

namespace tgm {

struct SensorSpec {
    int beam_count = 360;
    double fov_rad = 2.0 * kPi;
    double max_range_m = 100.0;
    double noise_sigma_m = 0.0;
    double rate_hz = 10.0;
};

struct Waypoint {
    double t = 0.0;
    double x = 0.0;
    double y = 0.0;
};

struct PoseWaypoint {
    double t = 0.0;
    double x = 0.0;
    double y = 0.0;
    double theta = 0.0;
};

/// Axis-aligned rectangle in world coordinates.
struct WorldRect {
    double x0 = 0.0, y0 = 0.0, x1 = 0.0, y1 = 0.0;
};

/// Thin wall along a segment; rasterizes to the cells the segment crosses.
struct WallSegment {
    Vec2 a, b;
};

/// Rectangular footprint following a waypoint schedule (piecewise-linear,
/// holding position before the first and after the last waypoint).
struct MovingObstacle {
    double half_x = 0.5;
    double half_y = 0.5;
    std::vector<Waypoint> waypoints;

    Vec2 position(double t) const;
};

struct WorldSpec {
    GridGeometry grid;
    double duration_s = 0.0;
    SensorSpec sensor;
    std::vector<PoseWaypoint> ego;
    std::vector<WorldRect> static_rects;
    std::vector<WallSegment> walls;
    std::vector<MovingObstacle> obstacles;
    double v_max_mps = 0.0;  // bound on obstacle speed, matches the filter kernel

    double dt() const { return 1.0 / sensor.rate_hz; }
    int frame_count() const { return static_cast<int>(duration_s * sensor.rate_hz) + 1; }
    Pose2D ego_pose(double t) const;
};

/// Ground truth + measurement for one tick. truth_static and truth_dynamic
/// are disjoint boolean rasters over the scenario grid.
struct Frame {
    double time = 0.0;
    Pose2D ego_pose_truth;
    Scan scan;
    std::vector<std::uint8_t> truth_static;
    std::vector<std::uint8_t> truth_dynamic;
};

/// Deterministic synthetic world: obstacles advance along their schedules,
/// rays are cast against the rasterized static-plus-dynamic geometry, and
/// hit ranges get zero-mean Gaussian noise. Construction validates the
/// spec (positive durations, speeds within v_max, obstacles clear of
/// static geometry and of the ego at every tick) and throws
/// std::invalid_argument on violations.
class Simulator {
public:
    Simulator(WorldSpec spec, std::uint64_t seed);

    int frame_count() const { return spec_.frame_count(); }
    const WorldSpec& spec() const { return spec_; }
    const std::vector<std::uint8_t>& static_raster() const { return static_raster_.cells; }

    /// Frame k is a pure function of (spec, seed, k).
    Frame frame(int k) const;

    std::vector<std::uint8_t> dynamic_raster(double t) const;

private:
    WorldSpec spec_;
    std::uint64_t seed_ = 0;
    OccupancyRaster static_raster_;
};

void rasterize_rect(const GridGeometry& geom, const WorldRect& rect,
                    std::vector<std::uint8_t>& cells);

/// Filter parameters carried alongside the world description.
struct FilterParams {
    double prior_static = 0.3;
    double prior_dynamic = 0.3;
    double v_max_mps = 2.5;
    double static_limits[2] = {0.0, 0.95};
    double dynamic_limits[2] = {0.05, 1.0};
    double cogm_clamp[2] = {0.05, 0.95};
    double p_hit_occupied = 0.8;
    double p_miss_free = 0.7;
};

struct Scenario {
    std::string name;
    WorldSpec world;
    FilterParams filter;
    double event_time_s = 0.0;  // when the world changes (movers depart)
};

struct TrafficLightParams {
    double resolution = 0.2;
    double duration_s = 60.0;
    double stationary_s = 40.0;
    double sensor_range_m = 100.0;
    int beam_count = 360;
    double noise_sigma_m = 0.02;
    int obstacle_count = 2;  // 0 gives a pure static world
    bool ego_motion = false;
    double ego_speed_mps = 1.0;
    double v_max_mps = 2.5;
};

/// Stopped ego with one vehicle ahead and one behind; both hold position
/// for `stationary_s`, then drive off.
Scenario scenario_traffic_light(const TrafficLightParams& params = {});

struct IntersectionParams {
    double resolution = 0.2;
    double duration_s = 60.0;
    double stationary_s = 30.0;
    double sensor_range_m = 25.0;
    int beam_count = 360;
    double noise_sigma_m = 0.02;
    bool arrivals = true;  // cars drive in during the opening seconds
    double v_max_mps = 2.5;
};

/// Ego surrounded by four cars and a tram; everything starts moving east
/// at once after `stationary_s`. Buildings sit only near the map edges.
Scenario scenario_intersection(const IntersectionParams& params = {});

}  // namespace tgm

#endif  // TGM_SIMWORLD_HPP
