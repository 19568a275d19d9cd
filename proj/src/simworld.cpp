#include "tgm/simworld.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace tgm {

namespace {

double interpolate(double a, double b, double f) { return a + (b - a) * f; }

constexpr double kMinHitRange = 1e-3;

}  // namespace

Vec2 MovingObstacle::position(double t) const {
    if (waypoints.empty()) return {0.0, 0.0};
    if (t <= waypoints.front().t) return {waypoints.front().x, waypoints.front().y};
    for (std::size_t i = 1; i < waypoints.size(); ++i) {
        if (t <= waypoints[i].t) {
            const Waypoint& a = waypoints[i - 1];
            const Waypoint& b = waypoints[i];
            const double span = b.t - a.t;
            const double f = span > 0.0 ? (t - a.t) / span : 1.0;
            return {interpolate(a.x, b.x, f), interpolate(a.y, b.y, f)};
        }
    }
    return {waypoints.back().x, waypoints.back().y};
}

Pose2D WorldSpec::ego_pose(double t) const {
    if (ego.empty()) return {};
    if (t <= ego.front().t) return {ego.front().x, ego.front().y, ego.front().theta};
    for (std::size_t i = 1; i < ego.size(); ++i) {
        if (t <= ego[i].t) {
            const PoseWaypoint& a = ego[i - 1];
            const PoseWaypoint& b = ego[i];
            const double span = b.t - a.t;
            const double f = span > 0.0 ? (t - a.t) / span : 1.0;
            return {interpolate(a.x, b.x, f), interpolate(a.y, b.y, f),
                    a.theta + f * wrap_angle(b.theta - a.theta)};
        }
    }
    return {ego.back().x, ego.back().y, ego.back().theta};
}

void rasterize_rect(const GridGeometry& geom, const WorldRect& rect,
                    std::vector<std::uint8_t>& cells) {
    // A cell belongs to the rectangle when its center does.
    const int x0 = std::max(0, static_cast<int>(
                                   std::ceil((rect.x0 - geom.origin_x) / geom.resolution)));
    const int x1 = std::min(geom.width - 1, static_cast<int>(std::floor(
                                                (rect.x1 - geom.origin_x) / geom.resolution)));
    const int y0 = std::max(0, static_cast<int>(
                                   std::ceil((rect.y0 - geom.origin_y) / geom.resolution)));
    const int y1 = std::min(geom.height - 1, static_cast<int>(std::floor(
                                                 (rect.y1 - geom.origin_y) / geom.resolution)));
    for (int y = y0; y <= y1; ++y)
        for (int x = x0; x <= x1; ++x) cells[y * geom.width + x] = 1;
}

namespace {

void rasterize_wall(const GridGeometry& geom, const WallSegment& wall,
                    std::vector<std::uint8_t>& cells) {
    // Clip-free: walls are expected to start inside the grid.
    traverse_cells(geom, wall.a, wall.b, [&](const CellIndex& c) {
        cells[geom.index_of(c)] = 1;
        return true;
    });
}

std::vector<std::uint8_t> obstacle_raster(const GridGeometry& geom,
                                          const std::vector<MovingObstacle>& obstacles,
                                          double t) {
    std::vector<std::uint8_t> cells(static_cast<std::size_t>(geom.cell_count()), 0);
    for (const MovingObstacle& ob : obstacles) {
        const Vec2 p = ob.position(t);
        rasterize_rect(geom, {p.x - ob.half_x, p.y - ob.half_y, p.x + ob.half_x, p.y + ob.half_y},
                       cells);
    }
    return cells;
}

void validate_spec(const WorldSpec& spec, const OccupancyRaster& static_raster) {
    if (!(spec.duration_s > 0.0)) throw std::invalid_argument("WorldSpec: duration must be > 0");
    if (spec.sensor.beam_count < 1 || !(spec.sensor.max_range_m > 0.0) ||
        !(spec.sensor.fov_rad > 0.0) || !(spec.sensor.rate_hz > 0.0) ||
        spec.sensor.noise_sigma_m < 0.0)
        throw std::invalid_argument("WorldSpec: invalid sensor");
    if (spec.ego.empty()) throw std::invalid_argument("WorldSpec: ego schedule is empty");

    for (const MovingObstacle& ob : spec.obstacles) {
        if (ob.waypoints.empty())
            throw std::invalid_argument("WorldSpec: obstacle without waypoints");
        for (std::size_t i = 1; i < ob.waypoints.size(); ++i) {
            const Waypoint& a = ob.waypoints[i - 1];
            const Waypoint& b = ob.waypoints[i];
            if (b.t < a.t) throw std::invalid_argument("WorldSpec: waypoint times must not decrease");
            const double dist = std::hypot(b.x - a.x, b.y - a.y);
            if (dist > 0.0) {
                const double span = b.t - a.t;
                if (span <= 0.0 || dist / span > spec.v_max_mps + 1e-9)
                    throw std::invalid_argument("WorldSpec: obstacle segment exceeds v_max");
            }
        }
    }

    // Tick-wise invariants: obstacles clear of static geometry, ego pose
    // inside the grid and outside all occupied cells.
    const GridGeometry& geom = spec.grid;
    const int frames = spec.frame_count();
    for (int k = 0; k < frames; ++k) {
        const double t = k * spec.dt();
        const std::vector<std::uint8_t> dyn = obstacle_raster(geom, spec.obstacles, t);
        for (int i = 0; i < geom.cell_count(); ++i) {
            if (dyn[i] && static_raster.cells[i])
                throw std::invalid_argument("WorldSpec: obstacle overlaps static geometry");
        }
        const Pose2D ego = spec.ego_pose(t);
        const auto cell = world_to_cell(geom, {ego.x, ego.y});
        if (!cell) throw std::invalid_argument("WorldSpec: ego leaves the grid");
        const int ci = geom.index_of(*cell);
        if (static_raster.cells[ci] || dyn[ci])
            throw std::invalid_argument("WorldSpec: ego inside occupied cell");
    }
}

}  // namespace

Simulator::Simulator(WorldSpec spec, std::uint64_t seed) : spec_(std::move(spec)), seed_(seed) {
    static_raster_.geometry = spec_.grid;
    static_raster_.cells.assign(static_cast<std::size_t>(spec_.grid.cell_count()), 0);
    for (const WorldRect& r : spec_.static_rects)
        rasterize_rect(spec_.grid, r, static_raster_.cells);
    for (const WallSegment& w : spec_.walls) rasterize_wall(spec_.grid, w, static_raster_.cells);
    validate_spec(spec_, static_raster_);
}

std::vector<std::uint8_t> Simulator::dynamic_raster(double t) const {
    return obstacle_raster(spec_.grid, spec_.obstacles, t);
}

Frame Simulator::frame(int k) const {
    Frame f;
    f.time = k * spec_.dt();
    f.ego_pose_truth = spec_.ego_pose(f.time);
    f.truth_static = static_raster_.cells;
    f.truth_dynamic = dynamic_raster(f.time);

    OccupancyRaster world;
    world.geometry = spec_.grid;
    world.cells = f.truth_static;
    for (std::size_t i = 0; i < world.cells.size(); ++i)
        if (f.truth_dynamic[i]) world.cells[i] = 1;

    // Per-frame generator keeps frames independent of evaluation order.
    std::mt19937_64 rng(seed_ + 0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(k + 1));
    std::normal_distribution<double> noise(0.0, spec_.sensor.noise_sigma_m);

    const SensorSpec& sensor = spec_.sensor;
    const bool full_circle = sensor.fov_rad >= 2.0 * kPi - 1e-9;
    f.scan.max_range = sensor.max_range_m;
    f.scan.beams.reserve(static_cast<std::size_t>(sensor.beam_count));
    for (int b = 0; b < sensor.beam_count; ++b) {
        double bearing;
        if (full_circle)
            bearing = -kPi + (2.0 * kPi * b) / sensor.beam_count;
        else if (sensor.beam_count == 1)
            bearing = 0.0;
        else
            bearing = -0.5 * sensor.fov_rad +
                      sensor.fov_rad * b / (sensor.beam_count - 1);

        const double world_angle = f.ego_pose_truth.theta + bearing;
        const auto hit = cast_ray(world, {f.ego_pose_truth.x, f.ego_pose_truth.y}, world_angle,
                                  sensor.max_range_m);
        Beam beam;
        beam.bearing = bearing;
        if (hit) {
            // Ranges refer to the center of the struck cell along the ray
            // (entry distance plus half a cell), so endpoints of repeated
            // observations pile up where the map stores the hit.
            double range = *hit + 0.5 * spec_.grid.resolution;
            if (sensor.noise_sigma_m > 0.0) range += noise(rng);
            beam.range = std::clamp(range, kMinHitRange, sensor.max_range_m);
            beam.is_max_range = false;
        } else {
            beam.range = sensor.max_range_m;
            beam.is_max_range = true;
        }
        f.scan.beams.push_back(beam);
    }
    return f;
}

Scenario scenario_traffic_light(const TrafficLightParams& p) {
    Scenario sc;
    sc.name = "traffic_light";
    sc.event_time_s = p.stationary_s;

    WorldSpec& w = sc.world;
    w.grid = GridGeometry(0.0, 0.0, p.resolution,
                          static_cast<int>(std::lround(30.0 / p.resolution)),
                          static_cast<int>(std::lround(20.0 / p.resolution)));
    w.duration_s = p.duration_s;
    w.sensor = {p.beam_count, 2.0 * kPi, p.sensor_range_m, p.noise_sigma_m, 10.0};
    w.v_max_mps = p.v_max_mps;

    if (p.ego_motion) {
        const double travel = std::min(p.duration_s * p.ego_speed_mps, 18.0);
        w.ego = {{0.0, 6.0, 10.0, 0.0}, {travel / p.ego_speed_mps, 6.0 + travel, 10.0, 0.0}};
    } else {
        w.ego = {{0.0, 15.0, 10.0, 0.0}};
    }

    // Two buildings off the lane plus three partial boundary walls.
    w.static_rects = {{8.0, 3.0, 12.0, 5.5}, {18.0, 14.5, 22.0, 17.0}};
    w.walls = {{{2.0, 2.0}, {13.0, 2.0}},
               {{17.0, 18.0}, {28.0, 18.0}},
               {{2.0, 4.0}, {2.0, 16.0}}};

    const double t1 = p.stationary_s;
    if (p.obstacle_count >= 1) {
        MovingObstacle front;
        front.half_x = 1.0;
        front.half_y = 1.0;
        front.waypoints = {{0.0, 19.0, 10.0}, {t1, 19.0, 10.0}, {t1 + 4.25, 27.5, 10.0}};
        w.obstacles.push_back(front);
    }
    if (p.obstacle_count >= 2) {
        MovingObstacle rear;
        rear.half_x = 1.0;
        rear.half_y = 1.0;
        // Pulls out into the passing lane, overtakes, parks ahead.
        rear.waypoints = {{0.0, 11.0, 10.0},
                          {t1, 11.0, 10.0},
                          {t1 + 1.2, 12.0, 12.0},
                          {t1 + 8.2, 26.0, 12.0}};
        w.obstacles.push_back(rear);
    }

    sc.filter.v_max_mps = p.v_max_mps;
    return sc;
}

Scenario scenario_intersection(const IntersectionParams& p) {
    Scenario sc;
    sc.name = "intersection";
    sc.event_time_s = p.stationary_s;

    WorldSpec& w = sc.world;
    const int cells = static_cast<int>(std::lround(44.0 / p.resolution));
    w.grid = GridGeometry(0.0, 0.0, p.resolution, cells, cells);
    w.duration_s = p.duration_s;
    w.sensor = {p.beam_count, 2.0 * kPi, p.sensor_range_m, p.noise_sigma_m, 10.0};
    w.v_max_mps = p.v_max_mps;
    w.ego = {{0.0, 22.0, 22.0, 0.0}};

    // Buildings hug the map edges; the east side keeps a wide road gap.
    w.static_rects = {{5.0, 39.0, 17.0, 42.0},  {23.0, 39.0, 39.0, 42.0},
                      {5.0, 2.0, 19.0, 5.0},    {25.0, 2.0, 39.0, 5.0},
                      {2.0, 7.0, 5.0, 19.0},    {2.0, 25.0, 5.0, 37.0},
                      {39.0, 7.0, 42.0, 13.0},  {39.0, 31.0, 42.0, 37.0}};

    const double t1 = p.stationary_s;
    const auto car = [&](double park_x, double park_y, double from_x, double from_y,
                         double arrive_start, double move_dist) {
        MovingObstacle c;
        c.half_x = 1.0;
        c.half_y = 1.0;
        const double arrive_span = std::hypot(park_x - from_x, park_y - from_y) / 2.0;
        if (p.arrivals && arrive_start + arrive_span < t1) {
            c.waypoints = {{arrive_start, from_x, from_y},
                           {arrive_start + arrive_span, park_x, park_y},
                           {t1, park_x, park_y},
                           {t1 + move_dist / 2.0, park_x + move_dist, park_y}};
        } else {
            c.waypoints = {{0.0, park_x, park_y},
                           {t1, park_x, park_y},
                           {t1 + move_dist / 2.0, park_x + move_dist, park_y}};
        }
        return c;
    };

    MovingObstacle tram;  // already stopped when the run starts
    tram.half_x = 5.0;
    tram.half_y = 1.0;
    tram.waypoints = {{0.0, 22.0, 26.5}, {t1, 22.0, 26.5}, {t1 + 6.0, 34.0, 26.5}};
    w.obstacles.push_back(tram);

    w.obstacles.push_back(car(18.0, 18.0, 6.5, 18.0, 2.0, 12.0));    // west, behind-left
    w.obstacles.push_back(car(26.0, 18.0, 26.0, 6.5, 3.0, 12.0));    // from the south
    w.obstacles.push_back(car(26.0, 22.0, 38.0, 22.0, 4.0, 12.0));   // ahead on the road
    w.obstacles.push_back(car(22.0, 18.0, 22.0, 6.5, 2.5, 12.0));    // directly behind

    sc.filter.v_max_mps = p.v_max_mps;
    return sc;
}

}  // namespace tgm
