// Acceptance suite: end-to-end checks at the tolerances the library
// promises. Each criterion prints one PASS/FAIL line; the process exits
// nonzero if any fail.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "tgm/harness.hpp"
#include "tgm/ogm.hpp"
#include "tgm/predict.hpp"
#include "tgm/raycast.hpp"
#include "tgm/scan_matcher.hpp"

using namespace tgm;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

TgmMap random_map(std::mt19937& rng, int width, int height) {
    TgmMap map = new_map(GridGeometry(0.0, 0.0, 1.0, width, height), 0.0, 0.0);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < width * height; ++i) {
        const double s = u(rng);
        map.static_layer[i] = s;
        map.dynamic_layer[i] = u(rng) * (1.0 - s);
    }
    return map;
}

TransitionKernel random_kernel(std::mt19937& rng, int radius) {
    TransitionKernel k;
    k.radius_cells = radius;
    const int side = k.side();
    k.weights.assign(static_cast<std::size_t>(side) * side, 0.0);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double sum = 0.0;
    for (double& w : k.weights) sum += (w = u(rng));
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

// --- criterion 1 -----------------------------------------------------------

bool oracle_equivalence(std::string& detail) {
    const auto t0 = Clock::now();
    std::mt19937 rng(2024);
    std::uniform_int_distribution<int> size(4, 32);
    std::uniform_int_distribution<int> radius(0, 3);
    std::uniform_real_distribution<double> speed(0.0, 7.0);

    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const TgmMap map = random_map(rng, size(rng), size(rng));
        const TransitionKernel kernel = (trial % 2 == 0)
                                            ? random_kernel(rng, radius(rng))
                                            : uniform_disk_kernel(speed(rng), 0.1, 0.2);
        const Prediction fast = predict(map, kernel);
        const Prediction ref = predict_bruteforce(map, kernel);
        for (std::size_t i = 0; i < fast.dynamic_layer.size(); ++i)
            worst = std::max(worst, std::fabs(fast.dynamic_layer[i] - ref.dynamic_layer[i]));
    }
    const double elapsed = seconds_since(t0);
    char buf[128];
    std::snprintf(buf, sizeof(buf), "max |diff| %.3g over 100 pairs, %.2f s", worst, elapsed);
    detail = buf;
    return worst <= 1e-12 && elapsed < 10.0;
}

// --- criterion 2 -----------------------------------------------------------

bool mass_conservation(std::string& detail) {
    std::mt19937 rng(77);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::uniform_int_distribution<int> size(16, 48);
    std::uniform_real_distribution<double> speed(2.0, 7.0);

    double worst = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        const TransitionKernel kernel = uniform_disk_kernel(speed(rng), 0.1, 0.2);
        const int r = kernel.radius_cells;
        const int w = size(rng), h = size(rng);
        TgmMap map = new_map(GridGeometry(0, 0, 0.2, w, h), 0.0, 0.0);
        double before = 0.0;
        for (int y = 0; y < h; ++y) {
            for (int x = 0; x < w; ++x) {
                const double s = u(rng);
                map.static_layer[y * w + x] = s;
                if (x >= r && x < w - r && y >= r && y < h - r) {
                    map.dynamic_layer[y * w + x] = u(rng) * (1.0 - s);
                    before += map.dynamic_layer[y * w + x];
                }
            }
        }
        const Prediction p = predict(map, kernel);
        double after = 0.0;
        for (double v : p.dynamic_layer) after += v;
        worst = std::max(worst, std::fabs(after - before));
    }
    char buf[96];
    std::snprintf(buf, sizeof(buf), "max |mass drift| %.3g over 50 instances", worst);
    detail = buf;
    return worst <= 1e-9;
}

// --- criterion 3 -----------------------------------------------------------

bool confinement_and_blocking(std::string& detail) {
    const TransitionKernel kernel = uniform_disk_kernel(4.0, 0.1, 0.2);  // d = 2
    TgmMap map = new_map(GridGeometry(0, 0, 0.2, 17, 17), 0.0, 0.0);
    map.dynamic_layer[map.geometry.index_of({8, 8})] = 1.0;
    for (int dy = -2; dy <= 2; ++dy)
        for (int dx = -2; dx <= 2; ++dx)
            if (!(dx == 0 && dy == 0) && kernel.weight(dx, dy) > 0.0)
                map.static_layer[map.geometry.index_of({8 + dx, 8 + dy})] = 1.0;

    const Prediction p = predict(map, kernel);
    const double kept = p.dynamic_layer[map.geometry.index_of({8, 8})];
    bool ring_clean = true;
    for (int dy = -2; dy <= 2; ++dy)
        for (int dx = -2; dx <= 2; ++dx)
            if (!(dx == 0 && dy == 0) && kernel.weight(dx, dy) > 0.0)
                ring_clean &= p.dynamic_layer[map.geometry.index_of({8 + dx, 8 + dy})] == 0.0;

    // No certainly-static cell gains dynamic mass on random maps either.
    std::mt19937 rng(31);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    bool never_gains = true;
    for (int trial = 0; trial < 20; ++trial) {
        TgmMap m = random_map(rng, 20, 20);
        std::vector<int> pinned;
        for (int i = 0; i < 400; ++i)
            if (u(rng) < 0.25) {
                m.static_layer[i] = 1.0;
                m.dynamic_layer[i] = 0.0;
                pinned.push_back(i);
            }
        const Prediction q = predict(m, uniform_disk_kernel(4.0, 0.1, 0.2));
        for (int i : pinned) never_gains &= q.dynamic_layer[i] == 0.0;
    }

    char buf[96];
    std::snprintf(buf, sizeof(buf), "ringed cell keeps %.15f, ring clean %d, no gain %d", kept,
                  ring_clean, never_gains);
    detail = buf;
    return std::fabs(kept - 1.0) <= 1e-12 && ring_clean && never_gains;
}

// --- criterion 4 -----------------------------------------------------------

bool bayes_update_algebra(std::string& detail) {
    std::mt19937 rng(55);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const CellBelief prior{0.3, 0.3};

    double worst_identity = 0.0, worst_symmetry = 0.0, worst_norm = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        const double sx = u(rng);
        const CellBelief x{sx, u(rng) * (1.0 - sx)};
        const double sy = u(rng);
        const CellBelief y{sy, u(rng) * (1.0 - sy)};

        const CellBelief id1 = update_cell(x, prior, prior);
        const CellBelief id2 = update_cell(prior, y, prior);
        worst_identity = std::max({worst_identity, std::fabs(id1.p_static - x.p_static),
                                   std::fabs(id1.p_dynamic - x.p_dynamic),
                                   std::fabs(id2.p_static - y.p_static),
                                   std::fabs(id2.p_dynamic - y.p_dynamic)});

        const CellBelief ab = update_cell(x, y, prior);
        const CellBelief ba = update_cell(y, x, prior);
        worst_symmetry = std::max({worst_symmetry, std::fabs(ab.p_static - ba.p_static),
                                   std::fabs(ab.p_dynamic - ba.p_dynamic)});
        worst_norm = std::max(worst_norm,
                              std::fabs(ab.p_static + ab.p_dynamic + ab.p_free() - 1.0));
    }
    char buf[128];
    std::snprintf(buf, sizeof(buf), "identity %.3g, symmetry %.3g, normalization %.3g",
                  worst_identity, worst_symmetry, worst_norm);
    detail = buf;
    return worst_identity <= 1e-12 && worst_symmetry <= 1e-12 && worst_norm <= 1e-9;
}

// --- criterion 5 -----------------------------------------------------------

bool experiment_a(std::string& detail) {
    const auto t0 = Clock::now();
    const Scenario sc = scenario_traffic_light({});

    RunConfig tgm_config;
    tgm_config.scenario = sc;
    tgm_config.mapper = MapperKind::kTgm;
    tgm_config.seed = 1234;
    const RunMetrics tgm_metrics = run(tgm_config);

    RunConfig ogm_config = tgm_config;
    ogm_config.mapper = MapperKind::kOgm;
    const RunMetrics ogm_metrics = run(ogm_config);

    const double elapsed = seconds_since(t0);
    // Regression pin from the first verified run of this scenario/seed.
    const long pinned_ogm_traces = 22;
    char buf[200];
    std::snprintf(buf, sizeof(buf),
                  "tgm traces %ld (accuracy %.3f), ogm traces %ld (accuracy %.3f, pin %ld), %.1f s",
                  tgm_metrics.trace_count, tgm_metrics.static_accuracy, ogm_metrics.trace_count,
                  ogm_metrics.static_accuracy, pinned_ogm_traces, elapsed);
    detail = buf;
    return tgm_metrics.trace_count == 0 && ogm_metrics.trace_count >= 10 &&
           ogm_metrics.trace_count == pinned_ogm_traces && elapsed < 60.0;
}

// --- criterion 6 -----------------------------------------------------------

bool experiment_b(std::string& detail) {
    const auto t0 = Clock::now();
    const Scenario sc = scenario_intersection({});
    const double cell = sc.world.grid.resolution;

    RunConfig tgm_config;
    tgm_config.scenario = sc;
    tgm_config.mapper = MapperKind::kTgm;
    tgm_config.pose_mode = PoseMode::kSlam;
    tgm_config.seed = 4321;
    const RunMetrics tgm_metrics = run(tgm_config);

    RunConfig ogm_config = tgm_config;
    ogm_config.mapper = MapperKind::kOgm;
    const RunMetrics ogm_metrics = run(ogm_config);

    const double elapsed = seconds_since(t0);
    const double ratio = ogm_metrics.pose_rmse_after_event_m /
                         std::max(tgm_metrics.pose_rmse_after_event_m, 1e-9);
    char buf[200];
    std::snprintf(buf, sizeof(buf),
                  "tgm rmse %.3f m (after movers %.3f), ogm after movers %.3f, ratio %.1fx, %.1f s",
                  tgm_metrics.pose_rmse_m, tgm_metrics.pose_rmse_after_event_m,
                  ogm_metrics.pose_rmse_after_event_m, ratio, elapsed);
    detail = buf;
    return tgm_metrics.pose_rmse_m < 2.0 * cell && ratio >= 5.0 && elapsed < 120.0;
}

// --- criterion 7 -----------------------------------------------------------

bool performance_budget(std::string& detail) {
    // Full filter step: 512x512 grid, radius-10 kernel, 360-beam scan.
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const GridGeometry geom(0.0, 0.0, 0.2, 512, 512);
    TgmMap map = new_map(geom, 0.3, 0.3);
    for (int i = 0; i < geom.cell_count(); ++i) {
        const double s = u(rng) * 0.6;
        map.static_layer[i] = s;
        map.dynamic_layer[i] = u(rng) * (1.0 - s) * 0.5;
    }
    const TransitionKernel kernel = uniform_disk_kernel(20.0, 0.1, 0.2);  // radius 10
    const Pose2D pose{51.2, 51.2, 0.0};
    Scan scan;
    scan.max_range = 100.0;
    for (int b = 0; b < 360; ++b)
        scan.beams.push_back({-kPi + 2.0 * kPi * b / 360.0, 30.0, false});

    std::vector<double> step_times;
    for (int rep = 0; rep < 5; ++rep) {
        const auto t0 = Clock::now();
        TgmMap out = step(map, scan, pose, kernel, InverseSensorModel{},
                          SaturationLimits::tgm_default());
        step_times.push_back(seconds_since(t0) * 1000.0);
    }
    std::sort(step_times.begin(), step_times.end());
    const double step_ms = step_times[2];

    // Matcher on a 200-beam scan against a saturated room.
    const GridGeometry room(0.0, 0.0, 0.2, 60, 60);
    std::vector<double> field_values(static_cast<std::size_t>(room.cell_count()), 0.05);
    OccupancyRaster raster;
    raster.geometry = room;
    raster.cells.assign(field_values.size(), 0);
    for (int y = 0; y < 60; ++y)
        for (int x = 0; x < 60; ++x)
            if (x == 5 || x == 54 || y == 5 || y == 54) {
                field_values[y * 60 + x] = 0.95;
                raster.cells[y * 60 + x] = 1;
            }
    const SmoothStaticField field(room, field_values);
    const Pose2D truth{6.0, 6.0, 0.0};
    Scan match_scan;
    match_scan.max_range = 30.0;
    for (int b = 0; b < 200; ++b) {
        const double bearing = -kPi + 2.0 * kPi * b / 200.0;
        const auto hit = cast_ray(raster, {truth.x, truth.y}, bearing, 30.0);
        match_scan.beams.push_back(
            {bearing, hit ? *hit + 0.1 : 30.0, !hit.has_value()});
    }
    std::vector<double> match_times;
    for (int rep = 0; rep < 5; ++rep) {
        const auto t0 = Clock::now();
        match(match_scan, {truth.x + 0.1, truth.y - 0.1, 0.02}, field);
        match_times.push_back(seconds_since(t0) * 1000.0);
    }
    std::sort(match_times.begin(), match_times.end());
    const double match_ms = match_times[2];

    char buf[128];
    std::snprintf(buf, sizeof(buf), "step %.1f ms (budget 100), match %.2f ms (budget 15)",
                  step_ms, match_ms);
    detail = buf;
    return step_ms <= 100.0 && match_ms <= 15.0;
}

// --- criterion 8 -----------------------------------------------------------

bool matcher_recovery(std::string& detail) {
    TrafficLightParams params;
    params.obstacle_count = 0;
    params.noise_sigma_m = 0.0;
    params.duration_s = 5.0;
    const Scenario sc = scenario_traffic_light(params);
    const Simulator sim(sc.world, 7);

    TgmMap map = new_map(sc.world.grid, 0.3, 0.3);
    const TransitionKernel kernel = uniform_disk_kernel(2.5, sc.world.dt(), 0.2);
    for (int k = 0; k < sim.frame_count(); ++k) {
        const Frame f = sim.frame(k);
        map = step(map, f.scan, f.ego_pose_truth, kernel, InverseSensorModel{},
                   SaturationLimits::tgm_default());
    }
    const SmoothStaticField field = SmoothStaticField::from_static_layer(map);
    const Frame probe = sim.frame(sim.frame_count() - 1);
    const Pose2D truth = probe.ego_pose_truth;

    std::mt19937 rng(1717);
    std::uniform_real_distribution<double> dpos(-0.3, 0.3);
    std::uniform_real_distribution<double> dtheta(-0.05, 0.05);
    int recovered = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const Pose2D prior(truth.x + dpos(rng), truth.y + dpos(rng), truth.theta + dtheta(rng));
        const MatchResult r = match(probe.scan, prior, field);
        const double ex = r.pose.x - truth.x, ey = r.pose.y - truth.y;
        if (std::hypot(ex, ey) <= 0.01 && std::fabs(wrap_angle(r.pose.theta - truth.theta)) <= 0.001)
            ++recovered;
    }
    char buf[96];
    std::snprintf(buf, sizeof(buf), "%d/100 recoveries within 0.01 m / 0.001 rad", recovered);
    detail = buf;
    return recovered >= 95;
}

// --- criterion 9 -----------------------------------------------------------

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

bool determinism(std::string& detail) {
    TrafficLightParams params;
    params.duration_s = 8.0;
    params.stationary_s = 5.0;
    params.beam_count = 180;
    const Scenario sc = scenario_traffic_light(params);

    const fs::path base = fs::temp_directory_path() / "tgm_acceptance_det";
    fs::remove_all(base);
    RunConfig config;
    config.scenario = sc;
    config.mapper = MapperKind::kTgm;
    config.pose_mode = PoseMode::kSlam;
    config.seed = 99;
    config.snapshot_times_s = {4.0};

    config.out_dir = (base / "a").string();
    run(config);
    config.out_dir = (base / "b").string();
    run(config);

    const bool csv_equal = slurp(base / "a" / "poses.csv") == slurp(base / "b" / "poses.csv");
    const bool final_equal =
        slurp(base / "a" / "map_final.ppm") == slurp(base / "b" / "map_final.ppm");
    const bool snap_equal =
        slurp(base / "a" / "map_t00004.0.ppm") == slurp(base / "b" / "map_t00004.0.ppm");
    fs::remove_all(base);

    char buf[96];
    std::snprintf(buf, sizeof(buf), "csv %s, final image %s, snapshot %s",
                  csv_equal ? "identical" : "DIFFERS", final_equal ? "identical" : "DIFFERS",
                  snap_equal ? "identical" : "DIFFERS");
    detail = buf;
    return csv_equal && final_equal && snap_equal;
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        std::function<bool(std::string&)> check;
    };
    const std::vector<Criterion> criteria = {
        {"1 oracle equivalence (predict vs brute force, 1e-12)", oracle_equivalence},
        {"2 dynamic mass conservation (1e-9)", mass_conservation},
        {"3 confinement and blocking", confinement_and_blocking},
        {"4 Bayes update algebra (1e-12 / 1e-9)", bayes_update_algebra},
        {"5 experiment A: no traces for tgm, traces for ogm", experiment_a},
        {"6 experiment B: slam drift ordering", experiment_b},
        {"7 performance budget (step 100 ms, match 15 ms)", performance_budget},
        {"8 scan matcher pose recovery (95/100)", matcher_recovery},
        {"9 artifact determinism", determinism},
    };

    int failures = 0;
    for (const Criterion& c : criteria) {
        std::string detail;
        bool ok = false;
        try {
            ok = c.check(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        std::cout << (ok ? "[PASS] " : "[FAIL] ") << "criterion " << c.name << " — " << detail
                  << "\n";
        if (!ok) ++failures;
    }
    return failures == 0 ? 0 : 1;
}
