#include <doctest.h>

#include <stdexcept>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "tgm/harness.hpp"
#include "tgm/ogm.hpp"

using namespace tgm;
namespace fs = std::filesystem;

namespace {

Scenario mini_scenario() {
    TrafficLightParams params;
    params.duration_s = 6.0;
    params.stationary_s = 4.0;
    params.beam_count = 90;
    return scenario_traffic_light(params);
}

RunConfig mini_config(MapperKind mapper, const std::string& out = "") {
    RunConfig config;
    config.scenario = mini_scenario();
    config.mapper = mapper;
    config.seed = 5;
    config.out_dir = out;
    return config;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("run produces metrics and artifacts") {
    const fs::path out = fs::temp_directory_path() / "tgm_harness_test_run";
    fs::remove_all(out);

    RunConfig config = mini_config(MapperKind::kTgm, out.string());
    config.snapshot_times_s = {2.0};
    const RunMetrics m = run(config);

    CHECK(m.frames == 61);
    CHECK(m.observed_cells > 1000);
    CHECK(m.static_accuracy > 0.5);
    CHECK(m.pose_rmse_m == 0.0);  // ground-truth pose mode
    CHECK(static_cast<int>(m.time_s.size()) == m.frames);

    CHECK(fs::exists(out / "poses.csv"));
    CHECK(fs::exists(out / "map_final.ppm"));
    CHECK(fs::exists(out / "map_t00002.0.ppm"));
    CHECK(fs::exists(out / "summary.txt"));

    const std::string csv = slurp(out / "poses.csv");
    CHECK(csv.rfind("t,truth_x,truth_y,truth_theta,est_x,est_y,est_theta\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == m.frames + 1);

    const std::string summary = slurp(out / "summary.txt");
    CHECK(summary.find("trace_count:") != std::string::npos);
    CHECK(summary.find("mapper: tgm") != std::string::npos);

    fs::remove_all(out);
}

TEST_CASE("identical config and seed give byte-identical artifacts") {
    const fs::path out_a = fs::temp_directory_path() / "tgm_harness_det_a";
    const fs::path out_b = fs::temp_directory_path() / "tgm_harness_det_b";
    fs::remove_all(out_a);
    fs::remove_all(out_b);

    RunConfig a = mini_config(MapperKind::kTgm, out_a.string());
    RunConfig b = mini_config(MapperKind::kTgm, out_b.string());
    run(a);
    run(b);
    CHECK(slurp(out_a / "poses.csv") == slurp(out_b / "poses.csv"));
    CHECK(slurp(out_a / "map_final.ppm") == slurp(out_b / "map_final.ppm"));

    fs::remove_all(out_a);
    fs::remove_all(out_b);
}

TEST_CASE("the sensor range override reaches the simulator") {
    RunConfig config = mini_config(MapperKind::kTgm);
    config.sensor_range_m = 3.0;
    const RunMetrics near = run(config);
    const RunMetrics far = run(mini_config(MapperKind::kTgm));
    CHECK(near.observed_cells < far.observed_cells);
}

TEST_CASE("compare tabulates mappers on a shared scenario") {
    std::vector<RunConfig> configs = {mini_config(MapperKind::kTgm),
                                      mini_config(MapperKind::kOgm),
                                      mini_config(MapperKind::kCogm)};
    const Comparison cmp = compare(configs);
    REQUIRE(cmp.rows.size() == 3);
    CHECK(cmp.rows[0].mapper == "tgm");
    CHECK(cmp.rows[1].mapper == "ogm");
    CHECK(cmp.rows[2].mapper == "cogm");
    CHECK(cmp.table.find("tgm") != std::string::npos);
    CHECK(cmp.table.find("trace_count") != std::string::npos);
}

TEST_CASE("compare rejects mismatched or singleton configurations") {
    CHECK_THROWS_AS(compare({mini_config(MapperKind::kTgm)}), std::invalid_argument);

    RunConfig other_seed = mini_config(MapperKind::kOgm);
    other_seed.seed = 99;
    CHECK_THROWS_AS(compare({mini_config(MapperKind::kTgm), other_seed}),
                    std::invalid_argument);
}

TEST_CASE("identical configs produce identical comparison rows") {
    const Comparison cmp =
        compare({mini_config(MapperKind::kTgm), mini_config(MapperKind::kTgm)});
    REQUIRE(cmp.rows.size() == 2);
    CHECK(cmp.rows[0].metrics.trace_count == cmp.rows[1].metrics.trace_count);
    CHECK(cmp.rows[0].metrics.static_accuracy == cmp.rows[1].metrics.static_accuracy);
    CHECK(cmp.rows[0].metrics.observed_cells == cmp.rows[1].metrics.observed_cells);
}

TEST_CASE("mapper names round trip") {
    CHECK(mapper_from_name("tgm") == MapperKind::kTgm);
    CHECK(mapper_from_name("ogm") == MapperKind::kOgm);
    CHECK(mapper_from_name("cogm") == MapperKind::kCogm);
    CHECK(mapper_from_name("c-ogm") == MapperKind::kCogm);
    CHECK(!mapper_from_name("bogus").has_value());
    CHECK(mapper_name(MapperKind::kCogm) == "cogm");
}

TEST_CASE("tgm and ogm agree on a purely static world") {
    TrafficLightParams params;
    params.obstacle_count = 0;
    params.duration_s = 8.0;
    params.beam_count = 180;
    const Scenario sc = scenario_traffic_light(params);
    const Simulator sim(sc.world, 17);
    const GridGeometry& geom = sc.world.grid;

    TgmMap tgm_map = new_map(geom, 0.3, 0.3);
    OgmMap ogm_map = new_ogm(geom);
    const TransitionKernel kernel = uniform_disk_kernel(2.5, sc.world.dt(), geom.resolution);
    const InverseSensorModel ism;
    std::vector<int> observations(static_cast<std::size_t>(geom.cell_count()), 0);

    for (int k = 0; k < sim.frame_count(); ++k) {
        const Frame f = sim.frame(k);
        tgm_map = step(tgm_map, f.scan, f.ego_pose_truth, kernel, ism,
                       SaturationLimits::tgm_default());
        ogm_step(ogm_map, f.scan, f.ego_pose_truth, ism);
        const ScanClassification cls = classify_scan(geom, f.scan, f.ego_pose_truth);
        for (int i : cls.free_cells) ++observations[i];
        for (int i : cls.hit_cells) ++observations[i];
    }

    int checked = 0, agreements = 0;
    for (int i = 0; i < geom.cell_count(); ++i) {
        if (observations[i] < 5) continue;
        ++checked;
        const bool tgm_occupied = tgm_map.static_layer[i] > 0.5;
        const bool ogm_occupied = ogm_map.probability_at(i) > 0.5;
        if (tgm_occupied == ogm_occupied) ++agreements;
    }
    CHECK(checked > 500);
    CHECK(agreements == checked);
}
