#include "tgm/harness.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "tgm/ogm.hpp"
#include "tgm/render.hpp"
#include "tgm/scan_matcher.hpp"

namespace tgm {

namespace {

namespace fs = std::filesystem;

std::string fixed6(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

Scenario resolve_scenario(const RunConfig& config) {
    Scenario sc = config.scenario ? *config.scenario : load_scenario(config.scenario_path);
    if (config.sensor_range_m) sc.world.sensor.max_range_m = *config.sensor_range_m;
    if (config.prior_static) sc.filter.prior_static = *config.prior_static;
    if (config.prior_dynamic) sc.filter.prior_dynamic = *config.prior_dynamic;
    if (config.v_max_mps) {
        sc.filter.v_max_mps = *config.v_max_mps;
        sc.world.v_max_mps = *config.v_max_mps;
    }
    if (config.resolution_m) {
        // Preserve world extent under the new cell size.
        const GridGeometry& g = sc.world.grid;
        const int w = std::max(1, static_cast<int>(std::lround(g.width * g.resolution /
                                                               *config.resolution_m)));
        const int h = std::max(1, static_cast<int>(std::lround(g.height * g.resolution /
                                                               *config.resolution_m)));
        sc.world.grid = GridGeometry(g.origin_x, g.origin_y, *config.resolution_m, w, h);
    }
    return sc;
}

std::string snapshot_name(double t) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "map_t%07.1f.ppm", t);
    return buf;
}

// One mapper behind a uniform interface so the run loop stays flat.
class Mapper {
public:
    Mapper(MapperKind kind, const Scenario& sc, const Pose2D& initial_pose)
        : kind_(kind),
          ism_(sc.filter.p_hit_occupied, sc.filter.p_miss_free),
          limits_(sc.filter.static_limits[0], sc.filter.static_limits[1],
                  sc.filter.dynamic_limits[0], sc.filter.dynamic_limits[1]),
          kernel_(uniform_disk_kernel(sc.filter.v_max_mps, sc.world.dt(),
                                      sc.world.grid.resolution)),
          slam_(initial_pose) {
        if (kind_ == MapperKind::kTgm) {
            tgm_ = new_map(sc.world.grid, sc.filter.prior_static, sc.filter.prior_dynamic);
        } else if (kind_ == MapperKind::kOgm) {
            ogm_ = new_ogm(sc.world.grid);
        } else {
            ogm_ = new_ogm(sc.world.grid,
                           std::make_pair(sc.filter.cogm_clamp[0], sc.filter.cogm_clamp[1]));
        }
    }

    Pose2D observe_truth(const Scan& scan, const Pose2D& truth_pose) {
        if (kind_ == MapperKind::kTgm)
            tgm_ = step(tgm_, scan, truth_pose, kernel_, ism_, limits_, std::nullopt, &diag_);
        else
            ogm_step(ogm_, scan, truth_pose, ism_);
        return truth_pose;
    }

    Pose2D observe_slam(const Scan& scan) {
        SlamStepResult r;
        if (kind_ == MapperKind::kTgm)
            r = slam_step(tgm_, scan, slam_, kernel_, ism_, limits_, MatchConfig{}, &diag_);
        else
            r = ogm_slam_step(ogm_, scan, slam_, ism_);
        if (r.used_motion_model) ++fallbacks_;
        return r.pose;
    }

    /// Occupied-belief field used by the map metrics.
    std::vector<double> occupancy() const {
        if (kind_ == MapperKind::kTgm) return tgm_.static_layer;
        std::vector<double> p(ogm_.log_odds.size());
        for (std::size_t i = 0; i < p.size(); ++i)
            p[i] = ogm_.probability_at(static_cast<int>(i));
        return p;
    }

    Image render() const {
        return kind_ == MapperKind::kTgm ? render_map(tgm_) : render_ogm(ogm_);
    }

    const StepDiagnostics& diagnostics() const { return diag_; }
    long fallbacks() const { return fallbacks_; }

private:
    MapperKind kind_;
    InverseSensorModel ism_;
    SaturationLimits limits_;
    TransitionKernel kernel_;
    SlamState slam_;
    TgmMap tgm_;
    OgmMap ogm_;
    StepDiagnostics diag_;
    long fallbacks_ = 0;
};

void write_summary(const std::string& path, const RunConfig& config, const Scenario& sc,
                   const RunMetrics& m) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("run: cannot open " + path);
    out << "scenario: " << sc.name << "\n";
    out << "mapper: " << mapper_name(config.mapper) << "\n";
    out << "pose_mode: " << (config.pose_mode == PoseMode::kSlam ? "slam" : "truth") << "\n";
    out << "seed: " << config.seed << "\n";
    out << "frames: " << m.frames << "\n";
    out << "observed_cells: " << m.observed_cells << "\n";
    out << "static_accuracy: " << fixed6(m.static_accuracy) << "\n";
    out << "trace_count: " << m.trace_count << "\n";
    out << "pose_rmse_m: " << fixed6(m.pose_rmse_m) << "\n";
    out << "pose_rmse_before_event_m: " << fixed6(m.pose_rmse_before_event_m) << "\n";
    out << "pose_rmse_after_event_m: " << fixed6(m.pose_rmse_after_event_m) << "\n";
    out << "mean_step_ms: " << fixed6(m.mean_step_ms) << "\n";
    out << "max_step_ms: " << fixed6(m.max_step_ms) << "\n";
    out << "prediction_clipped_cells: " << m.diagnostics.clipped_cells << "\n";
    out << "degenerate_updates: " << m.diagnostics.degenerate_updates << "\n";
    out << "motion_model_fallbacks: " << m.motion_model_fallbacks << "\n";
    // These two map metrics are this harness's own operationalization of
    // map quality: both threshold the occupied belief at 0.5 and only look
    // at cells the mapper actually observed.
    out << "note: static_accuracy and trace_count are harness-defined metrics\n";
}

}  // namespace

std::string mapper_name(MapperKind kind) {
    switch (kind) {
        case MapperKind::kTgm: return "tgm";
        case MapperKind::kOgm: return "ogm";
        case MapperKind::kCogm: return "cogm";
    }
    return "?";
}

std::optional<MapperKind> mapper_from_name(const std::string& name) {
    if (name == "tgm") return MapperKind::kTgm;
    if (name == "ogm") return MapperKind::kOgm;
    if (name == "cogm" || name == "c-ogm") return MapperKind::kCogm;
    return std::nullopt;
}

namespace {

RunMetrics run_impl(const RunConfig& config) {
    const Scenario sc = resolve_scenario(config);
    const Simulator sim(sc.world, config.seed);
    const GridGeometry& geom = sc.world.grid;
    const int cells = geom.cell_count();
    const int frames = sim.frame_count();

    const bool write_artifacts = !config.out_dir.empty();
    std::ofstream csv;
    if (write_artifacts) {
        fs::create_directories(config.out_dir);
        csv.open(fs::path(config.out_dir) / "poses.csv");
        if (!csv) throw std::runtime_error("run: cannot open poses.csv");
        csv << "t,truth_x,truth_y,truth_theta,est_x,est_y,est_theta\n";
    }

    Mapper mapper(config.mapper, sc, sim.frame(0).ego_pose_truth);

    std::vector<std::uint8_t> observed(static_cast<std::size_t>(cells), 0);
    std::vector<std::uint8_t> ever_dynamic(static_cast<std::size_t>(cells), 0);

    RunMetrics m;
    m.frames = frames;
    m.time_s.reserve(frames);
    m.step_ms.reserve(frames);

    std::vector<double> snapshots = config.snapshot_times_s;
    const double dt = sc.world.dt();

    for (int k = 0; k < frames; ++k) {
        const Frame frame = sim.frame(k);
        for (int i = 0; i < cells; ++i) ever_dynamic[i] |= frame.truth_dynamic[i];

        const auto t0 = std::chrono::steady_clock::now();
        Pose2D est = config.pose_mode == PoseMode::kSlam
                         ? mapper.observe_slam(frame.scan)
                         : mapper.observe_truth(frame.scan, frame.ego_pose_truth);
        const auto t1 = std::chrono::steady_clock::now();
        m.step_ms.push_back(std::chrono::duration<double, std::milli>(t1 - t0).count());

        const ScanClassification cls = classify_scan(geom, frame.scan, est);
        for (int i : cls.free_cells) observed[i] = 1;
        for (int i : cls.hit_cells) observed[i] = 1;

        m.time_s.push_back(frame.time);
        m.err_x.push_back(est.x - frame.ego_pose_truth.x);
        m.err_y.push_back(est.y - frame.ego_pose_truth.y);
        m.err_theta.push_back(wrap_angle(est.theta - frame.ego_pose_truth.theta));

        if (write_artifacts) {
            csv << fixed6(frame.time) << ',' << fixed6(frame.ego_pose_truth.x) << ','
                << fixed6(frame.ego_pose_truth.y) << ',' << fixed6(frame.ego_pose_truth.theta)
                << ',' << fixed6(est.x) << ',' << fixed6(est.y) << ',' << fixed6(est.theta)
                << '\n';
            for (double t : snapshots) {
                if (std::fabs(t - frame.time) <= dt * 0.5) {
                    write_ppm((fs::path(config.out_dir) / snapshot_name(t)).string(),
                              mapper.render());
                }
            }
        }
    }

    // Map metrics against ground truth at run end.
    const Frame last = sim.frame(frames - 1);
    const std::vector<double> occ = mapper.occupancy();
    long eval = 0, correct = 0;
    for (int i = 0; i < cells; ++i) {
        if (observed[i]) ++m.observed_cells;
        const bool transient = ever_dynamic[i] && !last.truth_dynamic[i];
        if (observed[i] && transient && occ[i] > 0.5) ++m.trace_count;
        if (!observed[i]) continue;
        if (last.truth_static[i]) {
            ++eval;
            if (occ[i] > 0.5) ++correct;
        } else if (!last.truth_dynamic[i]) {
            ++eval;
            if (occ[i] < 0.5) ++correct;
        }
    }
    m.static_accuracy = eval > 0 ? static_cast<double>(correct) / eval : 1.0;

    double sum2 = 0.0, sum2_before = 0.0, sum2_after = 0.0;
    int n_before = 0, n_after = 0;
    for (int k = 0; k < frames; ++k) {
        const double e2 = m.err_x[k] * m.err_x[k] + m.err_y[k] * m.err_y[k];
        sum2 += e2;
        if (m.time_s[k] < sc.event_time_s) {
            sum2_before += e2;
            ++n_before;
        } else {
            sum2_after += e2;
            ++n_after;
        }
    }
    m.pose_rmse_m = std::sqrt(sum2 / frames);
    m.pose_rmse_before_event_m = n_before > 0 ? std::sqrt(sum2_before / n_before) : 0.0;
    m.pose_rmse_after_event_m = n_after > 0 ? std::sqrt(sum2_after / n_after) : 0.0;

    double total_ms = 0.0;
    for (double v : m.step_ms) {
        total_ms += v;
        m.max_step_ms = std::max(m.max_step_ms, v);
    }
    m.mean_step_ms = total_ms / frames;
    m.diagnostics = mapper.diagnostics();
    m.motion_model_fallbacks = mapper.fallbacks();

    if (write_artifacts) {
        write_ppm((fs::path(config.out_dir) / "map_final.ppm").string(), mapper.render());
        write_summary((fs::path(config.out_dir) / "summary.txt").string(), config, sc, m);
    }
    return m;
}

}  // namespace

RunMetrics run(const RunConfig& config) {
    try {
        return run_impl(config);
    } catch (...) {
        // Flag partial artifacts so a half-written directory is not
        // mistaken for a completed run.
        if (!config.out_dir.empty() && fs::exists(config.out_dir)) {
            std::ofstream flag(fs::path(config.out_dir) / "INCOMPLETE");
            flag << "run aborted; artifacts in this directory are partial\n";
        }
        throw;
    }
}

Comparison compare(const std::vector<RunConfig>& configs) {
    if (configs.size() < 2)
        throw std::invalid_argument("compare: need at least two configurations");
    const auto scenario_id = [](const RunConfig& c) {
        return c.scenario ? "inline:" + c.scenario->name : c.scenario_path;
    };
    for (const RunConfig& c : configs) {
        if (scenario_id(c) != scenario_id(configs.front()) || c.seed != configs.front().seed ||
            c.pose_mode != configs.front().pose_mode)
            throw std::invalid_argument("compare: configurations must share scenario and seed");
    }

    Comparison out;
    std::ostringstream table;
    table << "mapper  trace_count  static_accuracy  pose_rmse_m  mean_step_ms\n";
    for (const RunConfig& c : configs) {
        RunConfig rc = c;
        if (!c.out_dir.empty())
            rc.out_dir = (fs::path(c.out_dir) / mapper_name(c.mapper)).string();
        ComparisonRow row{mapper_name(c.mapper), run(rc)};
        char line[160];
        std::snprintf(line, sizeof(line), "%-6s  %11ld  %15.6f  %11.6f  %12.3f\n",
                      row.mapper.c_str(), row.metrics.trace_count, row.metrics.static_accuracy,
                      row.metrics.pose_rmse_m, row.metrics.mean_step_ms);
        table << line;
        out.rows.push_back(std::move(row));
    }
    out.table = table.str();
    if (!configs.front().out_dir.empty()) {
        fs::create_directories(configs.front().out_dir);
        std::ofstream f(fs::path(configs.front().out_dir) / "comparison.txt");
        f << out.table;
    }
    return out;
}

}  // namespace tgm
