#include "tgm/scenario_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace tgm {

namespace {

using nlohmann::json;

json to_json(const Scenario& sc) {
    json j;
    j["name"] = sc.name;
    j["event_time_s"] = sc.event_time_s;

    const WorldSpec& w = sc.world;
    j["grid"] = {{"origin_x", w.grid.origin_x},
                 {"origin_y", w.grid.origin_y},
                 {"resolution", w.grid.resolution},
                 {"width", w.grid.width},
                 {"height", w.grid.height}};
    j["duration_s"] = w.duration_s;
    j["sensor"] = {{"beam_count", w.sensor.beam_count},
                   {"fov_rad", w.sensor.fov_rad},
                   {"max_range_m", w.sensor.max_range_m},
                   {"noise_sigma_m", w.sensor.noise_sigma_m},
                   {"rate_hz", w.sensor.rate_hz}};
    j["ego"] = json::array();
    for (const PoseWaypoint& p : w.ego)
        j["ego"].push_back({{"t", p.t}, {"x", p.x}, {"y", p.y}, {"theta", p.theta}});
    j["static_rects"] = json::array();
    for (const WorldRect& r : w.static_rects) j["static_rects"].push_back({r.x0, r.y0, r.x1, r.y1});
    j["walls"] = json::array();
    for (const WallSegment& s : w.walls) j["walls"].push_back({s.a.x, s.a.y, s.b.x, s.b.y});
    j["obstacles"] = json::array();
    for (const MovingObstacle& ob : w.obstacles) {
        json o;
        o["half_x"] = ob.half_x;
        o["half_y"] = ob.half_y;
        o["waypoints"] = json::array();
        for (const Waypoint& wp : ob.waypoints)
            o["waypoints"].push_back({{"t", wp.t}, {"x", wp.x}, {"y", wp.y}});
        j["obstacles"].push_back(o);
    }

    const FilterParams& f = sc.filter;
    j["filter"] = {{"prior_static", f.prior_static},
                   {"prior_dynamic", f.prior_dynamic},
                   {"v_max_mps", f.v_max_mps},
                   {"static_limits", {f.static_limits[0], f.static_limits[1]}},
                   {"dynamic_limits", {f.dynamic_limits[0], f.dynamic_limits[1]}},
                   {"cogm_clamp", {f.cogm_clamp[0], f.cogm_clamp[1]}},
                   {"p_hit_occupied", f.p_hit_occupied},
                   {"p_miss_free", f.p_miss_free}};
    return j;
}

Scenario from_json(const json& j) {
    Scenario sc;
    sc.name = j.at("name").get<std::string>();
    sc.event_time_s = j.value("event_time_s", 0.0);

    WorldSpec& w = sc.world;
    const json& g = j.at("grid");
    w.grid = GridGeometry(g.at("origin_x"), g.at("origin_y"), g.at("resolution"), g.at("width"),
                          g.at("height"));
    w.duration_s = j.at("duration_s");
    const json& s = j.at("sensor");
    w.sensor = {s.at("beam_count"), s.at("fov_rad"), s.at("max_range_m"), s.at("noise_sigma_m"),
                s.at("rate_hz")};
    for (const json& p : j.at("ego"))
        w.ego.push_back({p.at("t"), p.at("x"), p.at("y"), p.at("theta")});
    for (const json& r : j.value("static_rects", json::array()))
        w.static_rects.push_back({r.at(0), r.at(1), r.at(2), r.at(3)});
    for (const json& seg : j.value("walls", json::array()))
        w.walls.push_back({{seg.at(0), seg.at(1)}, {seg.at(2), seg.at(3)}});
    for (const json& o : j.value("obstacles", json::array())) {
        MovingObstacle ob;
        ob.half_x = o.at("half_x");
        ob.half_y = o.at("half_y");
        for (const json& wp : o.at("waypoints"))
            ob.waypoints.push_back({wp.at("t"), wp.at("x"), wp.at("y")});
        w.obstacles.push_back(ob);
    }

    const json& f = j.at("filter");
    sc.filter.prior_static = f.at("prior_static");
    sc.filter.prior_dynamic = f.at("prior_dynamic");
    sc.filter.v_max_mps = f.at("v_max_mps");
    sc.filter.static_limits[0] = f.at("static_limits").at(0);
    sc.filter.static_limits[1] = f.at("static_limits").at(1);
    sc.filter.dynamic_limits[0] = f.at("dynamic_limits").at(0);
    sc.filter.dynamic_limits[1] = f.at("dynamic_limits").at(1);
    sc.filter.cogm_clamp[0] = f.at("cogm_clamp").at(0);
    sc.filter.cogm_clamp[1] = f.at("cogm_clamp").at(1);
    sc.filter.p_hit_occupied = f.at("p_hit_occupied");
    sc.filter.p_miss_free = f.at("p_miss_free");
    w.v_max_mps = sc.filter.v_max_mps;
    return sc;
}

}  // namespace

std::string scenario_to_json(const Scenario& scenario) { return to_json(scenario).dump(2); }

Scenario scenario_from_json(const std::string& text) {
    return from_json(json::parse(text));
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_scenario: cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return scenario_from_json(ss.str());
    } catch (const json::exception& e) {
        throw std::runtime_error("load_scenario: " + path + ": " + e.what());
    }
}

void save_scenario(const std::string& path, const Scenario& scenario) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("save_scenario: cannot open " + path);
    out << scenario_to_json(scenario) << "\n";
}

void dump_frames(const Simulator& sim, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("dump_frames: cannot open " + path);
    for (int k = 0; k < sim.frame_count(); ++k) {
        const Frame f = sim.frame(k);
        json j;
        j["time"] = f.time;
        j["pose"] = {f.ego_pose_truth.x, f.ego_pose_truth.y, f.ego_pose_truth.theta};
        j["max_range"] = f.scan.max_range;
        json ranges = json::array();
        json bearings = json::array();
        json max_flags = json::array();
        for (const Beam& b : f.scan.beams) {
            ranges.push_back(b.range);
            bearings.push_back(b.bearing);
            max_flags.push_back(b.is_max_range);
        }
        j["bearings"] = std::move(bearings);
        j["ranges"] = std::move(ranges);
        j["is_max_range"] = std::move(max_flags);
        out << j.dump() << "\n";
    }
}

}  // namespace tgm
