#include "tgm/scan_matcher.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tgm {

SmoothStaticField::SmoothStaticField(const GridGeometry& geom, std::vector<double> values)
    : geom_(geom), values_(std::move(values)) {
    if (values_.size() != static_cast<std::size_t>(geom.cell_count()))
        throw std::invalid_argument("SmoothStaticField: value count does not match geometry");
}

SmoothStaticField SmoothStaticField::from_static_layer(const TgmMap& map) {
    return SmoothStaticField(map.geometry, map.static_layer);
}

SmoothStaticField SmoothStaticField::from_ogm(const OgmMap& map) {
    std::vector<double> p(map.log_odds.size());
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = map.probability_at(static_cast<int>(i));
    return SmoothStaticField(map.geometry, std::move(p));
}

double SmoothStaticField::value(const Vec2& world) const {
    const double gx = (world.x - geom_.origin_x) / geom_.resolution;
    const double gy = (world.y - geom_.origin_y) / geom_.resolution;
    const int x0 = static_cast<int>(std::floor(gx));
    const int y0 = static_cast<int>(std::floor(gy));
    const double fx = gx - x0, fy = gy - y0;
    const double v00 = cell_value(x0, y0), v10 = cell_value(x0 + 1, y0);
    const double v01 = cell_value(x0, y0 + 1), v11 = cell_value(x0 + 1, y0 + 1);
    return v00 * (1.0 - fx) * (1.0 - fy) + v10 * fx * (1.0 - fy) + v01 * (1.0 - fx) * fy +
           v11 * fx * fy;
}

Vec2 SmoothStaticField::gradient(const Vec2& world) const {
    const double gx = (world.x - geom_.origin_x) / geom_.resolution;
    const double gy = (world.y - geom_.origin_y) / geom_.resolution;
    const int x0 = static_cast<int>(std::floor(gx));
    const int y0 = static_cast<int>(std::floor(gy));
    const double fx = gx - x0, fy = gy - y0;
    const double v00 = cell_value(x0, y0), v10 = cell_value(x0 + 1, y0);
    const double v01 = cell_value(x0, y0 + 1), v11 = cell_value(x0 + 1, y0 + 1);
    const double inv_res = 1.0 / geom_.resolution;
    return {((v10 - v00) * (1.0 - fy) + (v11 - v01) * fy) * inv_res,
            ((v01 - v00) * (1.0 - fx) + (v11 - v10) * fx) * inv_res};
}

namespace {

double objective(const Scan& scan, const Pose2D& pose, const SmoothStaticField& field) {
    double cost = 0.0;
    for (std::size_t k = 0; k < scan.beams.size(); ++k) {
        if (scan.beams[k].is_max_range) continue;
        const double r = 1.0 - field.value(pose.transform(scan.endpoint_sensor_frame(k)));
        cost += r * r;
    }
    return cost;
}

bool pose_less(const Pose2D& a, const Pose2D& b) {
    if (a.x != b.x) return a.x < b.x;
    if (a.y != b.y) return a.y < b.y;
    return a.theta < b.theta;
}

// Solves the 3x3 symmetric system H x = -b. Returns false when H is
// numerically singular (flat objective).
bool solve_normal_equations(const double h[3][3], const double b[3], double x[3]) {
    double a[3][4] = {{h[0][0], h[0][1], h[0][2], -b[0]},
                      {h[1][0], h[1][1], h[1][2], -b[1]},
                      {h[2][0], h[2][1], h[2][2], -b[2]}};
    for (int col = 0; col < 3; ++col) {
        int pivot = col;
        for (int row = col + 1; row < 3; ++row)
            if (std::fabs(a[row][col]) > std::fabs(a[pivot][col])) pivot = row;
        if (std::fabs(a[pivot][col]) < 1e-12) return false;
        std::swap(a[col], a[pivot]);
        for (int row = 0; row < 3; ++row) {
            if (row == col) continue;
            const double f = a[row][col] / a[col][col];
            for (int c = col; c < 4; ++c) a[row][c] -= f * a[col][c];
        }
    }
    for (int i = 0; i < 3; ++i) x[i] = a[i][3] / a[i][i];
    return true;
}

}  // namespace

MatchResult match(const Scan& scan, const Pose2D& prior_pose, const SmoothStaticField& field,
                  const MatchConfig& config) {
    std::size_t usable = 0;
    for (const Beam& b : scan.beams)
        if (!b.is_max_range) ++usable;
    if (usable == 0) throw std::invalid_argument("match: scan has no usable beam");

    const double res = field.geometry().resolution;

    // Coarse discrete search around the prior.
    MatchResult best;
    best.pose = prior_pose;
    best.cost = objective(scan, prior_pose, field);
    for (double dt = -config.window_theta; dt <= config.window_theta + 1e-12;
         dt += config.step_theta) {
        for (double dy = -config.window_cells; dy <= config.window_cells + 1e-12;
             dy += config.step_cells) {
            for (double dx = -config.window_cells; dx <= config.window_cells + 1e-12;
                 dx += config.step_cells) {
                const Pose2D candidate(prior_pose.x + dx * res, prior_pose.y + dy * res,
                                       prior_pose.theta + dt);
                const double cost = objective(scan, candidate, field);
                if (cost < best.cost ||
                    (cost == best.cost && pose_less(candidate, best.pose))) {
                    best.pose = candidate;
                    best.cost = cost;
                }
            }
        }
    }

    // Gauss-Newton refinement with step halving.
    Pose2D pose = best.pose;
    double cost = best.cost;
    int iterations = 0;
    bool converged = false;
    for (int iter = 0; iter < config.max_iterations; ++iter) {
        iterations = iter + 1;
        double h[3][3] = {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}};
        double b[3] = {0, 0, 0};
        const double c = std::cos(pose.theta), s = std::sin(pose.theta);
        for (std::size_t k = 0; k < scan.beams.size(); ++k) {
            if (scan.beams[k].is_max_range) continue;
            const Vec2 p = scan.endpoint_sensor_frame(k);
            const Vec2 w = pose.transform(p);
            const double r = 1.0 - field.value(w);
            const Vec2 g = field.gradient(w);
            const double jx = -g.x;
            const double jy = -g.y;
            const double jt = -(g.x * (-s * p.x - c * p.y) + g.y * (c * p.x - s * p.y));
            const double j[3] = {jx, jy, jt};
            for (int m = 0; m < 3; ++m) {
                b[m] += j[m] * r;
                for (int n = 0; n < 3; ++n) h[m][n] += j[m] * j[n];
            }
        }
        double delta[3];
        if (!solve_normal_equations(h, b, delta)) break;  // flat objective

        double lambda = 1.0;
        Pose2D next = pose;
        double next_cost = cost;
        bool improved = false;
        for (int half = 0; half <= config.max_halvings; ++half) {
            const Pose2D trial(pose.x + lambda * delta[0], pose.y + lambda * delta[1],
                               pose.theta + lambda * delta[2]);
            const double trial_cost = objective(scan, trial, field);
            if (trial_cost < cost) {
                next = trial;
                next_cost = trial_cost;
                improved = true;
                break;
            }
            lambda *= 0.5;
        }
        if (!improved) {
            converged = true;  // no descent direction left: local minimum
            break;
        }
        pose = next;
        cost = next_cost;
        const double step_norm =
            lambda * std::sqrt(delta[0] * delta[0] + delta[1] * delta[1] + delta[2] * delta[2]);
        if (step_norm < config.step_tolerance) {
            converged = true;
            break;
        }
    }

    return {pose, cost, iterations, converged};
}

SlamStepResult slam_step(TgmMap& map, const Scan& scan, SlamState& state,
                         const TransitionKernel& kernel, const InverseSensorModel& ism,
                         const SaturationLimits& limits, const MatchConfig& config,
                         StepDiagnostics* diag) {
    const Pose2D seed = state.seed();
    SlamStepResult out;
    std::size_t usable = 0;
    for (const Beam& b : scan.beams)
        if (!b.is_max_range) ++usable;
    if (usable == 0) {
        out.pose = seed;
        out.used_motion_model = true;
        out.match.pose = seed;
    } else {
        out.match = match(scan, seed, SmoothStaticField::from_static_layer(map), config);
        out.used_motion_model = !out.match.converged;
        out.pose = out.used_motion_model ? seed : out.match.pose;
    }
    map = step(map, scan, out.pose, kernel, ism, limits, std::nullopt, diag);
    state.push(out.pose);
    return out;
}

SlamStepResult ogm_slam_step(OgmMap& map, const Scan& scan, SlamState& state,
                             const InverseSensorModel& ism, const MatchConfig& config) {
    const Pose2D seed = state.seed();
    SlamStepResult out;
    std::size_t usable = 0;
    for (const Beam& b : scan.beams)
        if (!b.is_max_range) ++usable;
    if (usable == 0) {
        out.pose = seed;
        out.used_motion_model = true;
        out.match.pose = seed;
    } else {
        out.match = match(scan, seed, SmoothStaticField::from_ogm(map), config);
        out.used_motion_model = !out.match.converged;
        out.pose = out.used_motion_model ? seed : out.match.pose;
    }
    ogm_step(map, scan, out.pose, ism);
    state.push(out.pose);
    return out;
}

}  // namespace tgm
