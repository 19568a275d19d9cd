#include "tgm/ogm.hpp"

#include <algorithm>
#include <cmath>

namespace tgm {

namespace {

double log_odds_of(double p) { return std::log(p / (1.0 - p)); }

std::uint8_t round_half_up(double v) {
    return static_cast<std::uint8_t>(std::floor(std::clamp(v, 0.0, 255.0) + 0.5));
}

}  // namespace

OgmMap new_ogm(const GridGeometry& geom, std::optional<std::pair<double, double>> clamp) {
    OgmMap map;
    map.geometry = geom;
    map.log_odds.assign(static_cast<std::size_t>(geom.cell_count()), 0.0);
    map.clamp = clamp;
    return map;
}

void ogm_step(OgmMap& map, const Scan& scan, const Pose2D& pose, const InverseSensorModel& ism) {
    const ScanClassification cls = classify_scan(map.geometry, scan, pose);
    const double hit = log_odds_of(ism.p_hit_occupied);
    const double miss = log_odds_of(1.0 - ism.p_miss_free);

    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
    if (map.clamp) {
        lo = log_odds_of(map.clamp->first);
        hi = log_odds_of(map.clamp->second);
    }

    for (int i : cls.free_cells) map.log_odds[i] = std::clamp(map.log_odds[i] + miss, lo, hi);
    for (int i : cls.hit_cells) map.log_odds[i] = std::clamp(map.log_odds[i] + hit, lo, hi);
}

Image render_ogm(const OgmMap& map) {
    Image img;
    img.width = map.geometry.width;
    img.height = map.geometry.height;
    img.rgb.resize(static_cast<std::size_t>(img.width) * img.height * 3);
    for (int y = 0; y < img.height; ++y) {
        const int row = img.height - 1 - y;
        for (int x = 0; x < img.width; ++x) {
            const double p = map.probability_at(y * img.width + x);
            const std::uint8_t v = round_half_up(255.0 * (1.0 - p));
            std::uint8_t* px = img.pixel(x, row);
            px[0] = px[1] = px[2] = v;
        }
    }
    return img;
}

}  // namespace tgm
