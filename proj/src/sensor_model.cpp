#include "tgm/sensor_model.hpp"

#include <algorithm>
#include <stdexcept>

#include "tgm/raycast.hpp"

namespace tgm {

namespace {
constexpr std::uint8_t kNone = 0, kFree = 1, kHit = 2;
}

ScanClassification classify_scan(const GridGeometry& geom, const Scan& scan, const Pose2D& pose) {
    const auto pose_cell = world_to_cell(geom, {pose.x, pose.y});
    if (!pose_cell) throw std::invalid_argument("classify_scan: pose outside grid");

    std::vector<std::uint8_t> mark(static_cast<std::size_t>(geom.cell_count()), kNone);
    std::vector<int> touched;
    touched.reserve(scan.beams.size() * 8);

    for (std::size_t k = 0; k < scan.beams.size(); ++k) {
        const Beam& beam = scan.beams[k];
        const Vec2 end = pose.transform(scan.endpoint_sensor_frame(k));
        const auto end_cell = world_to_cell(geom, end);
        const int end_index =
            (!beam.is_max_range && end_cell) ? geom.index_of(*end_cell) : -1;

        traverse_cells(geom, {pose.x, pose.y}, end, [&](const CellIndex& c) {
            const int i = geom.index_of(c);
            if (i == end_index) return false;  // endpoint cell is not free evidence
            if (mark[i] == kNone) {
                mark[i] = kFree;
                touched.push_back(i);
            }
            return true;
        });
        if (end_index >= 0) {
            if (mark[end_index] == kNone) touched.push_back(end_index);
            mark[end_index] = kHit;  // occupied evidence overrides traversal-free
        }
    }

    std::sort(touched.begin(), touched.end());
    ScanClassification out;
    for (int i : touched) {
        if (mark[i] == kHit)
            out.hit_cells.push_back(i);
        else
            out.free_cells.push_back(i);
    }
    return out;
}

InverseSensorModel::InverseSensorModel(double hit, double miss)
    : p_hit_occupied(hit), p_miss_free(miss) {
    if (!(hit > 0.5 && hit <= 1.0))
        throw std::invalid_argument("InverseSensorModel: p_hit_occupied must be in (0.5, 1]");
    if (!(miss > 0.5 && miss <= 1.0))
        throw std::invalid_argument("InverseSensorModel: p_miss_free must be in (0.5, 1]");
}

CellBelief InverseSensorModel::occupied_belief(double prior_static, double prior_dynamic) const {
    const double total = prior_static + prior_dynamic;
    const double ratio = total > 0.0 ? prior_static / total : 0.5;
    return {p_hit_occupied * ratio, p_hit_occupied * (1.0 - ratio)};
}

CellBelief InverseSensorModel::free_belief(double prior_static, double prior_dynamic) const {
    const double total = prior_static + prior_dynamic;
    const double ratio = total > 0.0 ? prior_static / total : 0.5;
    const double occupied = 1.0 - p_miss_free;
    return {occupied * ratio, occupied * (1.0 - ratio)};
}

SparseMeasurement inverse_sensor_model(const Scan& scan, const Pose2D& pose,
                                       const GridGeometry& geom, const InverseSensorModel& ism,
                                       double prior_static, double prior_dynamic) {
    const ScanClassification cls = classify_scan(geom, scan, pose);
    const CellBelief occupied = ism.occupied_belief(prior_static, prior_dynamic);
    const CellBelief free = ism.free_belief(prior_static, prior_dynamic);

    SparseMeasurement out;
    out.cells.reserve(cls.free_cells.size() + cls.hit_cells.size());
    std::size_t fi = 0, hi = 0;
    while (fi < cls.free_cells.size() || hi < cls.hit_cells.size()) {
        if (hi >= cls.hit_cells.size() ||
            (fi < cls.free_cells.size() && cls.free_cells[fi] < cls.hit_cells[hi])) {
            out.cells.emplace_back(cls.free_cells[fi++], free);
        } else {
            out.cells.emplace_back(cls.hit_cells[hi++], occupied);
        }
    }
    return out;
}

}  // namespace tgm
