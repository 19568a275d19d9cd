#include "tgm/predict.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tgm {

namespace {

void validate(const TgmMap& map, const TransitionKernel& kernel,
              const std::optional<CellRect>& region) {
    const GridGeometry& g = map.geometry;
    if (kernel.radius_cells > std::min(g.width, g.height))
        throw std::invalid_argument("predict: kernel radius exceeds grid size");
    if (map.static_layer.size() != static_cast<std::size_t>(g.cell_count()) ||
        map.dynamic_layer.size() != static_cast<std::size_t>(g.cell_count()))
        throw std::invalid_argument("predict: layer size does not match geometry");
    if (region) {
        if (region->x0 > region->x1 || region->y0 > region->y1 || region->x0 < 0 ||
            region->y0 < 0 || region->x1 >= g.width || region->y1 >= g.height)
            throw std::invalid_argument("predict: region outside grid");
    }
}

void clip_cell(double p_static, double& p_dynamic, Prediction& out) {
    const double cap = 1.0 - p_static;
    if (p_dynamic > cap) {
        out.clipped_mass += p_dynamic - cap;
        ++out.clipped_cells;
        p_dynamic = cap;
    }
}

// Direct stencil evaluation of the two convolutions.
void predict_general(const TgmMap& map, const TransitionKernel& kernel, const CellRect& rect,
                     Prediction& out) {
    const GridGeometry& g = map.geometry;
    const int r = kernel.radius_cells;
    const std::vector<double>& ms = map.static_layer;
    const std::vector<double>& md = map.dynamic_layer;

    for (int y = rect.y0; y <= rect.y1; ++y) {
        for (int x = rect.x0; x <= rect.x1; ++x) {
            double s_conv = 0.0;  // (M_s ** K')[x,y]
            double d_conv = 0.0;  // (M_d ** K)[x,y]
            for (int dy = -r; dy <= r; ++dy) {
                const int sy = y - dy;
                if (sy < 0 || sy >= g.height) continue;
                const int row = sy * g.width;
                const int krow = (dy + r) * kernel.side() + r;
                for (int dx = -r; dx <= r; ++dx) {
                    const int sx = x - dx;
                    if (sx < 0 || sx >= g.width) continue;
                    s_conv += ms[row + sx] * kernel.off_center_flipped[krow + dx];
                    d_conv += md[row + sx] * kernel.off_center[krow + dx];
                }
            }
            const int i = y * g.width + x;
            double pd = md[i] * (kernel.tau0 + s_conv) + (1.0 - ms[i]) * d_conv;
            clip_cell(ms[i], pd, out);
            out.dynamic_layer[i] = pd;
        }
    }
}

// Uniform kernels: every supported offset carries the same weight, so both
// convolutions reduce to disk sums, evaluated with per-row running sums.
// Long double accumulation keeps the results interchangeable with the
// stencil path at the oracle tolerance.
void predict_uniform(const TgmMap& map, const TransitionKernel& kernel, const CellRect& rect,
                     Prediction& out) {
    const GridGeometry& g = map.geometry;
    const int r = kernel.radius_cells;
    const int W = g.width, H = g.height;
    const double w = kernel.tau0;
    const std::vector<double>& ms = map.static_layer;
    const std::vector<double>& md = map.dynamic_layer;

    // Band half-widths reproduce the kernel's own support test.
    std::vector<int> half_width(static_cast<std::size_t>(2 * r + 1), 0);
    for (int dy = -r; dy <= r; ++dy) {
        int hw = 0;
        for (int dx = r; dx >= 0; --dx) {
            if (kernel.weights[kernel.offset_index(dx, dy)] > 0.0) {
                hw = dx;
                break;
            }
        }
        half_width[dy + r] = hw;
    }

    // prefix[y][x] = sum of row y up to column x inclusive.
    std::vector<long double> prefix_s(static_cast<std::size_t>(W) * H);
    std::vector<long double> prefix_d(static_cast<std::size_t>(W) * H);
    for (int y = 0; y < H; ++y) {
        long double accs = 0.0L, accd = 0.0L;
        const int row = y * W;
        for (int x = 0; x < W; ++x) {
            accs += ms[row + x];
            accd += md[row + x];
            prefix_s[row + x] = accs;
            prefix_d[row + x] = accd;
        }
    }
    const auto band_sum = [W](const std::vector<long double>& prefix, int row, int x0,
                              int x1) -> long double {
        x0 = std::max(x0, 0);
        x1 = std::min(x1, W - 1);
        if (x0 > x1) return 0.0L;
        const long double hi = prefix[row + x1];
        return x0 == 0 ? hi : hi - prefix[row + x0 - 1];
    };

    for (int y = rect.y0; y <= rect.y1; ++y) {
        for (int x = rect.x0; x <= rect.x1; ++x) {
            long double disk_s = 0.0L, disk_d = 0.0L;
            const int dy_lo = std::max(-r, -y);
            const int dy_hi = std::min(r, H - 1 - y);
            for (int dy = dy_lo; dy <= dy_hi; ++dy) {
                const int hw = half_width[dy + r];
                const int row = (y + dy) * W;
                disk_s += band_sum(prefix_s, row, x - hw, x + hw);
                disk_d += band_sum(prefix_d, row, x - hw, x + hw);
            }
            const int i = y * W + x;
            const double s_conv = w * static_cast<double>(disk_s - ms[i]);
            const double d_conv = w * static_cast<double>(disk_d - md[i]);
            double pd = md[i] * (kernel.tau0 + s_conv) + (1.0 - ms[i]) * d_conv;
            clip_cell(ms[i], pd, out);
            out.dynamic_layer[i] = pd;
        }
    }
}

}  // namespace

Prediction predict(const TgmMap& map, const TransitionKernel& kernel,
                   const std::optional<CellRect>& region) {
    validate(map, kernel, region);
    const GridGeometry& g = map.geometry;

    Prediction out;
    out.static_layer = map.static_layer;  // Static cells stay where they are.
    out.dynamic_layer = map.dynamic_layer;

    const CellRect rect = region ? *region : CellRect{0, 0, g.width - 1, g.height - 1};
    if (kernel.uniform)
        predict_uniform(map, kernel, rect, out);
    else
        predict_general(map, kernel, rect, out);
    return out;
}

Prediction predict_bruteforce(const TgmMap& map, const TransitionKernel& kernel) {
    validate(map, kernel, std::nullopt);
    const GridGeometry& g = map.geometry;
    const int r = kernel.radius_cells;

    Prediction out;
    out.static_layer = map.static_layer;
    out.dynamic_layer.assign(map.dynamic_layer.size(), 0.0);

    for (int y = 0; y < g.height; ++y) {
        for (int x = 0; x < g.width; ++x) {
            // Staying probability grows with the static mass around cell i.
            double stay = kernel.tau0;
            for (int dy = -r; dy <= r; ++dy) {
                for (int dx = -r; dx <= r; ++dx) {
                    if (dx == 0 && dy == 0) continue;
                    const int kx = x + dx, ky = y + dy;
                    if (kx < 0 || kx >= g.width || ky < 0 || ky >= g.height) continue;
                    stay += kernel.weight(dx, dy) * map.static_layer[ky * g.width + kx];
                }
            }
            // Inflow from dynamic neighbors, gated by this cell not being static.
            double inflow = 0.0;
            for (int dy = -r; dy <= r; ++dy) {
                for (int dx = -r; dx <= r; ++dx) {
                    if (dx == 0 && dy == 0) continue;
                    const int jx = x + dx, jy = y + dy;
                    if (jx < 0 || jx >= g.width || jy < 0 || jy >= g.height) continue;
                    // tau_{j,i} = T[i - j]
                    inflow += kernel.weight(-dx, -dy) * map.dynamic_layer[jy * g.width + jx];
                }
            }
            const int i = y * g.width + x;
            double pd = map.dynamic_layer[i] * stay + (1.0 - map.static_layer[i]) * inflow;
            clip_cell(map.static_layer[i], pd, out);
            out.dynamic_layer[i] = pd;
        }
    }
    return out;
}

}  // namespace tgm
