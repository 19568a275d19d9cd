#include "tgm/render.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace tgm {

namespace {

std::uint8_t round_half_up(double v) {
    if (v <= 0.0) return 0;
    if (v >= 255.0) return 255;
    return static_cast<std::uint8_t>(std::floor(v + 0.5));
}

}  // namespace

void belief_to_rgb(const CellBelief& b, std::uint8_t out[3]) {
    for (int ch = 0; ch < 3; ++ch) {
        const double v = 255.0 - b.p_static * (255.0 - kStaticColor[ch]) -
                         b.p_dynamic * (255.0 - kDynamicColor[ch]);
        out[ch] = round_half_up(v);
    }
}

Image render_map(const TgmMap& map) {
    Image img;
    img.width = map.geometry.width;
    img.height = map.geometry.height;
    img.rgb.resize(static_cast<std::size_t>(img.width) * img.height * 3);
    for (int y = 0; y < img.height; ++y) {
        const int row = img.height - 1 - y;  // max-y map row on top
        for (int x = 0; x < img.width; ++x) {
            belief_to_rgb(map.belief_at({x, y}), img.pixel(x, row));
        }
    }
    return img;
}

void write_ppm(const std::string& path, const Image& image) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("write_ppm: cannot open " + path);
    char header[64];
    const int n = std::snprintf(header, sizeof(header), "P6\n%d %d\n255\n", image.width, image.height);
    out.write(header, n);
    out.write(reinterpret_cast<const char*>(image.rgb.data()),
              static_cast<std::streamsize>(image.rgb.size()));
    if (!out) throw std::runtime_error("write_ppm: write failed for " + path);
}

}  // namespace tgm
