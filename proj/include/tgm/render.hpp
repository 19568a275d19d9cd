#ifndef TGM_RENDER_HPP
#define TGM_RENDER_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "tgm/grid.hpp"

namespace tgm {

struct Image {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> rgb;  // row-major, 3 bytes per pixel, top row first

    std::uint8_t* pixel(int col, int row) { return &rgb[3 * (row * width + col)]; }
    const std::uint8_t* pixel(int col, int row) const { return &rgb[3 * (row * width + col)]; }
};

// Belief colormap anchors. Blue and orange are complementary per channel
// (they sum to 255), so p_static == p_dynamic always lands on the gray axis.
inline constexpr std::uint8_t kStaticColor[3] = {0, 127, 255};
inline constexpr std::uint8_t kDynamicColor[3] = {255, 128, 0};

/// Per-channel blend: white - p_s*(white - blue) - p_d*(white - orange),
/// rounded half-up. Free cells are white, static blue, dynamic orange.
void belief_to_rgb(const CellBelief& b, std::uint8_t out[3]);

/// Renders the two belief layers to RGB. Image row 0 is the maximum-y map
/// row so the picture keeps conventional map orientation.
Image render_map(const TgmMap& map);

/// Writes a binary P6 pixmap (8-bit).
void write_ppm(const std::string& path, const Image& image);

}  // namespace tgm

#endif  // TGM_RENDER_HPP
