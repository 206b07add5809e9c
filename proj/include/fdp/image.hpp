#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "fdp/errors.hpp"

namespace fdp {

// 8-bit raster, row-major, interleaved channels (R,G,B order for 3-channel).
struct Image {
    int width = 0;
    int height = 0;
    int channels = 0;  // 1 or 3
    std::vector<std::uint8_t> data;

    static Image make(int width, int height, int channels, std::uint8_t fill = 0);

    std::uint8_t& at(int row, int col, int ch) {
        return data[static_cast<std::size_t>((row * width + col) * channels + ch)];
    }
    std::uint8_t at(int row, int col, int ch) const {
        return data[static_cast<std::size_t>((row * width + col) * channels + ch)];
    }
    bool same_shape(const Image& other) const {
        return width == other.width && height == other.height && channels == other.channels;
    }
    bool operator==(const Image& other) const = default;
};

// PNG (8-bit gray/RGB) or binary PPM (P6). 16-bit inputs are rejected.
Image load_image(const std::filesystem::path& path);

// Format chosen by extension: .png or .ppm/.pnm.
void save_image(const Image& image, const std::filesystem::path& path);

}  // namespace fdp
