#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <random>
#include <string>

#include "fdp/image.hpp"
#include "fdp/spectral.hpp"

namespace testutil {

inline fdp::Plane random_plane(int n, std::uint64_t seed, double lo = 0.0,
                               double hi = 255.0) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(lo, hi);
    fdp::Plane p(n, n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) p(r, c) = dist(rng);
    return p;
}

inline fdp::Image random_image(int width, int height, int channels,
                               std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> dist(0, 255);
    fdp::Image img = fdp::Image::make(width, height, channels);
    for (auto& v : img.data) v = static_cast<std::uint8_t>(dist(rng));
    return img;
}

// Natural-texture stand-in: coarse random grid, bilinearly upsampled, plus
// fine detail noise. Smooth large-scale structure with non-trivial block
// energy, which is what the injector needs to tune against.
inline fdp::Image texture_image(int side, std::uint64_t seed, int channels = 3) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coarse(0.0, 255.0);
    std::normal_distribution<double> detail(0.0, 10.0);

    const int grid = 5;  // coarse control points per axis
    fdp::Image img = fdp::Image::make(side, side, channels);
    for (int ch = 0; ch < channels; ++ch) {
        double knots[grid][grid];
        for (auto& row : knots)
            for (double& v : row) v = coarse(rng);
        for (int r = 0; r < side; ++r)
            for (int c = 0; c < side; ++c) {
                const double fr = static_cast<double>(r) / side * (grid - 1);
                const double fc = static_cast<double>(c) / side * (grid - 1);
                const int r0 = static_cast<int>(fr), c0 = static_cast<int>(fc);
                const double tr = fr - r0, tc = fc - c0;
                const double top = knots[r0][c0] * (1 - tc) + knots[r0][c0 + 1] * tc;
                const double bot = knots[r0 + 1][c0] * (1 - tc) + knots[r0 + 1][c0 + 1] * tc;
                const double v = top * (1 - tr) + bot * tr + detail(rng);
                img.at(r, c, ch) =
                    static_cast<std::uint8_t>(std::lround(std::clamp(v, 0.0, 255.0)));
            }
    }
    return img;
}

inline std::filesystem::path temp_dir(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / ("fdp_test_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

}  // namespace testutil
