#pragma once

#include <string>
#include <utility>
#include <vector>

#include "fdp/errors.hpp"

namespace fdp {

enum class Orientation { horizontal, vertical };

inline const char* to_string(Orientation o) {
    return o == Orientation::horizontal ? "horizontal" : "vertical";
}
Orientation orientation_from_string(const std::string& s);

struct GridConfig {
    int image_height = 32;
    int image_width = 32;
    int block_side = 8;   // must be a multiple of 4 (two-level Haar)
    int num_classes = 0;  // attack targets; at most capacity()

    int grid_rows() const { return image_height / (2 * block_side); }
    int grid_cols() const { return image_width / (2 * block_side); }
    int blocks_per_channel() const { return grid_rows() * grid_cols(); }
    int capacity() const { return 3 * blocks_per_channel(); }

    void validate() const;  // throws ConfigError / CapacityExceeded
};

// The unique (block, channel, morphology) assignment for one target class.
struct BlockSpec {
    int target_class = 1;  // 1-based
    int block_index = 0;
    int channel = 0;  // 0:B, 1:R, 2:G
    int row = 0;      // block origin, top-left
    int col = 0;
    int side = 8;
    Orientation orientation = Orientation::horizontal;
};

// Index of the assignment's channel inside interleaved R,G,B pixel data.
inline int rgb_index(int channel) {
    static constexpr int map[3] = {2, 0, 1};  // B, R, G
    return map[channel];
}

// Block origins on the 2*l0-stride grid, row-major. Each block occupies the
// top-left l0 x l0 quadrant of its 2*l0 cell.
std::vector<std::pair<int, int>> block_grid(const GridConfig& cfg);

BlockSpec target_to_spec(int target, const GridConfig& cfg);

// Asserts the 2*l0 spacing contract; exact tiling (remainder 0) is accepted.
void validate_spacing(const GridConfig& cfg);

}  // namespace fdp
