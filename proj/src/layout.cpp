#include "fdp/layout.hpp"

#include <algorithm>

namespace fdp {

Orientation orientation_from_string(const std::string& s) {
    if (s == "horizontal") return Orientation::horizontal;
    if (s == "vertical") return Orientation::vertical;
    throw ConfigError("unknown orientation: " + s);
}

void GridConfig::validate() const {
    if (block_side < 4 || block_side % 4 != 0)
        throw ConfigError("block side must be a positive multiple of 4");
    if (image_height < 2 * block_side || image_width < 2 * block_side)
        throw ConfigError("image smaller than one 2*l0 grid cell");
    if (num_classes > capacity())
        throw CapacityExceeded("targets (" + std::to_string(num_classes) +
                               ") exceed grid capacity (" + std::to_string(capacity()) + ")");
}

std::vector<std::pair<int, int>> block_grid(const GridConfig& cfg) {
    cfg.validate();
    const int stride = 2 * cfg.block_side;
    std::vector<std::pair<int, int>> origins;
    origins.reserve(static_cast<std::size_t>(cfg.blocks_per_channel()));
    for (int n1 = 0; n1 < cfg.grid_rows(); ++n1)
        for (int n2 = 0; n2 < cfg.grid_cols(); ++n2)
            origins.emplace_back(n1 * stride, n2 * stride);
    return origins;
}

BlockSpec target_to_spec(int target, const GridConfig& cfg) {
    cfg.validate();
    const int limit = std::min(cfg.num_classes > 0 ? cfg.num_classes : cfg.capacity(),
                               cfg.capacity());
    if (target < 1 || target > limit)
        throw TargetOutOfRange("target " + std::to_string(target) +
                               " outside 1.." + std::to_string(limit));

    const int per_channel = cfg.blocks_per_channel();
    const int t0 = target - 1;  // zero-based so the channel stays in {0,1,2}
    const int block = t0 % per_channel;
    const int channel = t0 / per_channel;

    const int n1 = block / cfg.grid_cols();
    const int n2 = block % cfg.grid_cols();

    BlockSpec spec;
    spec.target_class = target;
    spec.block_index = block;
    spec.channel = channel;
    spec.row = n1 * 2 * cfg.block_side;
    spec.col = n2 * 2 * cfg.block_side;
    spec.side = cfg.block_side;
    spec.orientation = (n1 + n2) % 2 == 0 ? Orientation::horizontal
                                          : Orientation::vertical;
    return spec;
}

void validate_spacing(const GridConfig& cfg) {
    const int stride = 2 * cfg.block_side;
    if (cfg.grid_rows() < 1 || cfg.grid_cols() < 1)
        throw SpacingViolation("no complete grid cell fits the image");
    // Exact tiling is fine; otherwise the leftover margin must fit one block.
    const int rem_h = cfg.image_height % stride;
    const int rem_w = cfg.image_width % stride;
    if (rem_h != 0 && rem_h < cfg.block_side)
        throw SpacingViolation("height remainder " + std::to_string(rem_h) +
                               " below block side");
    if (rem_w != 0 && rem_w < cfg.block_side)
        throw SpacingViolation("width remainder " + std::to_string(rem_w) +
                               " below block side");
}

}  // namespace fdp
