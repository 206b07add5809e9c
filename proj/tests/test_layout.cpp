#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cstdlib>
#include <set>
#include <string>
#include <utility>

#include "fdp/layout.hpp"

using fdp::GridConfig;
using fdp::Orientation;

static GridConfig cifar_grid(int classes = 12) {
    return GridConfig{32, 32, 8, classes};
}

TEST_CASE("block_grid enumerates 2*l0-stride origins row-major") {
    const auto origins = fdp::block_grid(cifar_grid());
    REQUIRE(origins.size() == 4);
    CHECK(origins[0] == std::pair{0, 0});
    CHECK(origins[1] == std::pair{0, 16});
    CHECK(origins[2] == std::pair{16, 0});
    CHECK(origins[3] == std::pair{16, 16});

    CHECK(fdp::block_grid(GridConfig{64, 64, 8, 48}).size() == 16);
    CHECK(fdp::block_grid(GridConfig{256, 256, 12, 300}).size() == 100);
}

TEST_CASE("capacity is three blocks-per-channel") {
    CHECK(cifar_grid().capacity() == 12);
    CHECK(GridConfig{64, 64, 8, 1}.capacity() == 48);
    CHECK(GridConfig{256, 256, 12, 1}.capacity() == 300);
}

TEST_CASE("validate rejects bad configs") {
    CHECK_THROWS_AS((GridConfig{32, 32, 6, 4}.validate()), fdp::ConfigError);
    CHECK_THROWS_AS((GridConfig{32, 32, 8, 13}.validate()), fdp::CapacityExceeded);
    CHECK_NOTHROW(cifar_grid().validate());
}

TEST_CASE("target_to_spec golden assignments") {
    const GridConfig cfg = cifar_grid();

    const auto t1 = fdp::target_to_spec(1, cfg);
    CHECK(t1.block_index == 0);
    CHECK(t1.row == 0);
    CHECK(t1.col == 0);
    CHECK(t1.channel == 0);  // blue first
    CHECK(t1.orientation == Orientation::horizontal);

    const auto t5 = fdp::target_to_spec(5, cfg);
    CHECK(t5.block_index == 0);
    CHECK(t5.channel == 1);  // red second
    CHECK(t5.orientation == Orientation::horizontal);

    const auto t12 = fdp::target_to_spec(12, cfg);
    CHECK(t12.block_index == 3);
    CHECK(t12.row == 16);
    CHECK(t12.col == 16);
    CHECK(t12.channel == 2);  // green last
    CHECK(t12.orientation == Orientation::horizontal);
}

TEST_CASE("orientation alternates on a checkerboard") {
    const GridConfig cfg{64, 64, 8, 48};
    for (int t = 1; t <= 48; ++t) {
        const auto spec = fdp::target_to_spec(t, cfg);
        const int n1 = spec.row / 16, n2 = spec.col / 16;
        const auto expected = (n1 + n2) % 2 == 0 ? Orientation::horizontal
                                                 : Orientation::vertical;
        CHECK(spec.orientation == expected);
    }
}

TEST_CASE("target_to_spec is injective and channel-ordered over all geometries") {
    for (const GridConfig cfg : {cifar_grid(), GridConfig{64, 64, 8, 48},
                                 GridConfig{256, 256, 12, 300}}) {
        std::set<std::pair<int, int>> seen;
        for (int t = 1; t <= cfg.num_classes; ++t) {
            const auto spec = fdp::target_to_spec(t, cfg);
            CHECK(seen.insert({spec.block_index, spec.channel}).second);
            CHECK(spec.channel >= 0);
            CHECK(spec.channel <= 2);
            CHECK(spec.row + spec.side <= cfg.image_height);
            CHECK(spec.col + spec.side <= cfg.image_width);
            // channel exhausts blocks in B, R, G order
            CHECK(spec.channel == (t - 1) / cfg.blocks_per_channel());
        }
        CHECK(static_cast<int>(seen.size()) == cfg.num_classes);
    }
}

TEST_CASE("target_to_spec is deterministic") {
    const auto a = fdp::target_to_spec(7, cifar_grid());
    const auto b = fdp::target_to_spec(7, cifar_grid());
    CHECK(a.block_index == b.block_index);
    CHECK(a.channel == b.channel);
    CHECK(a.row == b.row);
    CHECK(a.col == b.col);
    CHECK(a.orientation == b.orientation);
}

TEST_CASE("target_to_spec range checks") {
    CHECK_THROWS_AS(fdp::target_to_spec(0, cifar_grid()), fdp::TargetOutOfRange);
    CHECK_THROWS_AS(fdp::target_to_spec(13, cifar_grid()), fdp::TargetOutOfRange);
}

TEST_CASE("blocks within a channel are separated by at least l0") {
    const GridConfig cfg{64, 64, 8, 48};
    const auto origins = fdp::block_grid(cfg);
    for (std::size_t a = 0; a < origins.size(); ++a)
        for (std::size_t b = a + 1; b < origins.size(); ++b) {
            const int dr = std::abs(origins[a].first - origins[b].first);
            const int dc = std::abs(origins[a].second - origins[b].second);
            // edge-to-edge gap along the separating axis
            CHECK(std::max(dr, dc) - cfg.block_side >= cfg.block_side);
        }
}

TEST_CASE("validate_spacing accepts exact tiling and wide remainders") {
    CHECK_NOTHROW(fdp::validate_spacing(GridConfig{32, 32, 8, 12}));
    CHECK_NOTHROW(fdp::validate_spacing(GridConfig{64, 64, 8, 48}));
    CHECK_NOTHROW(fdp::validate_spacing(GridConfig{30, 30, 8, 3}));  // 30 % 16 = 14 >= 8
    CHECK_THROWS_AS(fdp::validate_spacing(GridConfig{36, 36, 8, 12}),
                    fdp::SpacingViolation);  // 36 % 16 = 4 < 8
}

TEST_CASE("rgb_index maps spec channels into interleaved data") {
    CHECK(fdp::rgb_index(0) == 2);
    CHECK(fdp::rgb_index(1) == 0);
    CHECK(fdp::rgb_index(2) == 1);
}

TEST_CASE("orientation string round trip") {
    CHECK(fdp::orientation_from_string("horizontal") == Orientation::horizontal);
    CHECK(fdp::orientation_from_string("vertical") == Orientation::vertical);
    CHECK(std::string(fdp::to_string(Orientation::vertical)) == "vertical");
    CHECK_THROWS_AS(fdp::orientation_from_string("diagonal"), fdp::ConfigError);
}
