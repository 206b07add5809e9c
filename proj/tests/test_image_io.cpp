#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <fstream>
#include <limits>

#include "fdp/dataset.hpp"
#include "fdp/image.hpp"
#include "fdp/manifest.hpp"
#include "helpers.hpp"

namespace fs = std::filesystem;

TEST_CASE("Image::make and accessors") {
    fdp::Image img = fdp::Image::make(3, 2, 3, 7);
    CHECK(img.data.size() == 18);
    img.at(1, 2, 0) = 200;
    CHECK(img.at(1, 2, 0) == 200);
    CHECK(img.at(0, 0, 0) == 7);
    CHECK(img.same_shape(fdp::Image::make(3, 2, 3)));
    CHECK_FALSE(img.same_shape(fdp::Image::make(2, 3, 3)));
}

TEST_CASE("PPM round trip, including a zero image") {
    const auto dir = testutil::temp_dir("ppm");
    fdp::Image zero = fdp::Image::make(2, 2, 3);
    fdp::save_image(zero, dir / "zero.ppm");
    CHECK(fdp::load_image(dir / "zero.ppm") == zero);

    const fdp::Image img = testutil::random_image(9, 5, 3, 17);
    fdp::save_image(img, dir / "r.ppm");
    CHECK(fdp::load_image(dir / "r.ppm") == img);
}

TEST_CASE("PNG round trip for gray and RGB") {
    const auto dir = testutil::temp_dir("png");
    for (int ch : {1, 3}) {
        const fdp::Image img = testutil::random_image(12, 7, ch, 23 + ch);
        fdp::save_image(img, dir / "a.png");
        CHECK(fdp::load_image(dir / "a.png") == img);
    }
}

TEST_CASE("missing and truncated files are rejected") {
    const auto dir = testutil::temp_dir("bad");
    CHECK_THROWS_AS(fdp::load_image(dir / "absent.png"), fdp::UnreadableFile);

    const fdp::Image img = testutil::random_image(8, 8, 3, 3);
    fdp::save_image(img, dir / "full.png");
    std::ifstream in(dir / "full.png", std::ios::binary);
    std::string bytes((std::istreambuf_iterator<char>(in)), {});
    std::ofstream(dir / "cut.png", std::ios::binary)
        .write(bytes.data(), static_cast<std::streamsize>(bytes.size() / 2));
    CHECK_THROWS_AS(fdp::load_image(dir / "cut.png"), fdp::Error);
}

TEST_CASE("unknown extensions and magic are rejected") {
    const auto dir = testutil::temp_dir("fmt");
    std::ofstream(dir / "noise.bmp", std::ios::binary) << "BMxxxx";
    CHECK_THROWS_AS(fdp::load_image(dir / "noise.bmp"), fdp::UnsupportedFormat);
    CHECK_THROWS_AS(
        fdp::save_image(fdp::Image::make(2, 2, 3), dir / "out.gif"),
        fdp::UnsupportedFormat);
}

TEST_CASE("16-bit inputs are rejected") {
    const auto dir = testutil::temp_dir("deep");

    std::ofstream ppm(dir / "deep.ppm", std::ios::binary);
    ppm << "P6\n2 2\n65535\n";
    for (int i = 0; i < 24; ++i) ppm.put('\0');
    ppm.close();
    CHECK_THROWS_AS(fdp::load_image(dir / "deep.ppm"), fdp::UnsupportedBitDepth);

    static const unsigned char png16[] = {
        0x89, 0x50, 0x4e, 0x47, 0x0d, 0x0a, 0x1a, 0x0a, 0x00, 0x00, 0x00, 0x0d,
        0x49, 0x48, 0x44, 0x52, 0x00, 0x00, 0x00, 0x02, 0x00, 0x00, 0x00, 0x02,
        0x10, 0x00, 0x00, 0x00, 0x00, 0x07, 0x4d, 0x8e, 0xbb, 0x00, 0x00, 0x00,
        0x0f, 0x49, 0x44, 0x41, 0x54, 0x78, 0x9c, 0x63, 0x10, 0x32, 0x11, 0x32,
        0x61, 0x00, 0x11, 0x00, 0x05, 0x3e, 0x01, 0x19, 0x8f, 0x13, 0x1a, 0x21,
        0x00, 0x00, 0x00, 0x00, 0x49, 0x45, 0x4e, 0x44, 0xae, 0x42, 0x60, 0x82};
    std::ofstream(dir / "deep.png", std::ios::binary)
        .write(reinterpret_cast<const char*>(png16), sizeof(png16));
    CHECK_THROWS_AS(fdp::load_image(dir / "deep.png"), fdp::UnsupportedBitDepth);
}

static void write_png(const fs::path& p, int w, int h, std::uint64_t seed) {
    fdp::save_image(testutil::random_image(w, h, 3, seed), p);
}

TEST_CASE("load_dataset walks class subdirectories deterministically") {
    const auto dir = testutil::temp_dir("ds");
    fs::create_directories(dir / "dog");
    fs::create_directories(dir / "cat");
    write_png(dir / "cat" / "b.png", 8, 8, 1);
    write_png(dir / "cat" / "a.png", 8, 8, 2);
    write_png(dir / "dog" / "x.png", 8, 8, 3);
    write_png(dir / "dog" / "m.png", 8, 8, 4);

    const fdp::LabeledDataset ds = fdp::load_dataset(dir);
    REQUIRE(ds.samples.size() == 4);
    CHECK(ds.class_names == std::vector<std::string>{"cat", "dog"});
    CHECK(ds.samples[0].rel_path == "cat/a.png");
    CHECK(ds.samples[1].rel_path == "cat/b.png");
    CHECK(ds.samples[2].rel_path == "dog/m.png");
    CHECK(ds.samples[3].rel_path == "dog/x.png");
    CHECK(ds.samples[0].class_index == 0);
    CHECK(ds.samples[3].class_index == 1);

    const fdp::LabeledDataset again = fdp::load_dataset(dir);
    for (std::size_t i = 0; i < ds.samples.size(); ++i) {
        CHECK(again.samples[i].rel_path == ds.samples[i].rel_path);
        CHECK(again.samples[i].image == ds.samples[i].image);
    }
}

TEST_CASE("load_dataset rejects empty and mixed-size trees") {
    const auto empty = testutil::temp_dir("ds_empty");
    CHECK_THROWS_AS(fdp::load_dataset(empty), fdp::EmptyDataset);

    const auto mixed = testutil::temp_dir("ds_mixed");
    fs::create_directories(mixed / "a");
    write_png(mixed / "a" / "one.png", 32, 32, 5);
    write_png(mixed / "a" / "two.png", 31, 32, 6);
    CHECK_THROWS_AS(fdp::load_dataset(mixed), fdp::MixedDimensions);
}

TEST_CASE("manifest round trip preserves records and key order") {
    const auto dir = testutil::temp_dir("manifest");

    fdp::write_manifest({}, dir / "empty.json");
    {
        std::ifstream in(dir / "empty.json");
        std::string text((std::istreambuf_iterator<char>(in)), {});
        CHECK(text.find('[') != std::string::npos);
        CHECK(fdp::read_manifest(dir / "empty.json").empty());
    }

    fdp::PoisonRecord rec;
    rec.source_id = "cat/a.png";
    rec.target_class = 5;
    rec.block_index = 0;
    rec.channel = 1;
    rec.orientation = fdp::Orientation::vertical;
    rec.coefficient = 3.75;
    rec.psnr_db = 41.25;
    rec.tuner_iterations = 6;

    fdp::PoisonRecord inf_rec = rec;
    inf_rec.source_id = "dog/x.png";
    inf_rec.psnr_db = std::numeric_limits<double>::infinity();

    fdp::write_manifest({rec, inf_rec}, dir / "m.json");
    const auto back = fdp::read_manifest(dir / "m.json");
    REQUIRE(back.size() == 2);
    CHECK(back[0] == rec);
    CHECK(back[1].source_id == "dog/x.png");
    CHECK(std::isinf(back[1].psnr_db));

    std::ifstream in(dir / "m.json");
    std::string text((std::istreambuf_iterator<char>(in)), {});
    CHECK(text.find("source_id") < text.find("target_class"));
    CHECK(text.find("target_class") < text.find("block_index"));
    CHECK(text.find("block_index") < text.find("channel"));
    CHECK(text.find("channel") < text.find("orientation"));
    CHECK(text.find("orientation") < text.find("coefficient"));
    CHECK(text.find("coefficient") < text.find("psnr_db"));
    CHECK(text.find("psnr_db") < text.find("tuner_iterations"));
}
