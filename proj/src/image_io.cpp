#include "fdp/image.hpp"
#include "fdp/dataset.hpp"

#include <png.h>

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <cstring>
#include <memory>

namespace fdp {

namespace fs = std::filesystem;

Image Image::make(int width, int height, int channels, std::uint8_t fill) {
    Image img;
    img.width = width;
    img.height = height;
    img.channels = channels;
    img.data.assign(static_cast<std::size_t>(width) * height * channels, fill);
    return img;
}

namespace {

struct FileCloser {
    void operator()(std::FILE* f) const {
        if (f) std::fclose(f);
    }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

std::string lower_ext(const fs::path& path) {
    std::string ext = path.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return ext;
}

// --- PPM (binary P6) ---

int ppm_next_token(std::FILE* f, char* buf, int cap) {
    int c;
    do {
        c = std::fgetc(f);
        if (c == '#') {  // comment to end of line
            while (c != EOF && c != '\n') c = std::fgetc(f);
        }
    } while (c != EOF && std::isspace(c));
    int n = 0;
    while (c != EOF && !std::isspace(c) && n < cap - 1) {
        buf[n++] = static_cast<char>(c);
        c = std::fgetc(f);
    }
    buf[n] = '\0';
    return n;
}

Image load_ppm(const fs::path& path) {
    FilePtr f(std::fopen(path.string().c_str(), "rb"));
    if (!f) throw UnreadableFile("cannot open " + path.string());

    char tok[32];
    if (ppm_next_token(f.get(), tok, sizeof tok) == 0)
        throw UnreadableFile("empty file: " + path.string());
    if (std::strcmp(tok, "P6") != 0)
        throw UnsupportedFormat("not a P6 PPM: " + path.string());

    long dims[3];
    for (long& d : dims) {
        if (ppm_next_token(f.get(), tok, sizeof tok) == 0)
            throw UnreadableFile("truncated PPM header: " + path.string());
        char* end = nullptr;
        d = std::strtol(tok, &end, 10);
        if (end == tok || d <= 0)
            throw UnreadableFile("bad PPM header value: " + path.string());
    }
    if (dims[2] != 255) {
        if (dims[2] > 255)
            throw UnsupportedBitDepth("PPM maxval > 255: " + path.string());
        throw UnsupportedFormat("PPM maxval must be 255: " + path.string());
    }

    Image img = Image::make(static_cast<int>(dims[0]), static_cast<int>(dims[1]), 3);
    if (std::fread(img.data.data(), 1, img.data.size(), f.get()) != img.data.size())
        throw UnreadableFile("truncated PPM data: " + path.string());
    return img;
}

void save_ppm(const Image& image, const fs::path& path) {
    if (image.channels != 3)
        throw UnsupportedFormat("PPM P6 requires 3 channels");
    FilePtr f(std::fopen(path.string().c_str(), "wb"));
    if (!f) throw IoError("cannot write " + path.string());
    std::fprintf(f.get(), "P6\n%d %d\n255\n", image.width, image.height);
    if (std::fwrite(image.data.data(), 1, image.data.size(), f.get()) != image.data.size())
        throw IoError("short write: " + path.string());
}

// --- PNG via libpng ---

Image load_png(const fs::path& path) {
    FilePtr f(std::fopen(path.string().c_str(), "rb"));
    if (!f) throw UnreadableFile("cannot open " + path.string());

    png_byte header[8];
    if (std::fread(header, 1, 8, f.get()) != 8 || png_sig_cmp(header, 0, 8))
        throw UnreadableFile("not a PNG: " + path.string());

    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png ? png_create_info_struct(png) : nullptr;
    if (!png || !info) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw UnreadableFile("libpng init failed");
    }

    Image img;
    int bit_depth = 0;
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        if (bit_depth == 16)
            throw UnsupportedBitDepth("16-bit PNG rejected: " + path.string());
        throw UnreadableFile("corrupt PNG: " + path.string());
    }

    png_init_io(png, f.get());
    png_set_sig_bytes(png, 8);
    png_read_info(png, info);

    bit_depth = png_get_bit_depth(png, info);
    if (bit_depth == 16) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw UnsupportedBitDepth("16-bit PNG rejected: " + path.string());
    }

    int color_type = png_get_color_type(png, info);
    if (color_type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
    if (color_type == PNG_COLOR_TYPE_GRAY && bit_depth < 8)
        png_set_expand_gray_1_2_4_to_8(png);
    if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
    if (color_type & PNG_COLOR_MASK_ALPHA) png_set_strip_alpha(png);
    png_read_update_info(png, info);

    const int width = static_cast<int>(png_get_image_width(png, info));
    const int height = static_cast<int>(png_get_image_height(png, info));
    const int channels = static_cast<int>(png_get_channels(png, info));
    if (channels != 1 && channels != 3) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw UnsupportedFormat("unsupported PNG channel count: " + path.string());
    }

    img = Image::make(width, height, channels);
    std::vector<png_bytep> rows(static_cast<std::size_t>(height));
    const std::size_t stride = static_cast<std::size_t>(width) * channels;
    for (int r = 0; r < height; ++r)
        rows[static_cast<std::size_t>(r)] = img.data.data() + r * stride;
    png_read_image(png, rows.data());
    png_read_end(png, nullptr);
    png_destroy_read_struct(&png, &info, nullptr);
    return img;
}

void save_png(const Image& image, const fs::path& path) {
    FilePtr f(std::fopen(path.string().c_str(), "wb"));
    if (!f) throw IoError("cannot write " + path.string());

    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png ? png_create_info_struct(png) : nullptr;
    if (!png || !info) {
        png_destroy_write_struct(&png, &info);
        throw IoError("libpng init failed");
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        throw IoError("PNG write failed: " + path.string());
    }

    png_init_io(png, f.get());
    const int color_type =
        image.channels == 1 ? PNG_COLOR_TYPE_GRAY : PNG_COLOR_TYPE_RGB;
    png_set_IHDR(png, info, static_cast<png_uint_32>(image.width),
                 static_cast<png_uint_32>(image.height), 8, color_type,
                 PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
                 PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);

    std::vector<png_bytep> rows(static_cast<std::size_t>(image.height));
    const std::size_t stride = static_cast<std::size_t>(image.width) * image.channels;
    for (int r = 0; r < image.height; ++r)
        rows[static_cast<std::size_t>(r)] =
            const_cast<png_bytep>(image.data.data() + r * stride);
    png_write_image(png, rows.data());
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
}

bool is_supported_file(const fs::path& path) {
    const std::string ext = lower_ext(path);
    return ext == ".png" || ext == ".ppm" || ext == ".pnm";
}

}  // namespace

Image load_image(const fs::path& path) {
    if (!fs::exists(path)) throw UnreadableFile("no such file: " + path.string());
    const std::string ext = lower_ext(path);
    if (ext == ".png") return load_png(path);
    if (ext == ".ppm" || ext == ".pnm") return load_ppm(path);
    throw UnsupportedFormat("unsupported extension: " + path.string());
}

void save_image(const Image& image, const fs::path& path) {
    if (image.channels != 1 && image.channels != 3)
        throw UnsupportedFormat("images must have 1 or 3 channels");
    const std::string ext = lower_ext(path);
    if (ext == ".png")
        save_png(image, path);
    else if (ext == ".ppm" || ext == ".pnm")
        save_ppm(image, path);
    else
        throw UnsupportedFormat("unsupported extension: " + path.string());
}

LabeledDataset load_dataset(const fs::path& root_dir) {
    if (!fs::is_directory(root_dir))
        throw EmptyDataset("not a directory: " + root_dir.string());

    std::vector<std::string> classes;
    for (const auto& entry : fs::directory_iterator(root_dir))
        if (entry.is_directory()) classes.push_back(entry.path().filename().string());
    std::sort(classes.begin(), classes.end());
    if (classes.empty()) throw EmptyDataset("no class directories in " + root_dir.string());

    LabeledDataset ds;
    ds.root = root_dir;
    ds.class_names = classes;

    for (std::size_t ci = 0; ci < classes.size(); ++ci) {
        std::vector<fs::path> files;
        for (const auto& entry : fs::directory_iterator(root_dir / classes[ci]))
            if (entry.is_regular_file() && is_supported_file(entry.path()))
                files.push_back(entry.path());
        std::sort(files.begin(), files.end());
        for (const auto& file : files) {
            Sample s;
            s.image = load_image(file);
            s.class_index = static_cast<int>(ci);
            s.rel_path = classes[ci] + "/" + file.filename().string();
            if (!ds.samples.empty() && !s.image.same_shape(ds.samples.front().image))
                throw MixedDimensions("dimension mismatch at " + s.rel_path);
            ds.samples.push_back(std::move(s));
        }
    }
    if (ds.samples.empty()) throw EmptyDataset("no images under " + root_dir.string());
    return ds;
}

}  // namespace fdp
