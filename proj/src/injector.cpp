#include "fdp/injector.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "fdp/metrics.hpp"

namespace fdp {

TriggerImage make_trigger(int side, std::uint64_t seed) {
    // Uniform noise over a deliberately low range. The injection strength at
    // a fixed coefficient scales with the trigger's mean (its spectral DC
    // sits in the diagonal subbands of the amplitude pyramid), and a
    // full-range trigger would blow past the visibility budget at the
    // literature's manual coefficients (K around 2.5).
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(0.0, 60.0);
    TriggerImage trigger;
    trigger.plane = Plane(side, side);
    for (int r = 0; r < side; ++r)
        for (int c = 0; c < side; ++c) trigger.plane(r, c) = dist(rng);
    trigger.source = "seed:" + std::to_string(seed);
    return trigger;
}

TriggerImage load_trigger(const std::filesystem::path& path, int side) {
    const Image img = load_image(path);
    if (img.width != side || img.height != side)
        throw ShapeMismatch("trigger image must be " + std::to_string(side) + "x" +
                            std::to_string(side));
    TriggerImage trigger;
    trigger.plane = Plane(side, side);
    for (int r = 0; r < side; ++r)
        for (int c = 0; c < side; ++c)
            trigger.plane(r, c) = static_cast<double>(img.at(r, c, 0));
    trigger.source = path.string();
    return trigger;
}

namespace {

// Singular value fusion: clean vectors carry the summed singular values.
Plane fuse_hh(const Plane& hh_clean, const Plane& hh_trigger, double k, bool svd_fusion) {
    const Plane hh_add = hh_clean + k * hh_trigger;
    if (!svd_fusion) return hh_add;  // ablation stage 3: direct overwrite
    const SvdTriple clean = svd(hh_clean);
    const SvdTriple added = svd(hh_add);
    return recompose(clean.u, added.d, clean.vt);
}

}  // namespace

Plane inject_frequency(const Plane& clean_plane, const TriggerImage& trigger,
                       double k, bool clamp_amplitude, bool svd_fusion) {
    if (clean_plane.rows() != trigger.plane.rows() ||
        clean_plane.cols() != trigger.plane.cols())
        throw ShapeMismatch("inject_frequency: clean/trigger shapes disagree");
    if (k < 0.0) throw ConfigError("inject_frequency: coefficient must be >= 0");

    const Spectrum spec_c = fft2(clean_plane);
    const Spectrum spec_t = fft2(trigger.plane);

    SubbandPyramid pyr = dwt2(spec_c.amplitude);
    const SubbandPyramid pyr_t = dwt2(spec_t.amplitude);

    pyr.level1.hh = fuse_hh(pyr.level1.hh, pyr_t.level1.hh, k, svd_fusion);
    pyr.level2.hh = fuse_hh(pyr.level2.hh, pyr_t.level2.hh, k, svd_fusion);

    Plane amplitude = idwt2(pyr);
    if (clamp_amplitude) amplitude = amplitude.cwiseMax(0.0);
    return ifft2(Spectrum{std::move(amplitude), spec_c.phase});
}

Plane inject_amplitude_overlay(const Plane& clean_plane, const TriggerImage& trigger,
                               double k, bool clamp_amplitude) {
    if (clean_plane.rows() != trigger.plane.rows() ||
        clean_plane.cols() != trigger.plane.cols())
        throw ShapeMismatch("inject_amplitude_overlay: shapes disagree");
    const Spectrum spec_c = fft2(clean_plane);
    const Spectrum spec_t = fft2(trigger.plane);
    Plane amplitude = spec_c.amplitude + k * spec_t.amplitude;
    if (clamp_amplitude) amplitude = amplitude.cwiseMax(0.0);
    return ifft2(Spectrum{std::move(amplitude), spec_c.phase});
}

Plane constrain_morphology(const Plane& poisoned_block, const Plane& clean_block,
                           Orientation orientation) {
    if (poisoned_block.rows() != clean_block.rows() ||
        poisoned_block.cols() != clean_block.cols())
        throw ShapeMismatch("constrain_morphology: shapes disagree");

    SubbandPyramid pyr = dwt2(clean_block);
    const SubbandPyramid poisoned = dwt2(poisoned_block);
    if (orientation == Orientation::horizontal) {
        pyr.level1.lh = poisoned.level1.lh;
        pyr.level2.lh = poisoned.level2.lh;
    } else {
        pyr.level1.hl = poisoned.level1.hl;
        pyr.level2.hl = poisoned.level2.hl;
    }
    return idwt2(pyr);
}

namespace {

int data_channel(const Image& image, const BlockSpec& spec) {
    return image.channels == 3 ? rgb_index(spec.channel) : 0;
}

}  // namespace

Plane extract_block(const Image& image, const BlockSpec& spec) {
    if (spec.row < 0 || spec.col < 0 || spec.row + spec.side > image.height ||
        spec.col + spec.side > image.width)
        throw SpecOutOfBounds("block does not fit the image");
    const int ch = data_channel(image, spec);
    Plane out(spec.side, spec.side);
    for (int r = 0; r < spec.side; ++r)
        for (int c = 0; c < spec.side; ++c)
            out(r, c) = static_cast<double>(image.at(spec.row + r, spec.col + c, ch));
    return out;
}

Image embed_block(const Image& image, const BlockSpec& spec, const Plane& new_plane) {
    if (spec.row < 0 || spec.col < 0 || spec.row + spec.side > image.height ||
        spec.col + spec.side > image.width)
        throw SpecOutOfBounds("block does not fit the image");
    if (new_plane.rows() != spec.side || new_plane.cols() != spec.side)
        throw ShapeMismatch("embed_block: plane does not match the block side");

    const int ch = data_channel(image, spec);
    Image out = image;
    for (int r = 0; r < spec.side; ++r)
        for (int c = 0; c < spec.side; ++c) {
            const double v = std::clamp(new_plane(r, c), 0.0, 255.0);
            // nearbyint under the default rounding mode: half-to-even.
            out.at(spec.row + r, spec.col + c, ch) =
                static_cast<std::uint8_t>(std::nearbyint(v));
        }
    return out;
}

std::pair<Image, PoisonRecord> poison_sample(const Image& image, int target,
                                             const TriggerImage& trigger,
                                             const GridConfig& grid,
                                             const TunerConfig& tune,
                                             const StageToggles& stages,
                                             const std::string& source_id) {
    GridConfig cfg = grid;
    if (cfg.image_height == 0) cfg.image_height = image.height;
    if (cfg.image_height != image.height || cfg.image_width != image.width)
        throw ShapeMismatch("grid config does not match the image dimensions");

    const BlockSpec spec = target_to_spec(target, cfg);
    const Plane clean_block = extract_block(image, spec);

    const auto render = [&](double k) {
        Plane injected = stages.dwt_extraction
                             ? inject_frequency(clean_block, trigger, k,
                                                /*clamp_amplitude=*/true,
                                                stages.svd_fusion)
                             : inject_amplitude_overlay(clean_block, trigger, k);
        if (stages.morphology)
            injected = constrain_morphology(injected, clean_block, spec.orientation);
        return embed_block(image, spec, injected);
    };

    PoisonRecord record;
    record.source_id = source_id;
    record.target_class = target;
    record.block_index = spec.block_index;
    record.channel = spec.channel;
    record.orientation = spec.orientation;

    Image poisoned;
    if (stages.dynamic_tuning) {
        const TuneResult result = tune_k(image, render, tune);
        record.coefficient = result.coefficient;
        record.psnr_db = result.psnr_db;
        record.tuner_iterations = result.iterations;
        poisoned = render(result.coefficient);
    } else {
        record.coefficient = stages.fixed_k;
        record.tuner_iterations = 0;
        poisoned = render(stages.fixed_k);
        record.psnr_db = psnr(image, poisoned);
    }
    return {std::move(poisoned), std::move(record)};
}

}  // namespace fdp
