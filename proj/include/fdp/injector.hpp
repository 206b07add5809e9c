#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>

#include "fdp/image.hpp"
#include "fdp/layout.hpp"
#include "fdp/manifest.hpp"
#include "fdp/spectral.hpp"
#include "fdp/tuner.hpp"

namespace fdp {

struct TriggerImage {
    Plane plane;         // l0 x l0, values in [0, 255]
    std::string source;  // file path or "seed:<n>"
};

constexpr std::uint64_t kDefaultTriggerSeed = 9001;

// Deterministic pseudo-random texture, uniform over [0, 60]. The low range
// keeps fixed-coefficient (untuned) injection inside the visibility budget.
TriggerImage make_trigger(int side, std::uint64_t seed = kDefaultTriggerSeed);

// User-supplied trigger; must match the block side, gray values are taken
// from the first channel.
TriggerImage load_trigger(const std::filesystem::path& path, int side);

// Pipeline stage toggles, mirroring the ablation steps. All on = the full
// pipeline; stages 1..4 progressively disable tuning, morphology, singular
// value fusion and wavelet feature extraction.
struct StageToggles {
    bool dynamic_tuning = true;
    bool morphology = true;
    bool svd_fusion = true;
    bool dwt_extraction = true;
    double fixed_k = 2.5;  // used when dynamic_tuning is off
};

// Frequency-domain injection on one plane: FFT both inputs, add K-scaled
// trigger diagonal subbands onto the clean ones, fuse via singular values
// (clean vectors, summed values), rebuild the amplitude spectrum, clamp at 0
// and inverse FFT with the clean phase. Output is real, unquantized.
Plane inject_frequency(const Plane& clean_plane, const TriggerImage& trigger,
                       double k, bool clamp_amplitude = true,
                       bool svd_fusion = true);

// Ablation stage 4 variant: direct amplitude superposition, no DWT.
Plane inject_amplitude_overlay(const Plane& clean_plane,
                               const TriggerImage& trigger, double k,
                               bool clamp_amplitude = true);

// Pixel-space two-level wavelet surgery: keep only the orientation's detail
// subbands from the poisoned block, everything else from the clean block.
Plane constrain_morphology(const Plane& poisoned_block, const Plane& clean_block,
                           Orientation orientation);

Plane extract_block(const Image& image, const BlockSpec& spec);

// Writes the plane back into the assigned block and channel, clamped to
// [0, 255] and rounded half-to-even. All other samples are untouched.
Image embed_block(const Image& image, const BlockSpec& spec, const Plane& new_plane);

// Full per-sample pipeline: target -> spec, tuner-chosen K, injection,
// morphology constraint, embedding. Deterministic for fixed inputs.
std::pair<Image, PoisonRecord> poison_sample(const Image& image, int target,
                                             const TriggerImage& trigger,
                                             const GridConfig& grid,
                                             const TunerConfig& tune,
                                             const StageToggles& stages = {},
                                             const std::string& source_id = "");

}  // namespace fdp
