#pragma once

#include <functional>

#include "fdp/image.hpp"

namespace fdp {

struct TunerConfig {
    double p0 = 40.0;  // dB, lower PSNR threshold
    double p1 = 42.0;  // dB, upper PSNR threshold
    double k_min = 0.1;
    double k_max = 40.0;
    int max_iter = 20;

    void validate() const;  // throws ConfigError
};

struct TuneResult {
    double coefficient = 0.0;
    double psnr_db = 0.0;
    int iterations = 0;  // PSNR evaluations performed
};

// PSNR dichotomy: probe at k_min (early stop if PSNR < p0 or already in
// (p0, p1)), otherwise jump to k_max and bisect until the PSNR lands in
// (p0, p1) or max_iter evaluations are exhausted.
TuneResult tune_k(const Image& clean,
                  const std::function<Image(double)>& render,
                  const TunerConfig& cfg);

}  // namespace fdp
