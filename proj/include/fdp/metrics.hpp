#pragma once

#include "fdp/image.hpp"

namespace fdp {

struct QualityReport {
    double psnr_db = 0.0;  // +inf for identical images
    double ssim = 0.0;
    double mse = 0.0;
};

// MSE pooled over all pixels and channels; +inf when images are identical.
double psnr(const Image& a, const Image& b);

// Mean local SSIM, 11x11 Gaussian window (sigma 1.5), Wang et al. constants,
// computed per channel and averaged. Requires min(H, W) >= 11.
double ssim(const Image& a, const Image& b);

QualityReport quality(const Image& a, const Image& b);

}  // namespace fdp
