#include "fdp/metrics.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace fdp {

namespace {

double mse(const Image& a, const Image& b) {
    double sum = 0.0;
    for (std::size_t i = 0; i < a.data.size(); ++i) {
        const double d = static_cast<double>(a.data[i]) - static_cast<double>(b.data[i]);
        sum += d * d;
    }
    return sum / static_cast<double>(a.data.size());
}

// 11x11 Gaussian, sigma 1.5, normalized to sum 1.
const std::vector<double>& gaussian_window() {
    static const std::vector<double> window = [] {
        constexpr int kSide = 11;
        constexpr double kSigma = 1.5;
        std::vector<double> w(kSide * kSide);
        double total = 0.0;
        for (int i = 0; i < kSide; ++i)
            for (int j = 0; j < kSide; ++j) {
                const double di = i - (kSide - 1) / 2.0;
                const double dj = j - (kSide - 1) / 2.0;
                w[i * kSide + j] = std::exp(-(di * di + dj * dj) / (2.0 * kSigma * kSigma));
                total += w[i * kSide + j];
            }
        for (double& v : w) v /= total;
        return w;
    }();
    return window;
}

double ssim_channel(const Image& a, const Image& b, int ch) {
    constexpr int kSide = 11;
    constexpr double kC1 = (0.01 * 255.0) * (0.01 * 255.0);
    constexpr double kC2 = (0.03 * 255.0) * (0.03 * 255.0);
    const auto& w = gaussian_window();

    double total = 0.0;
    long count = 0;
    for (int r = 0; r + kSide <= a.height; ++r) {
        for (int c = 0; c + kSide <= a.width; ++c) {
            double mu1 = 0.0, mu2 = 0.0, m11 = 0.0, m22 = 0.0, m12 = 0.0;
            for (int i = 0; i < kSide; ++i)
                for (int j = 0; j < kSide; ++j) {
                    const double wv = w[i * kSide + j];
                    const double x = a.at(r + i, c + j, ch);
                    const double y = b.at(r + i, c + j, ch);
                    mu1 += wv * x;
                    mu2 += wv * y;
                    m11 += wv * x * x;
                    m22 += wv * y * y;
                    m12 += wv * x * y;
                }
            const double var1 = m11 - mu1 * mu1;
            const double var2 = m22 - mu2 * mu2;
            const double cov = m12 - mu1 * mu2;
            total += ((2.0 * mu1 * mu2 + kC1) * (2.0 * cov + kC2)) /
                     ((mu1 * mu1 + mu2 * mu2 + kC1) * (var1 + var2 + kC2));
            ++count;
        }
    }
    return total / static_cast<double>(count);
}

}  // namespace

double psnr(const Image& a, const Image& b) {
    if (!a.same_shape(b)) throw DimensionMismatch("psnr: shapes disagree");
    const double m = mse(a, b);
    if (m == 0.0) return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(255.0 * 255.0 / m);
}

double ssim(const Image& a, const Image& b) {
    if (!a.same_shape(b)) throw DimensionMismatch("ssim: shapes disagree");
    if (a.width < 11 || a.height < 11) throw TooSmall("ssim needs min(H, W) >= 11");
    double total = 0.0;
    for (int ch = 0; ch < a.channels; ++ch) total += ssim_channel(a, b, ch);
    return total / a.channels;
}

QualityReport quality(const Image& a, const Image& b) {
    if (!a.same_shape(b)) throw DimensionMismatch("quality: shapes disagree");
    QualityReport r;
    r.mse = mse(a, b);
    r.psnr_db = psnr(a, b);
    r.ssim = ssim(a, b);
    return r;
}

}  // namespace fdp
