#include "fdp/tuner.hpp"

#include "fdp/metrics.hpp"

namespace fdp {

void TunerConfig::validate() const {
    if (!(p0 < p1)) throw ConfigError("tuner: p0 must be below p1");
    if (!(0.0 < k_min && k_min < k_max)) throw ConfigError("tuner: need 0 < k_min < k_max");
    if (max_iter < 1) throw ConfigError("tuner: max_iter must be >= 1");
}

TuneResult tune_k(const Image& clean,
                  const std::function<Image(double)>& render,
                  const TunerConfig& cfg) {
    cfg.validate();

    double left = cfg.k_min;
    double right = cfg.k_max;
    double k = cfg.k_min;
    Image candidate = render(k);

    const auto in_band = [&](double p) { return cfg.p0 < p && p < cfg.p1; };

    for (int n = 1; n <= cfg.max_iter; ++n) {
        const double p = psnr(clean, candidate);
        if (n == 1) {
            // Probe at k_min: keep it if already stealthy enough, or if even the
            // weakest coefficient is too visible (effectiveness floor).
            if (p < cfg.p0 || in_band(p)) return {k, p, n};
            k = cfg.k_max;
        } else {
            if (in_band(p)) return {k, p, n};
            if (p <= cfg.p0)
                right = k;  // too visible, weaken
            else
                left = k;  // too faint, strengthen
            k = (left + right) / 2.0;
        }
        candidate = render(k);
    }
    // Dichotomy exhausted; return the coefficient standing at the end.
    return {k, psnr(clean, candidate), cfg.max_iter};
}

}  // namespace fdp
