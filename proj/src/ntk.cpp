#include "fdp/ntk.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

namespace fdp {

namespace {

// Compensated (Kahan) accumulator; keeps kernel sums independent of
// reduction order to well below the 1e-10 contract.
struct KahanSum {
    double sum = 0.0;
    double carry = 0.0;
    void add(double v) {
        const double y = v - carry;
        const double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
};

}  // namespace

double rbf_kernel(const Eigen::VectorXd& x, const Eigen::VectorXd& y, double gamma) {
    if (x.size() != y.size()) throw DimensionMismatch("rbf_kernel: dimensions disagree");
    if (!(gamma > 0.0)) throw NonPositiveGamma("rbf_kernel: gamma must be > 0");
    return std::exp(-2.0 * gamma * (x - y).squaredNorm());
}

double ntk_predict(const Eigen::VectorXd& query, const KernelDataset& ds) {
    if (ds.benign.empty()) throw EmptyDataset("ntk_predict: no benign samples");
    KahanSum numerator, denominator;
    for (const auto& [sample, cls] : ds.benign) {
        const double k = rbf_kernel(query, sample, ds.gamma);
        denominator.add(k);
        if (cls == ds.target) numerator.add(k);
    }
    for (const auto& sample : ds.poisoned) {
        const double k = rbf_kernel(query, sample, ds.gamma);
        denominator.add(k);
        numerator.add(k);
    }
    return numerator.sum / denominator.sum;
}

std::vector<double> ntk_predict_classes(const Eigen::VectorXd& query,
                                        const KernelDataset& ds,
                                        const std::vector<int>& poison_labels) {
    if (ds.benign.empty()) throw EmptyDataset("ntk_predict_classes: no benign samples");
    if (poison_labels.size() != ds.poisoned.size())
        throw DimensionMismatch("ntk_predict_classes: one label per poisoned sample");

    std::vector<KahanSum> per_class(static_cast<std::size_t>(ds.num_classes));
    KahanSum denominator;
    for (const auto& [sample, cls] : ds.benign) {
        const double k = rbf_kernel(query, sample, ds.gamma);
        denominator.add(k);
        per_class[static_cast<std::size_t>(cls)].add(k);
    }
    for (std::size_t i = 0; i < ds.poisoned.size(); ++i) {
        const double k = rbf_kernel(query, ds.poisoned[i], ds.gamma);
        denominator.add(k);
        per_class[static_cast<std::size_t>(poison_labels[i])].add(k);
    }

    std::vector<double> phi(per_class.size());
    for (std::size_t c = 0; c < per_class.size(); ++c)
        phi[c] = per_class[c].sum / denominator.sum;
    return phi;
}

Eigen::VectorXd vectorize(const Image& image) {
    Eigen::VectorXd v(static_cast<Eigen::Index>(image.data.size()));
    for (std::size_t i = 0; i < image.data.size(); ++i)
        v[static_cast<Eigen::Index>(i)] = static_cast<double>(image.data[i]);
    return v;
}

namespace {

// Per-class Gaussian cluster centers in pixel space; samples add iid noise.
struct BlobGenerator {
    std::vector<std::vector<double>> centers;  // [class][pixel]
    double noise_sigma;
    int side;

    BlobGenerator(int num_classes, int side_, double base, double spread,
                  double sigma, std::mt19937_64& rng)
        : noise_sigma(sigma), side(side_) {
        std::normal_distribution<double> offset(0.0, spread);
        centers.resize(static_cast<std::size_t>(num_classes));
        for (auto& center : centers) {
            center.resize(static_cast<std::size_t>(side) * side);
            for (double& v : center) v = base + offset(rng);
        }
    }

    Image draw(int cls, std::mt19937_64& rng) const {
        std::normal_distribution<double> noise(0.0, noise_sigma);
        Image img = Image::make(side, side, 1);
        const auto& center = centers[static_cast<std::size_t>(cls)];
        for (std::size_t i = 0; i < img.data.size(); ++i) {
            const double v = std::clamp(center[i] + noise(rng), 0.0, 255.0);
            img.data[i] = static_cast<std::uint8_t>(std::lround(v));
        }
        return img;
    }
};

double median_heuristic_gamma(const std::vector<Eigen::VectorXd>& samples,
                              std::mt19937_64& rng) {
    constexpr int kPairs = 256;
    std::vector<double> dist2;
    dist2.reserve(kPairs);
    for (int i = 0; i < kPairs; ++i) {
        const auto a = static_cast<std::size_t>(rng() % samples.size());
        const auto b = static_cast<std::size_t>(rng() % samples.size());
        if (a == b) continue;
        dist2.push_back((samples[a] - samples[b]).squaredNorm());
    }
    std::sort(dist2.begin(), dist2.end());
    const double median = dist2[dist2.size() / 2];
    return 1.0 / (2.0 * median);
}

BlockSpec mask_spec(int block, const GridConfig& grid) {
    const auto origins = block_grid(grid);
    const int n1 = block / grid.grid_cols();
    const int n2 = block % grid.grid_cols();
    BlockSpec spec;
    spec.target_class = block + 1;
    spec.block_index = block;
    spec.channel = 0;
    spec.row = origins[static_cast<std::size_t>(block)].first;
    spec.col = origins[static_cast<std::size_t>(block)].second;
    spec.side = grid.block_side;
    spec.orientation = (n1 + n2) % 2 == 0 ? Orientation::horizontal : Orientation::vertical;
    return spec;
}

Image poison_at(const Image& image, const BlockSpec& spec, const TriggerImage& trigger,
                const TunerConfig& tune, TriggerStyle style) {
    if (style == TriggerStyle::visible_patch) {
        // Full-contrast checkerboard; deliberately not invisible.
        Plane patch(spec.side, spec.side);
        for (int r = 0; r < spec.side; ++r)
            for (int c = 0; c < spec.side; ++c)
                patch(r, c) = ((r / 2 + c / 2) % 2 == 0) ? 255.0 : 0.0;
        return embed_block(image, spec, patch);
    }
    const Plane clean_block = extract_block(image, spec);
    const auto render = [&](double k) {
        const Plane injected = inject_frequency(clean_block, trigger, k);
        return embed_block(image, spec,
                           constrain_morphology(injected, clean_block, spec.orientation));
    };
    const TuneResult result = tune_k(image, render, tune);
    return render(result.coefficient);
}

}  // namespace

std::vector<std::pair<Image, int>> make_blob_images(int count_per_class, int num_classes,
                                                    int side, double center_base,
                                                    double center_spread, double noise_sigma,
                                                    std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    BlobGenerator gen(num_classes, side, center_base, center_spread, noise_sigma, rng);
    std::vector<std::pair<Image, int>> out;
    out.reserve(static_cast<std::size_t>(count_per_class) * num_classes);
    for (int c = 0; c < num_classes; ++c)
        for (int i = 0; i < count_per_class; ++i) out.emplace_back(gen.draw(c, rng), c);
    return out;
}

SpatialSensitivityReport spatial_sensitivity_experiment(const SpatialSensitivityConfig& cfg) {
    GridConfig grid;
    grid.image_height = cfg.image_side;
    grid.image_width = cfg.image_side;
    grid.block_side = cfg.block_side;
    grid.num_classes = 2;
    grid.validate();
    if (grid.blocks_per_channel() < 2)
        throw CapacityExceeded("the spatial-sensitivity experiment needs two disjoint blocks");

    std::mt19937_64 rng(cfg.seed);
    BlobGenerator gen(cfg.num_classes, cfg.image_side, cfg.center_base,
                      cfg.center_spread, cfg.noise_sigma, rng);
    const TriggerImage trigger = make_trigger(cfg.block_side, kDefaultTriggerSeed);
    const BlockSpec m0 = mask_spec(0, grid);
    const BlockSpec m1 = mask_spec(1, grid);

    constexpr int kTargetClass = 0;
    const int per_class = cfg.benign_per_total / cfg.num_classes;

    KernelDataset ds;
    ds.num_classes = cfg.num_classes;
    ds.target = kTargetClass;
    for (int c = 0; c < cfg.num_classes; ++c)
        for (int i = 0; i < per_class; ++i)
            ds.benign.emplace_back(vectorize(gen.draw(c, rng)), c);

    // Poison sources cycle through the non-target classes.
    for (int i = 0; i < cfg.poison_total; ++i) {
        const int cls = 1 + i % (cfg.num_classes - 1);
        const Image poisoned =
            poison_at(gen.draw(cls, rng), m0, trigger, cfg.tuner, cfg.trigger_style);
        ds.poisoned.push_back(vectorize(poisoned));
    }

    if (cfg.gamma_policy == GammaPolicy::median_heuristic) {
        std::vector<Eigen::VectorXd> all;
        for (const auto& [v, c] : ds.benign) all.push_back(v);
        all.insert(all.end(), ds.poisoned.begin(), ds.poisoned.end());
        ds.gamma = median_heuristic_gamma(all, rng);
    } else {
        ds.gamma = cfg.gamma;
    }

    SpatialSensitivityReport report;
    report.gamma = ds.gamma;
    report.trial_count = cfg.trials;
    for (int trial = 0; trial < cfg.trials; ++trial) {
        const int cls = 1 + trial % (cfg.num_classes - 1);
        const Image x = gen.draw(cls, rng);
        const double phi0 =
            ntk_predict(vectorize(poison_at(x, m0, trigger, cfg.tuner, cfg.trigger_style)), ds);
        const double phi1 =
            ntk_predict(vectorize(poison_at(x, m1, trigger, cfg.tuner, cfg.trigger_style)), ds);
        report.phi_same += phi0;
        report.phi_shifted += phi1;
        if (phi0 > 0.5) report.asr_same += 1.0;
        if (phi1 > 0.5) report.asr_shifted += 1.0;
    }
    report.phi_same /= cfg.trials;
    report.phi_shifted /= cfg.trials;
    report.asr_same /= cfg.trials;
    report.asr_shifted /= cfg.trials;
    return report;
}

MultiTargetReport multi_target_kernel_asr(const MultiTargetConfig& cfg) {
    const int num_classes = cfg.num_targets;
    GridConfig grid;
    grid.image_height = cfg.image_side;
    grid.image_width = cfg.image_side;
    grid.block_side = cfg.block_side;
    grid.num_classes = num_classes;
    grid.validate();
    if (!cfg.share_block && grid.blocks_per_channel() < cfg.num_targets)
        throw CapacityExceeded("not enough disjoint blocks for the target count");

    std::mt19937_64 rng(cfg.seed);
    BlobGenerator gen(num_classes, cfg.image_side, cfg.center_base, cfg.center_spread,
                      cfg.noise_sigma, rng);
    const TriggerImage trigger = make_trigger(cfg.block_side, kDefaultTriggerSeed);

    std::vector<BlockSpec> specs;
    for (int t = 1; t <= cfg.num_targets; ++t) {
        BlockSpec spec = mask_spec(cfg.share_block ? 0 : t - 1, grid);
        if (cfg.share_block)
            spec.orientation = t % 2 == 1 ? Orientation::horizontal : Orientation::vertical;
        spec.target_class = t;
        specs.push_back(spec);
    }

    KernelDataset ds;
    ds.num_classes = num_classes;
    const int per_class = cfg.benign_total / num_classes;
    for (int c = 0; c < num_classes; ++c)
        for (int i = 0; i < per_class; ++i)
            ds.benign.emplace_back(vectorize(gen.draw(c, rng)), c);

    std::vector<int> poison_labels;
    for (int t = 1; t <= cfg.num_targets; ++t) {
        for (int i = 0; i < cfg.poison_per_target; ++i) {
            const int cls = num_classes == 1 ? 0 : (t - 1 + 1 + i % (num_classes - 1)) % num_classes;
            const Image poisoned = poison_at(gen.draw(cls, rng), specs[static_cast<std::size_t>(t - 1)],
                                             trigger, cfg.tuner, TriggerStyle::invisible);
            ds.poisoned.push_back(vectorize(poisoned));
            poison_labels.push_back(t - 1);
        }
    }

    if (cfg.gamma_policy == GammaPolicy::median_heuristic) {
        std::vector<Eigen::VectorXd> all;
        for (const auto& [v, c] : ds.benign) all.push_back(v);
        all.insert(all.end(), ds.poisoned.begin(), ds.poisoned.end());
        ds.gamma = median_heuristic_gamma(all, rng);
    } else {
        ds.gamma = cfg.gamma;
    }

    MultiTargetReport report;
    report.gamma = ds.gamma;
    for (int t = 1; t <= cfg.num_targets; ++t) {
        int hits = 0;
        for (int trial = 0; trial < cfg.trials_per_target; ++trial) {
            const int cls = num_classes == 1
                                ? 0
                                : (t - 1 + 1 + trial % (num_classes - 1)) % num_classes;
            const Image query = poison_at(gen.draw(cls, rng), specs[static_cast<std::size_t>(t - 1)],
                                          trigger, cfg.tuner, TriggerStyle::invisible);
            const std::vector<double> phi = ntk_predict_classes(vectorize(query), ds, poison_labels);
            const auto best = std::max_element(phi.begin(), phi.end());
            if (static_cast<int>(best - phi.begin()) == t - 1) ++hits;
        }
        report.asr.push_back(static_cast<double>(hits) / cfg.trials_per_target);
    }
    return report;
}

}  // namespace fdp
