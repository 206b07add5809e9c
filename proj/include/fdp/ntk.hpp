#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "fdp/errors.hpp"
#include "fdp/injector.hpp"
#include "fdp/tuner.hpp"

namespace fdp {

// RBF kernel exp(-2 gamma ||x - y||^2), gamma > 0.
double rbf_kernel(const Eigen::VectorXd& x, const Eigen::VectorXd& y, double gamma);

// Kernel-regression training set: per-class benign samples (equal counts)
// plus poisoned samples all labeled with the target class.
struct KernelDataset {
    std::vector<std::pair<Eigen::VectorXd, int>> benign;  // (sample, class index)
    std::vector<Eigen::VectorXd> poisoned;
    double gamma = 1.0;
    int target = 0;       // class index of the poison labels
    int num_classes = 1;
};

// Predicted probability of the target class under one-hot kernel regression.
// Kernel sums use compensated summation so results are reduction-order stable.
double ntk_predict(const Eigen::VectorXd& query, const KernelDataset& ds);

// Per-class probabilities; poison mass counts toward its labeled class.
// Entries sum to 1 (shared denominator).
std::vector<double> ntk_predict_classes(const Eigen::VectorXd& query,
                                        const KernelDataset& ds,
                                        const std::vector<int>& poison_labels);

enum class GammaPolicy { median_heuristic, fixed };
enum class TriggerStyle { invisible, visible_patch };

struct SpatialSensitivityConfig {
    int image_side = 32;
    int block_side = 8;
    int num_classes = 10;       // M
    int benign_per_total = 500; // N_b
    int poison_total = 500;     // N_p (= N_b for the spatial-sensitivity check)
    int trials = 100;
    std::uint64_t seed = 1;
    GammaPolicy gamma_policy = GammaPolicy::median_heuristic;
    double gamma = 1.0;              // used when policy is fixed
    TriggerStyle trigger_style = TriggerStyle::invisible;
    // Synthetic generator: per-class Gaussian blobs in pixel space.
    double center_base = 128.0;
    double center_spread = 2.0;  // per-pixel stddev of class center offsets
    double noise_sigma = 2.0;    // per-pixel sample noise
    TunerConfig tuner{};
};

struct SpatialSensitivityReport {
    double phi_same = 0.0;      // mean phi_t, trigger at the training mask m0
    double phi_shifted = 0.0;   // mean phi_t, trigger at the disjoint mask m1
    double asr_same = 0.0;      // fraction with phi_t > 0.5
    double asr_shifted = 0.0;
    int trial_count = 0;
    double gamma = 0.0;         // gamma actually used
};

// Spatial-sensitivity experiment: poison a synthetic class-structured set at
// block m0, then compare phi_t for fresh queries triggered at m0 vs at the
// disjoint next block m1.
SpatialSensitivityReport spatial_sensitivity_experiment(const SpatialSensitivityConfig& cfg);

struct MultiTargetConfig {
    int image_side = 32;
    int block_side = 8;
    int num_targets = 3;         // doubles as the class count
    int benign_total = 300;
    int poison_per_target = 300;
    int trials_per_target = 50;
    std::uint64_t seed = 1;
    GammaPolicy gamma_policy = GammaPolicy::median_heuristic;
    double gamma = 1.0;
    bool share_block = false;  // two targets share block 0 with opposite morphology
    double center_base = 128.0;
    double center_spread = 2.0;
    double noise_sigma = 1.0;  // tighter clusters than the spatial-sensitivity run
    TunerConfig tuner{};
};

struct MultiTargetReport {
    std::vector<double> asr;  // per target, argmax over per-class phi
    double gamma = 0.0;
};

// Kernel proxy for the multi-target attack: disjoint-block poison sets for
// every target, ASR measured as argmax agreement on held-out queries.
MultiTargetReport multi_target_kernel_asr(const MultiTargetConfig& cfg);

// Synthetic single-channel blob images, quantized to 8-bit.
std::vector<std::pair<Image, int>> make_blob_images(int count_per_class,
                                                    int num_classes, int side,
                                                    double center_base,
                                                    double center_spread,
                                                    double noise_sigma,
                                                    std::uint64_t seed);

Eigen::VectorXd vectorize(const Image& image);

}  // namespace fdp
