#pragma once

#include <cstdint>
#include <filesystem>
#include <utility>
#include <vector>

#include "fdp/dataset.hpp"
#include "fdp/injector.hpp"
#include "fdp/manifest.hpp"

namespace fdp {

struct PoisonPlan {
    double rate = 0.03;        // fraction of the dataset to poison
    std::uint64_t seed = 1;    // source draw seed, mandatory for reproducibility
    StageToggles stages{};     // ablation toggles; all on by default
    int jobs = 1;              // worker fan-out; output independent of jobs
};

struct PoisonedDataset {
    LabeledDataset dataset;               // clean samples + poisoned copies
    std::vector<PoisonRecord> manifest;   // one record per poisoned sample
};

// Name of the poisoned copy of `source_rel` targeted at class `target`:
// "<target class dir>/<source class>_<stem>_p<target><ext>". The source class
// is kept in the name so same-stem files cannot collide.
std::string poisoned_rel_path(const std::string& source_rel,
                              const std::string& target_class_name, int target);

// Stage 1..4 -> toggles with the corresponding components disabled
// (progressively, matching the ablation steps) and the given fixed K.
StageToggles ablation_stage(int stage, double fixed_k);

// Default manual coefficients for stages 1..4.
double ablation_default_k(int stage);

// Draws floor(rate * N) / M sources per target (seeded, without replacement,
// excluding the target's own class), poisons each toward its target and
// appends the poisoned copies, relabeled, after the untouched clean samples.
PoisonedDataset poison_dataset(const LabeledDataset& ds, const PoisonPlan& plan,
                               const GridConfig& grid, const TriggerImage& trigger,
                               const TunerConfig& tune);

// Mirrors the input class layout under out_dir; clean files are copied
// byte-identically, poisoned files get a "_p<t>" suffix, the manifest sits at
// the root. Poisoned rel_paths in the returned dataset follow the same rule.
void write_poisoned_tree(const LabeledDataset& clean, const PoisonedDataset& out,
                         const std::filesystem::path& out_dir);

}  // namespace fdp
