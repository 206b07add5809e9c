#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "fdp/image.hpp"

namespace fdp {

struct Sample {
    Image image;
    int class_index = 0;
    // Path relative to the dataset root, e.g. "cat/001.png"; doubles as the
    // provenance id in manifests.
    std::string rel_path;
};

struct LabeledDataset {
    std::vector<Sample> samples;
    std::vector<std::string> class_names;  // lexicographic subdirectory order
    std::filesystem::path root;
};

// One subdirectory per class; sample order is class-major, then lexicographic
// filename. All images must share identical dimensions.
LabeledDataset load_dataset(const std::filesystem::path& root_dir);

}  // namespace fdp
