#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "fdp/layout.hpp"

namespace fdp {

// Provenance of one poisoned sample.
struct PoisonRecord {
    std::string source_id;
    int target_class = 0;
    int block_index = 0;
    int channel = 0;
    Orientation orientation = Orientation::horizontal;
    double coefficient = 0.0;
    double psnr_db = 0.0;
    int tuner_iterations = 0;

    bool operator==(const PoisonRecord&) const = default;
};

// UTF-8 JSON array, one object per record, keys in field order.
void write_manifest(const std::vector<PoisonRecord>& records,
                    const std::filesystem::path& path);

std::vector<PoisonRecord> read_manifest(const std::filesystem::path& path);

}  // namespace fdp
