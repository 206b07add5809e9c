#include "fdp/manifest.hpp"

#include <cmath>
#include <fstream>
#include <limits>

#include <json.hpp>

namespace fdp {

void write_manifest(const std::vector<PoisonRecord>& records,
                    const std::filesystem::path& path) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : records) {
        nlohmann::ordered_json obj;
        obj["source_id"] = r.source_id;
        obj["target_class"] = r.target_class;
        obj["block_index"] = r.block_index;
        obj["channel"] = r.channel;
        obj["orientation"] = to_string(r.orientation);
        obj["coefficient"] = r.coefficient;
        // JSON has no +inf; identical images are recorded as null.
        if (std::isinf(r.psnr_db))
            obj["psnr_db"] = nullptr;
        else
            obj["psnr_db"] = r.psnr_db;
        obj["tuner_iterations"] = r.tuner_iterations;
        arr.push_back(std::move(obj));
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    out << arr.dump(2) << '\n';
    if (!out) throw IoError("short write: " + path.string());
}

std::vector<PoisonRecord> read_manifest(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read " + path.string());
    nlohmann::json arr;
    try {
        in >> arr;
    } catch (const nlohmann::json::exception& e) {
        throw IoError("malformed manifest " + path.string() + ": " + e.what());
    }
    std::vector<PoisonRecord> records;
    records.reserve(arr.size());
    for (const auto& obj : arr) {
        PoisonRecord r;
        r.source_id = obj.at("source_id").get<std::string>();
        r.target_class = obj.at("target_class").get<int>();
        r.block_index = obj.at("block_index").get<int>();
        r.channel = obj.at("channel").get<int>();
        r.orientation = orientation_from_string(obj.at("orientation").get<std::string>());
        r.coefficient = obj.at("coefficient").get<double>();
        r.psnr_db = obj.at("psnr_db").is_null()
                        ? std::numeric_limits<double>::infinity()
                        : obj.at("psnr_db").get<double>();
        r.tuner_iterations = obj.at("tuner_iterations").get<int>();
        records.push_back(std::move(r));
    }
    return records;
}

}  // namespace fdp
