#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>

#include "fdp/layout.hpp"
#include "fdp/pipeline.hpp"
#include "fdp/tuner.hpp"

namespace fdp {

// Everything a `poison` run needs; CLI flags override individual keys.
struct RunConfig {
    GridConfig grid{};    // [grid] block_side (height/width/classes come from data)
    TunerConfig tuner{};  // [tuner] p0, p1, k_min, k_max, max_iter
    PoisonPlan plan{};    // [plan] rate, seed, stage
    int stage = 0;        // 0 = full pipeline
    double fixed_k = 0.0; // 0 = stage default
    std::string trigger_path;                       // [trigger] path
    std::uint64_t trigger_seed = kDefaultTriggerSeed;  // [trigger] seed
};

// Minimal TOML subset: [section] headers, key = value lines with numbers,
// booleans and double-quoted strings, '#' comments.
class TomlTable {
  public:
    static TomlTable parse_file(const std::filesystem::path& path);
    static TomlTable parse(const std::string& text);

    bool has(const std::string& section, const std::string& key) const;
    std::string get_string(const std::string& section, const std::string& key,
                           const std::string& fallback) const;
    double get_double(const std::string& section, const std::string& key,
                      double fallback) const;
    std::int64_t get_int(const std::string& section, const std::string& key,
                         std::int64_t fallback) const;
    bool get_bool(const std::string& section, const std::string& key,
                  bool fallback) const;

  private:
    std::map<std::string, std::map<std::string, std::string>> values_;
};

RunConfig load_run_config(const std::filesystem::path& path);

}  // namespace fdp
