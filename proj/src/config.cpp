#include "fdp/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace fdp {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

// Strips a trailing comment that is not inside a quoted string.
std::string strip_comment(const std::string& line) {
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        if (line[i] == '"') quoted = !quoted;
        if (line[i] == '#' && !quoted) return line.substr(0, i);
    }
    return line;
}

}  // namespace

TomlTable TomlTable::parse(const std::string& text) {
    TomlTable table;
    std::istringstream in(text);
    std::string line;
    std::string section;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        line = trim(strip_comment(line));
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("line " + std::to_string(line_no) + ": bad section header");
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ConfigError("line " + std::to_string(line_no) + ": empty key or value");
        if (value.front() == '"') {
            if (value.size() < 2 || value.back() != '"')
                throw ConfigError("line " + std::to_string(line_no) + ": unterminated string");
            value = value.substr(1, value.size() - 2);
        }
        table.values_[section][key] = value;
    }
    return table;
}

TomlTable TomlTable::parse_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read config: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

bool TomlTable::has(const std::string& section, const std::string& key) const {
    const auto sec = values_.find(section);
    return sec != values_.end() && sec->second.count(key) > 0;
}

std::string TomlTable::get_string(const std::string& section, const std::string& key,
                                  const std::string& fallback) const {
    const auto sec = values_.find(section);
    if (sec == values_.end()) return fallback;
    const auto it = sec->second.find(key);
    return it == sec->second.end() ? fallback : it->second;
}

double TomlTable::get_double(const std::string& section, const std::string& key,
                             double fallback) const {
    if (!has(section, key)) return fallback;
    const std::string raw = get_string(section, key, "");
    char* end = nullptr;
    const double v = std::strtod(raw.c_str(), &end);
    if (end == raw.c_str() || *end != '\0')
        throw ConfigError(section + "." + key + ": expected a number, got '" + raw + "'");
    return v;
}

std::int64_t TomlTable::get_int(const std::string& section, const std::string& key,
                                std::int64_t fallback) const {
    if (!has(section, key)) return fallback;
    const std::string raw = get_string(section, key, "");
    char* end = nullptr;
    const long long v = std::strtoll(raw.c_str(), &end, 10);
    if (end == raw.c_str() || *end != '\0')
        throw ConfigError(section + "." + key + ": expected an integer, got '" + raw + "'");
    return v;
}

bool TomlTable::get_bool(const std::string& section, const std::string& key,
                         bool fallback) const {
    if (!has(section, key)) return fallback;
    const std::string raw = get_string(section, key, "");
    if (raw == "true") return true;
    if (raw == "false") return false;
    throw ConfigError(section + "." + key + ": expected true/false, got '" + raw + "'");
}

RunConfig load_run_config(const std::filesystem::path& path) {
    const TomlTable t = TomlTable::parse_file(path);
    RunConfig cfg;
    cfg.grid.block_side = static_cast<int>(t.get_int("grid", "block_side", 8));

    cfg.tuner.p0 = t.get_double("tuner", "p0", cfg.tuner.p0);
    cfg.tuner.p1 = t.get_double("tuner", "p1", cfg.tuner.p1);
    cfg.tuner.k_min = t.get_double("tuner", "k_min", cfg.tuner.k_min);
    cfg.tuner.k_max = t.get_double("tuner", "k_max", cfg.tuner.k_max);
    cfg.tuner.max_iter = static_cast<int>(t.get_int("tuner", "max_iter", cfg.tuner.max_iter));
    cfg.tuner.validate();

    cfg.plan.rate = t.get_double("plan", "rate", cfg.plan.rate);
    if (cfg.plan.rate < 0.0 || cfg.plan.rate > 1.0)
        throw ConfigError("plan.rate must be in [0, 1]");
    cfg.plan.seed = static_cast<std::uint64_t>(t.get_int("plan", "seed", 1));
    cfg.stage = static_cast<int>(t.get_int("plan", "stage", 0));
    cfg.fixed_k = t.get_double("plan", "fixed_k", 0.0);

    cfg.trigger_path = t.get_string("trigger", "path", "");
    cfg.trigger_seed = static_cast<std::uint64_t>(
        t.get_int("trigger", "seed", static_cast<std::int64_t>(kDefaultTriggerSeed)));
    return cfg;
}

}  // namespace fdp
