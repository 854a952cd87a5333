#pragma once

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "brandsim/errors.hpp"

namespace brandsim {

enum class Mode { Equality, Hierarchy };

inline std::string_view to_string(Mode mode) {
    return mode == Mode::Equality ? "equality" : "hierarchy";
}

/// Parameters of one simulation. Field names double as config-file keys.
struct SimConfig {
    std::int64_t N = 1;
    std::int64_t K = 2;
    std::int64_t M = 1;
    Mode mode = Mode::Equality;
    double p_copy = 0.5;
    double p_unknown = 0.25;
    std::int64_t leader_count = 0;
    std::int64_t leader_pupils = 0;
    std::optional<std::int64_t> aligned_leader_brand;
    std::vector<std::int64_t> shop_counts{1};
    double shop_teach_rate = 0.0;
    double epsilon = 1e-12;
    std::int64_t max_sweeps = 10000;
    std::int64_t record_every = 1;
    std::uint64_t seed = 0;

    bool operator==(const SimConfig&) const = default;
};

/// Throws ConfigError naming the first offending key.
inline void validate(const SimConfig& cfg) {
    if (cfg.N < 1) throw ConfigError("N", "must be >= 1");
    if (cfg.K < 2) throw ConfigError("K", "must be >= 2");
    if (cfg.M < 1) throw ConfigError("M", "must be >= 1");
    if (!(cfg.p_copy >= 0.0 && cfg.p_copy <= 1.0)) throw ConfigError("p_copy", "must lie in [0, 1]");
    if (!(cfg.p_unknown >= 0.0 && cfg.p_unknown <= 1.0))
        throw ConfigError("p_unknown", "must lie in [0, 1]");
    if (cfg.leader_count < 0 || cfg.leader_count >= cfg.K)
        throw ConfigError("leader_count", "must lie in [0, K)");
    if (cfg.leader_pupils < 0 || cfg.leader_pupils > cfg.K - 1)
        throw ConfigError("leader_pupils", "must lie in [0, K-1]");
    if (cfg.aligned_leader_brand && (*cfg.aligned_leader_brand < 0 || *cfg.aligned_leader_brand >= cfg.N))
        throw ConfigError("aligned_leader_brand", "must lie in [0, N)");
    if (static_cast<std::int64_t>(cfg.shop_counts.size()) != cfg.N)
        throw ConfigError("shop_counts", "needs exactly N entries");
    if (std::any_of(cfg.shop_counts.begin(), cfg.shop_counts.end(), [](auto s) { return s < 1; }))
        throw ConfigError("shop_counts", "entries must be >= 1");
    if (!(cfg.shop_teach_rate >= 0.0) || !std::isfinite(cfg.shop_teach_rate))
        throw ConfigError("shop_teach_rate", "must be a finite value >= 0");
    if (!(cfg.epsilon > 0.0) || !std::isfinite(cfg.epsilon))
        throw ConfigError("epsilon", "must be a finite value > 0");
    if (cfg.max_sweeps < 1) throw ConfigError("max_sweeps", "must be >= 1");
    if (cfg.record_every < 1) throw ConfigError("record_every", "must be >= 1");
}

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

template <typename T>
T parse_number(std::string_view key, std::string_view text) {
    text = trim(text);
    T value{};
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (text.empty() || ec != std::errc{} || ptr != end)
        throw ConfigError(std::string(key), "cannot parse '" + std::string(text) + "'");
    return value;
}

inline Mode parse_mode(std::string_view text) {
    std::string lower(trim(text));
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (lower == "equality") return Mode::Equality;
    if (lower == "hierarchy") return Mode::Hierarchy;
    throw ConfigError("mode", "expected 'equality' or 'hierarchy', got '" + lower + "'");
}

inline std::vector<std::int64_t> parse_int_list(std::string_view key, std::string_view text) {
    std::vector<std::int64_t> out;
    text = trim(text);
    if (text.empty()) return out;
    std::size_t start = 0;
    for (;;) {
        const auto comma = text.find(',', start);
        out.push_back(parse_number<std::int64_t>(key, text.substr(start, comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

/// Integer-valued parameter given as a number, e.g. "3" or "3.0".
inline std::int64_t integral_value(std::string_view key, double value) {
    if (!std::isfinite(value) || std::floor(value) != value)
        throw ConfigError(std::string(key), "expects an integer value");
    return static_cast<std::int64_t>(value);
}

}  // namespace detail

/// Assigns one key from its textual value. Throws ConfigError on unknown keys
/// or unparsable values; does not validate cross-field invariants.
inline void set_field(SimConfig& cfg, std::string_view key, std::string_view value) {
    using detail::parse_number;
    if (key == "N") cfg.N = parse_number<std::int64_t>(key, value);
    else if (key == "K") cfg.K = parse_number<std::int64_t>(key, value);
    else if (key == "M") cfg.M = parse_number<std::int64_t>(key, value);
    else if (key == "mode") cfg.mode = detail::parse_mode(value);
    else if (key == "p_copy") cfg.p_copy = parse_number<double>(key, value);
    else if (key == "p_unknown") cfg.p_unknown = parse_number<double>(key, value);
    else if (key == "leader_count") cfg.leader_count = parse_number<std::int64_t>(key, value);
    else if (key == "leader_pupils") cfg.leader_pupils = parse_number<std::int64_t>(key, value);
    else if (key == "aligned_leader_brand") {
        auto v = detail::trim(value);
        if (v.empty() || v == "none") cfg.aligned_leader_brand.reset();
        else cfg.aligned_leader_brand = parse_number<std::int64_t>(key, v);
    }
    else if (key == "shop_counts") cfg.shop_counts = detail::parse_int_list(key, value);
    else if (key == "shop_teach_rate") cfg.shop_teach_rate = parse_number<double>(key, value);
    else if (key == "epsilon") cfg.epsilon = parse_number<double>(key, value);
    else if (key == "max_sweeps") cfg.max_sweeps = parse_number<std::int64_t>(key, value);
    else if (key == "record_every") cfg.record_every = parse_number<std::int64_t>(key, value);
    else if (key == "seed") cfg.seed = parse_number<std::uint64_t>(key, value);
    else throw ConfigError(std::string(key), "unknown key");
}

/// Parses `key = value` lines. `#` starts a comment. N, K, M, mode and seed
/// are required; every other key falls back to the SimConfig default, and
/// shop_counts defaults to one shop per brand.
inline SimConfig parse_config(std::istream& in) {
    SimConfig cfg;
    std::map<std::string, bool, std::less<>> seen;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view view(line);
        if (auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
        view = detail::trim(view);
        if (view.empty()) continue;
        const auto eq = view.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
        const std::string key(detail::trim(view.substr(0, eq)));
        if (seen.contains(key)) throw ConfigError(key, "duplicate key");
        set_field(cfg, key, view.substr(eq + 1));
        seen[key] = true;
    }
    for (const char* required : {"N", "K", "M", "mode", "seed"})
        if (!seen.contains(required)) throw ConfigError(required, "missing required key");
    if (!seen.contains("shop_counts") && cfg.N >= 1)
        cfg.shop_counts.assign(static_cast<std::size_t>(cfg.N), 1);
    validate(cfg);
    return cfg;
}

inline SimConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file '" + path.string() + "'");
    return parse_config(in);
}

}  // namespace brandsim
