#pragma once

// Experiment configuration: an INI file with an [experiment] section
// (name, seed, resolution) and a [params] section of preset overrides.
//
//     [experiment]
//     name = conical-perturbed
//     seed = 7
//
//     [params]
//     eps = 0.002

#include <cstdint>
#include <filesystem>
#include <istream>
#include <map>
#include <string>

namespace singflow::harness {

inline constexpr std::uint64_t kDefaultSeed = 20240611;

class Params {
public:
    Params() = default;
    explicit Params(std::map<std::string, std::string> values) : values_(std::move(values)) {}

    bool has(const std::string& key) const { return values_.count(key) != 0; }
    void set(const std::string& key, std::string value) { values_[key] = std::move(value); }
    const std::map<std::string, std::string>& values() const noexcept { return values_; }

    // UsageError if missing or not parseable.
    double get_double(const std::string& key) const;
    long long get_int(const std::string& key) const;
    std::string get_string(const std::string& key) const;

private:
    std::map<std::string, std::string> values_;
};

struct ExperimentConfig {
    std::string experiment;
    Params params;
    int resolution = 1;
    std::uint64_t seed = kDefaultSeed;
};

// UsageError on unreadable or malformed input.
ExperimentConfig parse_config(std::istream& in);
ExperimentConfig load_config(const std::filesystem::path& path);

} // namespace singflow::harness
