#pragma once

#include "singflow/harness/record.hpp"

#include <functional>
#include <string>
#include <vector>

namespace singflow::harness {

struct RunContext {
    Params params;  // defaults merged with overrides
    int resolution = 1;
    std::uint64_t seed = kDefaultSeed;
};

struct PresetInfo {
    std::string name;
    std::string description;
    std::vector<std::pair<std::string, std::string>> defaults;
    std::function<void(const RunContext&, RunRecord&)> run;
};

const std::vector<PresetInfo>& presets();

// UsageError for unknown presets or override keys the preset does not
// declare. Module NumericalErrors are caught and recorded with status
// "error"; failed assertions give status "fail".
RunRecord run_preset(const std::string& name, const ExperimentConfig& cfg);

// Preset tables, one per module.
std::vector<PresetInfo> conical_presets();
std::vector<PresetInfo> prandtl_presets();
std::vector<PresetInfo> vortex_presets();

} // namespace singflow::harness
