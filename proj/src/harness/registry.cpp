#include "singflow/harness/registry.hpp"

#include "singflow/errors.hpp"

#include <chrono>

namespace singflow::harness {

const std::vector<PresetInfo>& presets() {
    static const std::vector<PresetInfo> table = [] {
        std::vector<PresetInfo> all;
        for (auto&& group : {conical_presets(), prandtl_presets(), vortex_presets()}) {
            all.insert(all.end(), group.begin(), group.end());
        }
        return all;
    }();
    return table;
}

RunRecord run_preset(const std::string& name, const ExperimentConfig& cfg) {
    const PresetInfo* info = nullptr;
    for (const auto& p : presets()) {
        if (p.name == name) {
            info = &p;
        }
    }
    if (!info) {
        throw UsageError("unknown preset '" + name + "'");
    }

    RunContext ctx;
    ctx.resolution = cfg.resolution;
    ctx.seed = cfg.seed;
    for (const auto& [k, v] : info->defaults) {
        ctx.params.set(k, v);
    }
    for (const auto& [k, v] : cfg.params.values()) {
        if (!ctx.params.has(k)) {
            throw UsageError("preset " + name + " has no parameter '" + k + "'");
        }
        ctx.params.set(k, v);
    }

    RunRecord rec;
    rec.experiment = name;
    rec.version = version_string();
    rec.config.emplace_back("experiment", name);
    rec.config.emplace_back("resolution", std::to_string(ctx.resolution));
    rec.config.emplace_back("seed", std::to_string(ctx.seed));
    for (const auto& [k, v] : ctx.params.values()) {
        rec.config.emplace_back(k, v);
    }

    const auto start = std::chrono::steady_clock::now();
    try {
        info->run(ctx, rec);
        rec.status = rec.all_passed() ? "pass" : "fail";
    } catch (const NumericalError& e) {
        rec.status = "error";
        rec.error = e.what();
    }
    rec.wall_clock_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (rec.status == "pass" && rec.assertions.empty()) {
        rec.status = "fail";
        rec.error = "preset registered no assertions";
    }
    return rec;
}

} // namespace singflow::harness
