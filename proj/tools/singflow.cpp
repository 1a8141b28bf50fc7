// Command-line front end.
//
//   singflow list
//   singflow <preset> [--config F] --out DIR [--resolution N] [--seed S] [--assert-only]
//   singflow run --config F --out DIR [...]
//   singflow compare DIR_A DIR_B [--tol X]
//
// Exit codes: 0 pass, 1 assertion failure, 2 usage error, 3 numerical failure.

#include "singflow/errors.hpp"
#include "singflow/harness/compare.hpp"
#include "singflow/harness/registry.hpp"

#include "CLI11.hpp"

#include <cstdio>
#include <iostream>
#include <optional>

namespace sh = singflow::harness;

namespace {

constexpr int kPass = 0;
constexpr int kAssertionFailure = 1;
constexpr int kUsage = 2;
constexpr int kNumerical = 3;

struct RunOptions {
    std::string config;
    std::string out;
    std::optional<int> resolution;
    std::optional<std::uint64_t> seed;
    bool assert_only = false;
};

void add_run_options(CLI::App* cmd, RunOptions& opts) {
    cmd->add_option("--config", opts.config, "INI configuration file");
    cmd->add_option("--out", opts.out, "output directory");
    cmd->add_option("--resolution", opts.resolution, "resolution multiplier")->check(CLI::Range(1, 64));
    cmd->add_option("--seed", opts.seed, "random seed");
    cmd->add_flag("--assert-only", opts.assert_only, "evaluate assertions without writing files");
}

int run(const std::string& preset, const RunOptions& opts) {
    sh::ExperimentConfig cfg;
    if (!opts.config.empty()) {
        cfg = sh::load_config(opts.config);
    }
    std::string name = preset;
    if (name == "run") {
        if (cfg.experiment.empty()) {
            throw singflow::UsageError("'run' needs a config with [experiment] name");
        }
        name = cfg.experiment;
    } else if (!cfg.experiment.empty() && cfg.experiment != name) {
        throw singflow::UsageError("config is for '" + cfg.experiment + "', not '" + name + "'");
    }
    if (opts.resolution) {
        cfg.resolution = *opts.resolution;
    }
    if (opts.seed) {
        cfg.seed = *opts.seed;
    }
    if (opts.out.empty() && !opts.assert_only) {
        throw singflow::UsageError("--out is required unless --assert-only is given");
    }

    sh::RunRecord rec = sh::run_preset(name, cfg);
    if (!opts.assert_only) {
        sh::write_outputs(rec, opts.out);
    }
    for (const auto& a : rec.assertions) {
        std::printf("%s  %-44s %.6g %s %.6g\n", a.passed ? "PASS" : "FAIL", a.name.c_str(), a.value,
                    a.relation.c_str(), a.threshold);
    }
    std::printf("%s: %s (%.2f s)\n", name.c_str(), rec.status.c_str(), rec.wall_clock_s);
    if (rec.status == "error") {
        std::fprintf(stderr, "%s\n", rec.error.c_str());
        return kNumerical;
    }
    return rec.status == "pass" ? kPass : kAssertionFailure;
}

int compare(const std::string& a, const std::string& b, double tol) {
    const sh::RunRecord ra = sh::read_outputs(a);
    const sh::RunRecord rb = sh::read_outputs(b);
    const sh::ComparisonReport rep = sh::compare_runs(ra, rb, {}, tol);
    for (const auto& e : rep.entries) {
        std::printf("%s  %-44s %.6g %.6g rel %.3e\n", e.within ? "OK  " : "DIFF", e.diagnostic.c_str(),
                    e.a, e.b, e.rel_diff);
    }
    return rep.all_within() ? kPass : kAssertionFailure;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"singular-flow experiments"};
    app.require_subcommand(1);

    app.add_subcommand("list", "list presets");

    RunOptions opts;
    std::vector<std::pair<std::string, CLI::App*>> runners;
    auto* run_cmd = app.add_subcommand("run", "run the experiment named in --config");
    add_run_options(run_cmd, opts);
    runners.emplace_back("run", run_cmd);
    for (const auto& p : sh::presets()) {
        auto* cmd = app.add_subcommand(p.name, p.description);
        add_run_options(cmd, opts);
        runners.emplace_back(p.name, cmd);
    }

    std::string dir_a;
    std::string dir_b;
    double tol = 1e-2;
    auto* cmp = app.add_subcommand("compare", "relative differences between two output directories");
    cmp->add_option("a", dir_a)->required();
    cmp->add_option("b", dir_b)->required();
    cmp->add_option("--tol", tol, "relative tolerance");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e) == 0 ? kPass : kUsage;
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (app.got_subcommand("list")) {
            for (const auto& p : sh::presets()) {
                std::printf("%-24s %s\n", p.name.c_str(), p.description.c_str());
            }
            return kPass;
        }
        if (cmp->parsed()) {
            return compare(dir_a, dir_b, tol);
        }
        for (const auto& [name, cmd] : runners) {
            if (cmd->parsed()) {
                return run(name, opts);
            }
        }
    } catch (const singflow::UsageError& e) {
        std::fprintf(stderr, "usage error: %s\n", e.what());
        return kUsage;
    } catch (const singflow::NumericalError& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return kNumerical;
    }
    return kUsage;
}
