#include "doctest.h"

#include "singflow/errors.hpp"
#include "singflow/harness/compare.hpp"
#include "singflow/harness/config.hpp"
#include "singflow/harness/record.hpp"
#include "singflow/harness/registry.hpp"

#include <filesystem>
#include <sstream>

using namespace singflow;
using namespace singflow::harness;

namespace {

ExperimentConfig parse(const std::string& text) {
    std::istringstream in(text);
    return parse_config(in);
}

RunRecord sample_record() {
    RunRecord rec;
    rec.experiment = "demo";
    rec.version = version_string();
    rec.config = {{"alpha", "1.5"}, {"beta", "2"}};
    rec.check("small", 0.25, "<", 1.0);
    rec.check("big", 3.0, ">=", 2.0);
    rec.metric("ratio", 0.1 + 0.2);
    Series& s = rec.add_series("series", "demo rows", {"t", "value"});
    s.rows = {{0.0, 1.0}, {0.5, 1.0 / 3.0}, {1.0, -2.5e-17}};
    return rec;
}

} // namespace

TEST_CASE("config parsing") {
    const ExperimentConfig c = parse(
        "[experiment]\nname = ring-single\nseed = 7\nresolution = 2\n[params]\nsteps = 100\n");
    CHECK(c.experiment == "ring-single");
    CHECK(c.seed == 7);
    CHECK(c.resolution == 2);
    CHECK(c.params.get_int("steps") == 100);
    CHECK(c.params.get_double("steps") == 100.0);

    const ExperimentConfig d = parse("[experiment]\nname = x\n");
    CHECK(d.seed == kDefaultSeed);
    CHECK(d.resolution == 1);

    CHECK_THROWS_AS(parse("[bogus]\na = 1\n"), UsageError);
    CHECK_THROWS_AS(parse("[experiment]\ncolour = red\n"), UsageError);
    CHECK_THROWS_AS(parse("[experiment]\nresolution = 0\n"), UsageError);
    CHECK_THROWS_AS(parse("[experiment]\nresolution = 65\n"), UsageError);
    CHECK_THROWS_AS(parse("[experiment]\nseed = -1\n"), UsageError);
    CHECK_THROWS_AS(parse("[experiment\nname = x\n"), UsageError);
    CHECK_THROWS_AS(c.params.get_double("missing"), UsageError);

    Params p;
    p.set("word", "abc");
    CHECK_THROWS_AS(p.get_double("word"), UsageError);
    CHECK_THROWS_AS(p.get_int("word"), UsageError);
    CHECK(p.get_string("word") == "abc");
    CHECK_THROWS_AS(load_config("/nonexistent/singflow.ini"), UsageError);
}

TEST_CASE("registry") {
    const auto& all = presets();
    CHECK(all.size() == 9);
    ExperimentConfig cfg;
    CHECK_THROWS_AS(run_preset("no-such-preset", cfg), UsageError);
    cfg.params.set("not_a_parameter", "1");
    CHECK_THROWS_AS(run_preset("ring-single", cfg), UsageError);
}

TEST_CASE("a short preset run records assertions and series") {
    ExperimentConfig cfg;
    cfg.params.set("steps", "200");
    const RunRecord rec = run_preset("ring-single", cfg);
    CHECK(rec.experiment == "ring-single");
    CHECK_FALSE(rec.assertions.empty());
    CHECK_FALSE(rec.series.empty());
    CHECK(rec.status != "error");
}

TEST_CASE("outputs round trip") {
    RunRecord rec = sample_record();
    const auto dir = std::filesystem::temp_directory_path() / "singflow_record_roundtrip";
    std::filesystem::remove_all(dir);
    write_outputs(rec, dir);
    CHECK(std::filesystem::exists(dir / "record.jsonl"));
    CHECK(std::filesystem::exists(dir / "manifest.json"));
    const RunRecord back = read_outputs(dir);
    CHECK(back.experiment == "demo");
    CHECK(back.assertions.size() == 2);
    CHECK(back.assertion("small").passed);
    CHECK(back.metric_value("ratio") == rec.metric_value("ratio"));
    REQUIRE(back.series.size() == 1);
    CHECK(back.series[0].rows == rec.series[0].rows);

    const ComparisonReport same = compare_runs(rec, back);
    CHECK(same.all_within());
    for (const auto& e : same.entries) CHECK(e.rel_diff == 0.0);

    RunRecord shifted = back;
    shifted.metrics[0].second *= 1.5;
    CHECK_FALSE(compare_runs(rec, shifted).all_within());
    CHECK(compare_runs(rec, shifted, {{"ratio", 1.0}}).all_within());

    RunRecord other = back;
    other.experiment = "other";
    CHECK_THROWS_AS(compare_runs(rec, other), UsageError);
    std::filesystem::remove_all(dir);
}

TEST_CASE("record verdicts") {
    RunRecord rec;
    CHECK(rec.check("eq", 0.0, "==", 0.0));
    CHECK_FALSE(rec.check("lt", 1.0, "<", 1.0));
    CHECK(rec.check("le", 1.0, "<=", 1.0));
    CHECK_FALSE(rec.all_passed());
    CHECK_THROWS(rec.assertion("missing"));
}

TEST_CASE("doubling the boundary-layer height leaves the steady layer unchanged") {
    ExperimentConfig base;
    base.params.set("y_max", "1");
    base.params.set("ny", "161");
    ExperimentConfig tall;
    tall.params.set("y_max", "2");
    tall.params.set("ny", "321");
    const RunRecord a = run_preset("prandtl-blasius-steady", base);
    const RunRecord b = run_preset("prandtl-blasius-steady", tall);
    // The taller box samples the flat Blasius tail, where u_y is exactly zero,
    // so only the layer thickness is compared.
    REQUIRE(a.status != "error");
    REQUIRE(b.status != "error");
    const double ea = a.assertion("displacement_thickness_error_outflow").value;
    const double eb = b.assertion("displacement_thickness_error_outflow").value;
    CHECK(std::abs(ea - eb) < 2e-3);
}
