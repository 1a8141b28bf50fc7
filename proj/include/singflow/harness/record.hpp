#pragma once

#include "singflow/harness/config.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace singflow::harness {

struct Assertion {
    std::string name;
    double value = 0.0;
    std::string relation;  // one of <, <=, >, >=, ==
    double threshold = 0.0;
    bool passed = false;
};

// A table written as <name>.csv.
struct Series {
    std::string name;
    std::string description;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

struct RunRecord {
    std::string experiment;
    std::vector<std::pair<std::string, std::string>> config;  // full parameter echo
    std::string version;
    double wall_clock_s = 0.0;
    std::vector<Assertion> assertions;
    std::vector<std::pair<std::string, double>> metrics;
    std::vector<Series> series;
    std::vector<std::filesystem::path> csv_paths;
    std::string status = "pass";  // pass | fail | error
    std::string error;

    // Appends an assertion and returns its verdict.
    bool check(const std::string& name, double value, const std::string& relation,
               double threshold);
    void metric(const std::string& name, double value);
    Series& add_series(std::string name, std::string description, std::vector<std::string> columns);

    bool all_passed() const;
    const Assertion& assertion(const std::string& name) const;
    double metric_value(const std::string& name) const;
};

std::string version_string();

// Writes every series as CSV (17 significant digits), record.jsonl and
// manifest.json into dir, filling csv_paths. The CSV bytes depend only on
// the computed data.
void write_outputs(RunRecord& rec, const std::filesystem::path& dir);

// Reads record.jsonl and the listed CSVs back.
RunRecord read_outputs(const std::filesystem::path& dir);

} // namespace singflow::harness
