#pragma once

#include "singflow/harness/record.hpp"

#include <map>
#include <string>
#include <vector>

namespace singflow::harness {

struct ComparisonEntry {
    std::string diagnostic;  // metric name or series.column
    double a = 0.0;          // value (metrics) or max |a| (series)
    double b = 0.0;
    double rel_diff = 0.0;
    double tolerance = 0.0;
    bool within = true;
};

struct ComparisonReport {
    std::vector<ComparisonEntry> entries;
    bool all_within() const;
};

// Per-diagnostic relative differences |a - b| / max(|a|, |b|, floor). Series
// are compared column-wise over their common leading rows. Tolerances are
// looked up by diagnostic name, falling back to default_tol. UsageError
// when the experiments differ.
ComparisonReport compare_runs(const RunRecord& a, const RunRecord& b,
                              const std::map<std::string, double>& tolerances = {},
                              double default_tol = 1e-2, double floor = 1e-300);

} // namespace singflow::harness
