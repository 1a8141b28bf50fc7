#include "singflow/harness/compare.hpp"

#include "singflow/errors.hpp"

#include <algorithm>
#include <cmath>

namespace singflow::harness {

namespace {

double relative(double a, double b, double floor) {
    if (a == b) {
        return 0.0;
    }
    return std::abs(a - b) / std::max({std::abs(a), std::abs(b), floor});
}

} // namespace

bool ComparisonReport::all_within() const {
    return std::all_of(entries.begin(), entries.end(),
                       [](const ComparisonEntry& e) { return e.within; });
}

ComparisonReport compare_runs(const RunRecord& a, const RunRecord& b,
                              const std::map<std::string, double>& tolerances, double default_tol,
                              double floor) {
    if (a.experiment != b.experiment) {
        throw UsageError("cannot compare runs of '" + a.experiment + "' and '" + b.experiment + "'");
    }
    const auto tol_for = [&](const std::string& name) {
        const auto it = tolerances.find(name);
        return it == tolerances.end() ? default_tol : it->second;
    };
    ComparisonReport rep;
    for (const auto& [name, va] : a.metrics) {
        for (const auto& [other, vb] : b.metrics) {
            if (other != name) {
                continue;
            }
            ComparisonEntry e{name, va, vb, relative(va, vb, floor), tol_for(name), true};
            e.within = e.rel_diff <= e.tolerance;
            rep.entries.push_back(e);
        }
    }
    for (const auto& sa : a.series) {
        for (const auto& sb : b.series) {
            if (sa.name != sb.name) {
                continue;
            }
            const std::size_t rows = std::min(sa.rows.size(), sb.rows.size());
            for (std::size_t c = 0; c < sa.columns.size(); ++c) {
                const auto it = std::find(sb.columns.begin(), sb.columns.end(), sa.columns[c]);
                if (it == sb.columns.end()) {
                    continue;
                }
                const auto cb = static_cast<std::size_t>(it - sb.columns.begin());
                double max_a = 0.0;
                double max_b = 0.0;
                double max_diff = 0.0;
                for (std::size_t r = 0; r < rows; ++r) {
                    if (c >= sa.rows[r].size() || cb >= sb.rows[r].size()) {
                        continue;
                    }
                    const double x = sa.rows[r][c];
                    const double y = sb.rows[r][cb];
                    max_a = std::max(max_a, std::abs(x));
                    max_b = std::max(max_b, std::abs(y));
                    if (x != y) {
                        max_diff = std::max(max_diff, std::abs(x - y));
                    }
                }
                const std::string name = sa.name + "." + sa.columns[c];
                const double scale = std::max({max_a, max_b, floor});
                ComparisonEntry e{name, max_a, max_b, max_diff == 0.0 ? 0.0 : max_diff / scale,
                                  tol_for(name), true};
                e.within = e.rel_diff <= e.tolerance;
                rep.entries.push_back(e);
            }
        }
    }
    return rep;
}

} // namespace singflow::harness
