#include "singflow/harness/record.hpp"

#include "singflow/errors.hpp"

#include "json.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

#ifndef SINGFLOW_VERSION
#define SINGFLOW_VERSION "unknown"
#endif

namespace singflow::harness {

using nlohmann::json;

namespace {

bool compare(double value, const std::string& relation, double threshold) {
    if (relation == "<") {
        return value < threshold;
    }
    if (relation == "<=") {
        return value <= threshold;
    }
    if (relation == ">") {
        return value > threshold;
    }
    if (relation == ">=") {
        return value >= threshold;
    }
    if (relation == "==") {
        return value == threshold;
    }
    throw UsageError("unknown relation " + relation);
}

json number(double v) {
    return std::isfinite(v) ? json(v) : json(nullptr);
}

double from_json(const json& j) {
    return j.is_null() ? std::numeric_limits<double>::quiet_NaN() : j.get<double>();
}

void write_csv(const Series& s, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw UsageError("cannot write " + path.string());
    }
    for (std::size_t c = 0; c < s.columns.size(); ++c) {
        out << (c ? "," : "") << s.columns[c];
    }
    out << '\n' << std::setprecision(17);
    for (const auto& row : s.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            out << (c ? "," : "") << row[c];
        }
        out << '\n';
    }
}

Series read_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw UsageError("cannot read " + path.string());
    }
    Series s;
    s.name = path.stem().string();
    std::string line;
    if (std::getline(in, line)) {
        std::istringstream head(line);
        std::string col;
        while (std::getline(head, col, ',')) {
            s.columns.push_back(col);
        }
    }
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        std::vector<double> row;
        std::istringstream cells(line);
        std::string cell;
        while (std::getline(cells, cell, ',')) {
            try {
                row.push_back(std::stod(cell));
            } catch (const std::exception&) {
                row.push_back(std::numeric_limits<double>::quiet_NaN());
            }
        }
        s.rows.push_back(std::move(row));
    }
    return s;
}

} // namespace

bool RunRecord::check(const std::string& name, double value, const std::string& relation,
                      double threshold) {
    const bool ok = std::isfinite(value) && compare(value, relation, threshold);
    assertions.push_back(Assertion{name, value, relation, threshold, ok});
    return ok;
}

void RunRecord::metric(const std::string& name, double value) {
    metrics.emplace_back(name, value);
}

Series& RunRecord::add_series(std::string name, std::string description,
                              std::vector<std::string> columns) {
    series.push_back(Series{std::move(name), std::move(description), std::move(columns), {}});
    return series.back();
}

bool RunRecord::all_passed() const {
    for (const auto& a : assertions) {
        if (!a.passed) {
            return false;
        }
    }
    return true;
}

const Assertion& RunRecord::assertion(const std::string& name) const {
    for (const auto& a : assertions) {
        if (a.name == name) {
            return a;
        }
    }
    throw UsageError("no assertion named " + name);
}

double RunRecord::metric_value(const std::string& name) const {
    for (const auto& [k, v] : metrics) {
        if (k == name) {
            return v;
        }
    }
    throw UsageError("no metric named " + name);
}

std::string version_string() {
    return SINGFLOW_VERSION;
}

void write_outputs(RunRecord& rec, const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) {
        throw UsageError("cannot create output directory " + dir.string());
    }
    rec.csv_paths.clear();
    json manifest;
    manifest["experiment"] = rec.experiment;
    manifest["files"] = json::array();
    for (const auto& s : rec.series) {
        const std::filesystem::path file = dir / (s.name + ".csv");
        write_csv(s, file);
        rec.csv_paths.push_back(file);
        manifest["files"].push_back(
            {{"file", s.name + ".csv"}, {"description", s.description}, {"columns", s.columns}});
    }

    std::ofstream meta(dir / "record.jsonl");
    if (!meta) {
        throw UsageError("cannot write record.jsonl");
    }
    meta << json{{"kind", "run"},
                 {"experiment", rec.experiment},
                 {"version", rec.version},
                 {"status", rec.status},
                 {"error", rec.error},
                 {"wall_clock_s", rec.wall_clock_s}}
                .dump()
         << '\n';
    for (const auto& [k, v] : rec.config) {
        meta << json{{"kind", "config"}, {"key", k}, {"value", v}}.dump() << '\n';
    }
    for (const auto& [k, v] : rec.metrics) {
        meta << json{{"kind", "metric"}, {"name", k}, {"value", number(v)}}.dump() << '\n';
    }
    for (const auto& a : rec.assertions) {
        meta << json{{"kind", "assertion"},
                     {"name", a.name},
                     {"value", number(a.value)},
                     {"relation", a.relation},
                     {"threshold", number(a.threshold)},
                     {"passed", a.passed}}
                    .dump()
             << '\n';
    }
    for (const auto& p : rec.csv_paths) {
        meta << json{{"kind", "file"}, {"path", p.filename().string()}}.dump() << '\n';
    }

    std::ofstream man(dir / "manifest.json");
    if (!man) {
        throw UsageError("cannot write manifest.json");
    }
    man << manifest.dump(2) << '\n';
}

RunRecord read_outputs(const std::filesystem::path& dir) {
    std::ifstream in(dir / "record.jsonl");
    if (!in) {
        throw UsageError("no record.jsonl in " + dir.string());
    }
    RunRecord rec;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        json j;
        try {
            j = json::parse(line);
        } catch (const json::exception& e) {
            throw UsageError(std::string("malformed record line: ") + e.what());
        }
        const std::string kind = j.value("kind", "");
        if (kind == "run") {
            rec.experiment = j.value("experiment", "");
            rec.version = j.value("version", "");
            rec.status = j.value("status", "");
            rec.error = j.value("error", "");
            rec.wall_clock_s = j.value("wall_clock_s", 0.0);
        } else if (kind == "config") {
            rec.config.emplace_back(j.at("key").get<std::string>(), j.at("value").get<std::string>());
        } else if (kind == "metric") {
            rec.metric(j.at("name").get<std::string>(), from_json(j.at("value")));
        } else if (kind == "assertion") {
            rec.assertions.push_back(Assertion{j.at("name").get<std::string>(), from_json(j.at("value")),
                                               j.at("relation").get<std::string>(),
                                               from_json(j.at("threshold")), j.at("passed").get<bool>()});
        } else if (kind == "file") {
            const std::filesystem::path p = dir / j.at("path").get<std::string>();
            rec.csv_paths.push_back(p);
            rec.series.push_back(read_csv(p));
        }
    }
    return rec;
}

} // namespace singflow::harness
