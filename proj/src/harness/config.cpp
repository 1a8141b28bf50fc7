#include "singflow/harness/config.hpp"

#include "singflow/errors.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <charconv>
#include <fstream>

namespace singflow::harness {

namespace pt = boost::property_tree;

double Params::get_double(const std::string& key) const {
    const std::string s = get_string(key);
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != s.size()) {
        throw UsageError("parameter " + key + " = '" + s + "' is not a number");
    }
    return v;
}

long long Params::get_int(const std::string& key) const {
    const std::string s = get_string(key);
    long long v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
        throw UsageError("parameter " + key + " = '" + s + "' is not an integer");
    }
    return v;
}

std::string Params::get_string(const std::string& key) const {
    const auto it = values_.find(key);
    if (it == values_.end()) {
        throw UsageError("missing parameter " + key);
    }
    return it->second;
}

ExperimentConfig parse_config(std::istream& in) {
    pt::ptree tree;
    try {
        pt::read_ini(in, tree);
    } catch (const pt::ini_parser_error& e) {
        throw UsageError(std::string("malformed config: ") + e.what());
    }
    ExperimentConfig cfg;
    for (const auto& [section, body] : tree) {
        if (section == "experiment") {
            for (const auto& [key, node] : body) {
                const std::string value = node.get_value<std::string>();
                Params tmp;
                tmp.set(key, value);
                if (key == "name") {
                    cfg.experiment = value;
                } else if (key == "seed") {
                    const long long s = tmp.get_int(key);
                    if (s < 0) {
                        throw UsageError("seed must be non-negative");
                    }
                    cfg.seed = static_cast<std::uint64_t>(s);
                } else if (key == "resolution") {
                    const long long r = tmp.get_int(key);
                    if (r < 1 || r > 64) {
                        throw UsageError("resolution must be in [1, 64]");
                    }
                    cfg.resolution = static_cast<int>(r);
                } else {
                    throw UsageError("unknown [experiment] key " + key);
                }
            }
        } else if (section == "params") {
            for (const auto& [key, node] : body) {
                cfg.params.set(key, node.get_value<std::string>());
            }
        } else {
            throw UsageError("unknown config section [" + section + "]");
        }
    }
    return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw UsageError("cannot open config " + path.string());
    }
    return parse_config(in);
}

} // namespace singflow::harness
