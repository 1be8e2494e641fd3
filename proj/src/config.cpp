#include "algothermo/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <set>

#include "algothermo/errors.hpp"

namespace algothermo {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& key, const std::string& reason) {
    throw ConfigError("config: " + key + ": " + reason);
}

template <typename T>
T read(const json& node, const std::string& key) {
    try {
        return node.get<T>();
    } catch (const json::exception& e) {
        fail(key, std::string("wrong type (") + e.what() + ")");
    }
}

void reject_unknown(const json& node, const std::string& where, std::initializer_list<const char*> known) {
    if (!node.is_object()) fail(where.empty() ? "<root>" : where, "expected an object");
    const std::set<std::string> allowed(known.begin(), known.end());
    for (const auto& [key, value] : node.items()) {
        if (!allowed.contains(key)) fail(where.empty() ? key : where + "." + key, "unknown key");
    }
}

}  // namespace

std::vector<double> Config::log_beta_grid(double lo, double hi, int points) {
    if (!(lo > 0.0) || !(hi > lo) || points < 2) fail("beta_grid", "need 0 < min < max and at least two points");
    std::vector<double> grid;
    const double step = std::log(hi / lo) / (points - 1);
    for (int i = 0; i < points; ++i) grid.push_back(i + 1 == points ? hi : lo * std::exp(step * i));
    grid.push_back(std::numbers::ln2);
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    return grid;
}

Config Config::from_json(const json& doc) {
    reject_unknown(doc, "",
                   {"universe", "marker", "max_core_length", "excess", "excess_list", "beta_grid", "small_beta",
                    "coupling", "quadrature_nodes", "pairs", "protocol", "output_dir", "threads"});
    Config c;
    if (doc.contains("universe")) {
        const json& u = doc.at("universe");
        reject_unknown(u, "universe", {"size", "labels"});
        if (u.contains("size")) c.universe_size = read<int>(u.at("size"), "universe.size");
        if (u.contains("labels")) c.labels = read<std::vector<std::string>>(u.at("labels"), "universe.labels");
    }
    if (doc.contains("marker")) c.marker = read<std::string>(doc.at("marker"), "marker");
    if (doc.contains("max_core_length")) c.max_core_length = read<int>(doc.at("max_core_length"), "max_core_length");
    if (doc.contains("excess")) c.excess = read<int>(doc.at("excess"), "excess");
    if (doc.contains("excess_list")) c.excess_list = read<std::vector<int>>(doc.at("excess_list"), "excess_list");
    if (doc.contains("beta_grid")) {
        const json& g = doc.at("beta_grid");
        if (g.is_array()) {
            c.beta_grid = read<std::vector<double>>(g, "beta_grid");
        } else {
            reject_unknown(g, "beta_grid", {"min", "max", "points"});
            c.beta_grid = log_beta_grid(read<double>(g.value("min", json(1e-3)), "beta_grid.min"),
                                        read<double>(g.value("max", json(50.0)), "beta_grid.max"),
                                        read<int>(g.value("points", json(25)), "beta_grid.points"));
        }
    }
    if (doc.contains("small_beta")) c.small_beta = read<double>(doc.at("small_beta"), "small_beta");
    if (doc.contains("coupling")) c.coupling = read<double>(doc.at("coupling"), "coupling");
    if (doc.contains("quadrature_nodes")) c.quadrature_nodes = read<int>(doc.at("quadrature_nodes"), "quadrature_nodes");
    if (doc.contains("pairs")) c.pairs = read<std::vector<std::pair<int, int>>>(doc.at("pairs"), "pairs");
    if (doc.contains("protocol")) {
        const json& p = doc.at("protocol");
        reject_unknown(p, "protocol", {"steps", "sweeps", "trajectories", "seed"});
        if (p.contains("steps")) c.protocol.steps = read<int>(p.at("steps"), "protocol.steps");
        if (p.contains("sweeps")) c.protocol.sweeps = read<int>(p.at("sweeps"), "protocol.sweeps");
        if (p.contains("trajectories")) c.protocol.trajectories = read<int>(p.at("trajectories"), "protocol.trajectories");
        if (p.contains("seed")) c.protocol.seed = read<std::uint64_t>(p.at("seed"), "protocol.seed");
    }
    if (doc.contains("output_dir")) c.output_dir = read<std::string>(doc.at("output_dir"), "output_dir");
    if (doc.contains("threads")) c.threads = read<int>(doc.at("threads"), "threads");
    c.validate();
    return c;
}

Config Config::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open " + path.string());
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("config: " + path.string() + ": " + e.what());
    }
    return from_json(doc);
}

json Config::to_json() const {
    json doc;
    doc["universe"] = {{"size", universe_size}};
    if (!labels.empty()) doc["universe"]["labels"] = labels;
    doc["marker"] = marker;
    doc["max_core_length"] = max_core_length;
    doc["excess"] = excess;
    doc["excess_list"] = excess_list;
    doc["beta_grid"] = beta_grid;
    doc["small_beta"] = small_beta;
    doc["coupling"] = coupling;
    doc["quadrature_nodes"] = quadrature_nodes;
    if (!pairs.empty()) doc["pairs"] = pairs;
    doc["protocol"] = {{"steps", protocol.steps},
                       {"sweeps", protocol.sweeps},
                       {"trajectories", protocol.trajectories},
                       {"seed", protocol.seed}};
    doc["output_dir"] = output_dir;
    doc["threads"] = threads;
    return doc;
}

void Config::validate() const {
    if (universe_size < kMinUniverseSize || universe_size > kMaxUniverseSize) {
        fail("universe.size", "must be in [" + std::to_string(kMinUniverseSize) + ", " +
                                  std::to_string(kMaxUniverseSize) + "], got " + std::to_string(universe_size));
    }
    if (!labels.empty() && static_cast<int>(labels.size()) != universe_size) {
        fail("universe.labels", "expected " + std::to_string(universe_size) + " labels");
    }
    try {
        Marker m(BitString::from_string(marker));
    } catch (const std::invalid_argument& e) {
        fail("marker", e.what());
    }
    if (max_core_length < 1 || max_core_length > kMaxCoreLength) {
        fail("max_core_length", "must be in [1, " + std::to_string(kMaxCoreLength) + "]");
    }
    if (excess < 0) fail("excess", "must be non-negative");
    if (excess_list.empty()) fail("excess_list", "must not be empty");
    for (int e : excess_list) {
        if (e < 0) fail("excess_list", "entries must be non-negative");
    }
    if (beta_grid.empty()) fail("beta_grid", "must not be empty");
    for (std::size_t i = 0; i < beta_grid.size(); ++i) {
        if (!(beta_grid[i] > 0.0) || !std::isfinite(beta_grid[i])) fail("beta_grid", "entries must be positive");
        if (i > 0 && !(beta_grid[i] > beta_grid[i - 1])) fail("beta_grid", "must be strictly increasing");
    }
    if (!(small_beta > 0.0)) fail("small_beta", "must be positive");
    if (!(coupling > 0.0) || !std::isfinite(coupling)) fail("coupling", "must be finite and positive");
    if (quadrature_nodes < 2) fail("quadrature_nodes", "must be at least 2");
    for (const auto& [x, y] : pairs) {
        if (x < 0 || x >= universe_size || y < 0 || y >= universe_size) {
            fail("pairs", "object id outside universe in [" + std::to_string(x) + ", " + std::to_string(y) + "]");
        }
    }
    if (protocol.steps < 1) fail("protocol.steps", "must be at least 1");
    if (protocol.sweeps < 0) fail("protocol.sweeps", "must be non-negative");
    if (protocol.trajectories < 2) fail("protocol.trajectories", "must be at least 2");
    if (output_dir.empty()) fail("output_dir", "must not be empty");
    if (threads < 1) fail("threads", "must be at least 1");
}

Universe Config::universe() const { return Universe(universe_size, labels); }

Marker Config::marker_bits() const { return Marker(BitString::from_string(marker)); }

std::vector<std::pair<int, int>> Config::resolved_pairs() const {
    if (!pairs.empty()) return pairs;
    std::vector<std::pair<int, int>> all;
    for (int x = 0; x < universe_size; ++x) {
        for (int y = 0; y < universe_size; ++y) {
            if (x != y) all.emplace_back(x, y);
        }
    }
    return all;
}

}  // namespace algothermo
