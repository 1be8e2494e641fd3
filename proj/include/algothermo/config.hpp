#pragma once

// Run configuration: a single JSON document. Every key is optional; missing
// keys take the desk-scale defaults below, unknown keys are rejected.
//
//   {
//     "universe": {"size": 4, "labels": ["a", "b", "c", "d"]},
//     "marker": "011",
//     "max_core_length": 19,
//     "excess": 4,
//     "excess_list": [0, 2, 4, 6, 8],
//     "beta_grid": [0.001, ..., 50]        // or {"min": .., "max": .., "points": ..}
//     "small_beta": 0.001,
//     "coupling": 20,
//     "quadrature_nodes": 64,
//     "pairs": [[0, 1], [1, 0]],            // default: all ordered pairs
//     "protocol": {"steps": 64, "sweeps": 200, "trajectories": 1000, "seed": 20251018},
//     "output_dir": "out",
//     "threads": 1
//   }

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "algothermo/machine.hpp"

namespace algothermo {

struct ProtocolConfig {
    int steps = 64;
    int sweeps = 200;
    int trajectories = 1000;
    std::uint64_t seed = 20251018;

    friend bool operator==(const ProtocolConfig&, const ProtocolConfig&) = default;
};

struct Config {
    int universe_size = 4;
    std::vector<std::string> labels;
    std::string marker = "011";
    int max_core_length = 19;
    int excess = 4;
    std::vector<int> excess_list{0, 2, 4, 6, 8};
    std::vector<double> beta_grid = default_beta_grid();
    double small_beta = 1e-3;
    double coupling = 20.0;
    int quadrature_nodes = 64;
    std::vector<std::pair<int, int>> pairs;
    ProtocolConfig protocol;
    std::string output_dir = "out";
    int threads = 1;

    // `points` log-spaced values on [lo, hi] with ln 2 inserted.
    static std::vector<double> log_beta_grid(double lo, double hi, int points);
    static std::vector<double> default_beta_grid() { return log_beta_grid(1e-3, 50.0, 25); }

    // Throws ConfigError naming the offending key.
    static Config from_json(const nlohmann::json& doc);
    static Config load(const std::filesystem::path& path);
    nlohmann::json to_json() const;

    // Throws ConfigError on the first violated bound.
    void validate() const;

    Universe universe() const;
    Marker marker_bits() const;

    // Configured pairs, or every ordered pair of distinct objects.
    std::vector<std::pair<int, int>> resolved_pairs() const;

    friend bool operator==(const Config&, const Config&) = default;
};

}  // namespace algothermo
