#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <string>

#include "algothermo/config.hpp"
#include "algothermo/errors.hpp"

using algothermo::Config;
using algothermo::ConfigError;
using nlohmann::json;

namespace {

std::string error_of(const json& doc) {
    try {
        Config::from_json(doc);
    } catch (const ConfigError& e) {
        return e.what();
    }
    return "";
}

}  // namespace

TEST_CASE("defaults") {
    const Config c = Config::from_json(json::object());
    CHECK(c.universe_size == 4);
    CHECK(c.marker == "011");
    CHECK(c.max_core_length == 19);
    CHECK(c.excess_list == std::vector<int>{0, 2, 4, 6, 8});
    CHECK(c.resolved_pairs().size() == 12);
    CHECK(c.beta_grid.size() == 26);
    CHECK(c.beta_grid.front() == 1e-3);
    CHECK(c.beta_grid.back() == 50.0);
    CHECK(std::find(c.beta_grid.begin(), c.beta_grid.end(), std::numbers::ln2) != c.beta_grid.end());
}

TEST_CASE("round trip through json") {
    json doc = {{"universe", {{"size", 5}, {"labels", {"a", "b", "c", "d", "e"}}}},
                {"marker", "0001"},
                {"pairs", {{0, 4}, {4, 0}}},
                {"beta_grid", {{"min", 0.01}, {"max", 10}, {"points", 7}}},
                {"protocol", {{"seed", 5}, {"steps", 2}}}};
    const Config c = Config::from_json(doc);
    CHECK(c.universe().label(4) == "e");
    CHECK(c.marker_bits().length() == 4);
    CHECK(c.beta_grid.size() == 8);
    CHECK(c.protocol.seed == 5);
    CHECK(Config::from_json(c.to_json()) == c);
    CHECK(Config::from_json(json::parse(c.to_json().dump())) == c);
}

TEST_CASE("validation names the offending key") {
    CHECK(error_of({{"marker", "11"}}).rfind("config: marker:", 0) == 0);
    CHECK(error_of({{"universe", {{"size", 1}}}}).rfind("config: universe.size:", 0) == 0);
    CHECK(error_of({{"universe", {{"size", 25}}}}).rfind("config: universe.size:", 0) == 0);
    CHECK(error_of({{"bogus", 1}}).rfind("config: bogus: unknown key", 0) == 0);
    CHECK(error_of({{"protocol", {{"sede", 1}}}}).rfind("config: protocol.sede: unknown key", 0) == 0);
    CHECK(error_of({{"max_core_length", "x"}}).rfind("config: max_core_length: wrong type", 0) == 0);
    CHECK(error_of({{"max_core_length", 41}}).rfind("config: max_core_length:", 0) == 0);
    CHECK(error_of({{"beta_grid", {1.0, 0.5}}}).rfind("config: beta_grid:", 0) == 0);
    CHECK(error_of({{"beta_grid", {0.0, 0.5}}}).rfind("config: beta_grid:", 0) == 0);
    CHECK(error_of({{"pairs", {{0, 7}}}}).rfind("config: pairs:", 0) == 0);
    CHECK(error_of({{"coupling", -1}}).rfind("config: coupling:", 0) == 0);
    CHECK(error_of({{"threads", 0}}).rfind("config: threads:", 0) == 0);
    CHECK(error_of({{"protocol", {{"trajectories", 1}}}}).rfind("config: protocol.trajectories:", 0) == 0);
    CHECK(error_of(json::array()).rfind("config: <root>:", 0) == 0);
}

TEST_CASE("load from file") {
    const Config c = Config::load(std::filesystem::path(ALGOTHERMO_SOURCE_DIR) / "configs" / "default.json");
    CHECK(c.universe_size == 4);
    CHECK(c.labels.size() == 4);
    CHECK(c.beta_grid == Config::default_beta_grid());

    const auto bad = std::filesystem::temp_directory_path() / "algothermo_bad_config.json";
    std::ofstream(bad) << "{ not json";
    CHECK_THROWS_AS(Config::load(bad), ConfigError);
    std::filesystem::remove(bad);
    CHECK_THROWS_AS(Config::load("/nonexistent/config.json"), ConfigError);
}
