#include <doctest.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "cbm/config.hpp"
#include "cbm/report.hpp"
#include "fixtures.hpp"

using namespace cbm;

namespace {

const std::string kValid = R"({
  "degradation": { "alpha0": 2.0, "beta": 2.0, "L": 10.0, "gamma_rate": 10.0 },
  "policy": { "M": 7.0, "K": 2, "T": 5.0, "S": 2, "Q": 0.05, "A_star": 0.9 },
  "costs": {
    "c_ins": 10.0, "c_p0": 200.0, "c_c": 1000.0, "c_d1": 50.0, "c_d2": 500.0,
    "c_h": 1.0, "c_o": 20.0, "c_oe": 150.0, "c_pur": 100.0, "eta": 1.0
  },
  "suppliers": {
    "LT_s1": 0.5, "P_s1": 0.9, "C_s1": 5.0,
    "LT_s2": 1.0, "P_s2": 0.8, "C_s2": 8.0,
    "LT_se": 5.0, "P_se": 1.0, "C_se": 50.0
  },
  "simulation": { "replications": 100, "seed": 7 }
})";

std::string replace(std::string text, const std::string& from, const std::string& to) {
    const auto pos = text.find(from);
    REQUIRE(pos != std::string::npos);
    return text.replace(pos, from.size(), to);
}

int count_lines(const std::string& text) {
    return static_cast<int>(std::count(text.begin(), text.end(), '\n'));
}

}  // namespace

TEST_CASE("valid config parses") {
    const auto cfg = parse_config(kValid);
    CHECK(cfg.scenario.policy.M == 7.0);
    CHECK(cfg.scenario.policy.K == 2);
    CHECK(cfg.scenario.suppliers.size() == 3);
    CHECK(cfg.scenario.suppliers[2].kind == SupplierKind::Main);
    CHECK(cfg.scenario.requirements.ipms_prob == 0.5);
    CHECK(cfg.scenario.seed == 7);
    CHECK(cfg.scenario.degradation.path_step == doctest::Approx(0.02));
    CHECK_FALSE(cfg.grid.has_value());
    CHECK(cfg.search.common_random_numbers);
}

TEST_CASE("config errors name the problem") {
    CHECK_THROWS_WITH_AS(parse_config(replace(kValid, "\"M\": 7.0", "\"M\": 10.0")),
                         "policy.M must be below failure threshold L", ConfigError);
    CHECK_THROWS_WITH_AS(
        parse_config(replace(kValid, "\"c_d2\": 500.0", "\"c_d2\": 40.0")),
        "costs.c_d2 must exceed costs.c_d1 (malfunction cost rate is lower than downtime cost rate)", ConfigError);
    CHECK_THROWS_WITH_AS(parse_config(replace(kValid, "\"eta\": 1.0", "\"eta\": 1.0, \"bogus\": 1")),
                         "unknown key 'costs.bogus'", ConfigError);
    CHECK_THROWS_WITH_AS(parse_config(replace(kValid, "\"c_ins\": 10.0, ", "")), "missing key 'costs.c_ins'",
                         ConfigError);
    CHECK_THROWS_WITH_AS(parse_config(replace(kValid, "\"K\": 2", "\"K\": 2.5")), "key 'policy.K' must be an integer",
                         ConfigError);
    CHECK_THROWS_WITH_AS(parse_config(replace(kValid, "\"LT_s2\": 1.0", "\"LT_s2\": 0.4")),
                         "lead times must satisfy LT_s1 < LT_s2", ConfigError);
    CHECK_THROWS_AS(parse_config("{ not json"), ConfigError);
    CHECK_THROWS_AS(parse_config(replace(kValid, "\"seed\": 7", "\"seed\": -7")), ConfigError);
    CHECK_THROWS_AS(load_config("/nonexistent/cbm.json"), ConfigError);
}

TEST_CASE("grid section") {
    auto text = replace(kValid, "\"policy\": { \"M\": 7.0, \"K\": 2, \"T\": 5.0, \"S\": 2, \"Q\": 0.05, ",
                        "\"policy\": { ");
    text = replace(text, "\"simulation\"",
                   "\"grid\": { \"M\": [6.0, 7.0], \"K\": [1], \"T\": [5.0], \"S\": [2, 3], \"Q\": [0.05] },\n"
                   "  \"simulation\"");
    const auto cfg = parse_config(text);
    REQUIRE(cfg.grid.has_value());
    CHECK(cfg.grid->size() == 4);
    CHECK(cfg.scenario.policy.M == 6.0);
    CHECK(cfg.scenario.policy.S == 2);
    CHECK_THROWS_WITH_AS(parse_config(replace(text, "\"K\": [1]", "\"K\": []")), "key 'grid.K' must not be empty",
                         ConfigError);
}

TEST_CASE("csv outputs") {
    auto c = fixture::default_scenario(25);
    const auto stats = run_replications(c);
    std::ostringstream reps;
    write_replications_csv(reps, stats);
    CHECK(count_lines(reps.str()) == 26);
    CHECK(reps.str().rfind(kReplicationsHeader, 0) == 0);

    const SearchGrid g{{6.0, 7.0}, {2}, {5.0}, {2}, {0.05}};
    c.replications = 20;
    const auto result = grid_search(g, c);
    std::ostringstream grid;
    write_grid_csv(grid, result);
    CHECK(count_lines(grid.str()) == 3);
    CHECK(grid.str().rfind(kGridHeader, 0) == 0);

    const auto summary = optimization_summary(c, result, &stats);
    CHECK(summary.find("evaluated points: 2") != std::string::npos);
    CHECK(simulation_summary(c, stats).find("cost rate: ") != std::string::npos);
}

TEST_CASE("format_double round-trips") {
    std::mt19937_64 gen(3);
    std::uniform_real_distribution<double> exponent(-20.0, 20.0);
    for (int i = 0; i < 1000; ++i) {
        const double x = std::pow(10.0, exponent(gen)) * (i % 2 ? 1.0 : -1.0);
        const std::string text = format_double(x);
        double back = 0.0;
        std::from_chars(text.data(), text.data() + text.size(), back);
        CHECK(back == x);
    }
    CHECK(format_double(0.5) == "0.5");
    CHECK(format_double(2.0) == "2");
}

TEST_CASE("write_file") {
    const auto dir = std::filesystem::temp_directory_path() / "cbm_write_file_test";
    std::filesystem::remove_all(dir);
    write_file(dir / "nested", "a.txt", "hello\n");
    std::ifstream in(dir / "nested" / "a.txt");
    std::string line;
    std::getline(in, line);
    CHECK(line == "hello");
    std::filesystem::remove_all(dir);
    CHECK_THROWS_AS(write_file("/proc/cbm_cannot_write", "a.txt", "x"), IoError);
}
