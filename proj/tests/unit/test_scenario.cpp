#include <doctest.h>

#include "criskeq/json_io.hpp"
#include "criskeq/scenario.hpp"

using namespace criskeq;

namespace {

ScenarioConfig small_config() {
    ScenarioConfig cfg;
    cfg.scenario = 1;
    cfg.sample_sizes = {{80, 80}};
    cfg.censorings = {CensoringModel::administrative(kScenarioHorizon)};
    cfg.deltas = {0.001, 0.002};
    cfg.n_datasets = 6;
    cfg.bootstrap = 25;
    cfg.seed = 20250101;
    return cfg;
}

}  // namespace

TEST_CASE("built-in scenario models") {
    CHECK(scenario_models(1).first.transitions[2].rate() == doctest::Approx(0.0004));
    CHECK(scenario_models(3).second.transitions[2].scale() == doctest::Approx(1242.1));
    CHECK(scenario_families(3)[2] == Family::weibull);
    CHECK_THROWS_AS(scenario_models(5), std::invalid_argument);
    for (int scenario : {1, 2, 3, 4}) {
        auto [m1, m2] = scenario_models(scenario);
        CHECK(m1.k() == 3);
        CHECK(m1.horizon == doctest::Approx(90.0));
        CHECK_NOTHROW(m1.validate());
        CHECK_NOTHROW(m2.validate());
    }
}

TEST_CASE("configuration validation") {
    ScenarioConfig cfg = small_config();
    cfg.deltas = {};
    CHECK_THROWS_AS(run_scenario(cfg), std::invalid_argument);
    cfg = small_config();
    cfg.n_datasets = 0;
    CHECK_THROWS_AS(run_scenario(cfg), std::invalid_argument);
    cfg = small_config();
    cfg.sample_sizes = {{0, 10}};
    CHECK_THROWS_AS(run_scenario(cfg), std::invalid_argument);
}

TEST_CASE("deterministic and seed-matched across thresholds") {
    ScenarioConfig cfg = small_config();
    ScenarioTable a = run_scenario(cfg);
    ScenarioTable b = run_scenario(cfg);
    REQUIRE(a.cells.size() == 2);
    REQUIRE(b.cells.size() == 2);
    for (std::size_t i = 0; i < a.cells.size(); ++i) {
        CHECK(a.cells[i].rejection_rate == b.cells[i].rejection_rate);
        CHECK(a.cells[i].mean_censored == b.cells[i].mean_censored);
    }

    // same datasets under both thresholds: rejections can only grow with delta
    CHECK(a.cells[1].delta > a.cells[0].delta);
    CHECK(a.cells[1].rejection_rate >= a.cells[0].rejection_rate);
    // identical datasets means identical censored fractions across delta cells
    CHECK(a.cells[0].mean_censored == doctest::Approx(a.cells[1].mean_censored));
}

TEST_CASE("cell bookkeeping") {
    ScenarioTable table = run_scenario(small_config());
    for (const auto& cell : table.cells) {
        CHECK(cell.n1 == 80);
        CHECK(cell.administrative);
        CHECK(cell.datasets + cell.failures == 6);
        CHECK(cell.rejection_rate >= 0.0);
        CHECK(cell.rejection_rate <= 1.0);
        CHECK(cell.std_error >= 0.0);
        CHECK_FALSE(cell.flagged);
        CHECK(cell.rejection_rate_iup == -1.0);
    }
}

TEST_CASE("table serialization") {
    ScenarioConfig cfg = small_config();
    cfg.run_iup = true;
    ScenarioTable table = run_scenario(cfg);

    std::string tidy = scenario_csv_tidy(table);
    CHECK(tidy.find("scenario,n1,n2,censoring,delta") != std::string::npos);
    CHECK(tidy.find("rejection_rate_iup") != std::string::npos);

    std::string wide = scenario_csv_wide(table);
    CHECK(wide.find("delta=0.001") != std::string::npos);
    CHECK(wide.find("admin") != std::string::npos);

    nlohmann::json j = to_json(table);
    CHECK(j["cells"].size() == 2);
    CHECK(j["cells"][0].contains("std_error"));
    CHECK(j["cells"][0].contains("rejection_rate_iup"));
}
