#include <doctest.h>

#include <cmath>

#include "criskeq/equivalence.hpp"
#include "criskeq/json_io.hpp"
#include "criskeq/rng.hpp"
#include "criskeq/scenario.hpp"
#include "criskeq/simulate.hpp"

using namespace criskeq;

namespace {

TestConfig base_config(double delta, int b, std::uint64_t seed) {
    TestConfig cfg;
    cfg.delta = delta;
    cfg.alpha = 0.05;
    cfg.bootstrap = b;
    cfg.families = scenario_families(1);
    cfg.censoring = CensoringModel::administrative(90.0);
    cfg.seed = seed;
    return cfg;
}

std::pair<Sample, Sample> scenario_dataset(int scenario, int n1, int n2, std::uint64_t seed,
                                           const CensoringModel& censoring) {
    auto [m1, m2] = scenario_models(scenario);
    Sample s1 = simulate_sample({m1, n1, censoring, seed, 0, 1});
    Sample s2 = simulate_sample({m2, n2, censoring, seed, 0, 2});
    return {s1, s2};
}

}  // namespace

TEST_CASE("empirical p-value") {
    std::vector<double> reps{1.0, 2.0, 3.0, 4.0};
    CHECK(p_value(0.5, reps) == 0.0);
    CHECK(p_value(9.0, reps) == 1.0);
    CHECK(p_value(2.5, reps) == doctest::Approx(0.5));
    CHECK(p_value(2.0, reps) == doctest::Approx(0.5));  // ties count as <=
    CHECK_THROWS_AS(p_value(1.0, {}), std::invalid_argument);
}

TEST_CASE("configuration validation") {
    auto [s1, s2] = scenario_dataset(1, 40, 40, 5, CensoringModel::administrative(90.0));
    TestConfig cfg = base_config(0.001, 20, 1);

    TestConfig bad = cfg;
    bad.bootstrap = 0;
    CHECK_THROWS_AS(run_test(s1, s2, bad), std::invalid_argument);
    bad = cfg;
    bad.delta = 0.0;
    CHECK_THROWS_AS(run_test(s1, s2, bad), std::invalid_argument);
    bad = cfg;
    bad.alpha = 0.5;
    CHECK_THROWS_AS(run_test(s1, s2, bad), std::invalid_argument);
    bad = cfg;
    bad.families = {Family::exponential};
    CHECK_THROWS_AS(run_test(s1, s2, bad), std::invalid_argument);
}

TEST_CASE("degenerate bootstrap count") {
    auto [s1, s2] = scenario_dataset(1, 60, 60, 6, CensoringModel::administrative(90.0));
    TestConfig cfg = base_config(0.002, 1, 2);
    TestResult r = run_test(s1, s2, cfg);
    CHECK(r.b == 1);
    CHECK(r.b_effective == 1);
    REQUIRE(r.replicates.size() == 1);
    CHECK(r.q_alpha == doctest::Approx(r.replicates[0]));
    CHECK(r.reject == (r.p_value < cfg.alpha));
}

TEST_CASE("decision consistency across random configurations") {
    Rng rng(9001);
    for (int rep = 0; rep < 6; ++rep) {
        auto [s1, s2] = scenario_dataset(1, 80, 100, rng.next_u64(),
                                         CensoringModel::administrative(90.0));
        TestConfig cfg = base_config(rng.uniform(0.0004, 0.004), 40, rng.next_u64());
        TestResult r = run_test(s1, s2, cfg);
        CHECK(r.reject == (r.p_value < cfg.alpha));
        CHECK(r.p_value >= 0.0);
        CHECK(r.p_value <= 1.0);
        CHECK(r.d_hat >= 0.0);
        CHECK(r.b_effective <= r.b);
        for (std::size_t i = 1; i < r.replicates.size(); ++i)
            CHECK(r.replicates[i - 1] <= r.replicates[i]);
    }
}

TEST_CASE("p-values fall as the threshold grows on seed-matched data") {
    auto [s1, s2] = scenario_dataset(1, 150, 150, 4242, CensoringModel::administrative(90.0));
    double previous = 1.1;
    for (double delta : {0.0005, 0.001, 0.0015, 0.002, 0.003}) {
        TestConfig cfg = base_config(delta, 100, 777);
        TestResult r = run_test(s1, s2, cfg);
        CAPTURE(delta);
        CHECK(r.p_value <= previous + 1e-12);
        previous = r.p_value;
    }
}

TEST_CASE("single-transition collapse: the individual method matches the global test") {
    CompetingRisksModel m1, m2;
    m1.horizon = m2.horizon = 90.0;
    m1.transitions = {Intensity::make_exponential(0.004)};
    m2.transitions = {Intensity::make_exponential(0.005)};
    auto admin = CensoringModel::administrative(90.0);
    Sample s1 = simulate_sample({m1, 100, admin, 88, 0, 1});
    Sample s2 = simulate_sample({m2, 100, admin, 88, 0, 2});

    TestConfig cfg;
    cfg.delta = 0.002;
    cfg.alpha = 0.05;
    cfg.bootstrap = 60;
    cfg.families = {Family::exponential};
    cfg.censoring = admin;
    cfg.seed = 31415;

    TestResult global = run_test(s1, s2, cfg);
    TestResult individual = iup_test(s1, s2, cfg);

    CHECK(individual.p_value == doctest::Approx(global.p_value));
    CHECK(individual.reject == global.reject);
    CHECK(individual.d_hat == doctest::Approx(global.d_hat));
    REQUIRE(individual.replicates.size() == global.replicates.size());
    for (std::size_t i = 0; i < global.replicates.size(); ++i)
        CHECK(individual.replicates[i] == doctest::Approx(global.replicates[i]));
}

TEST_CASE("individual method structure") {
    auto [s1, s2] = scenario_dataset(1, 100, 100, 99, CensoringModel::administrative(90.0));
    TestConfig cfg = base_config(0.002, 40, 4);
    TestResult r = iup_test(s1, s2, cfg);

    REQUIRE(r.per_transition.size() == 3);
    double max_p = 0.0;
    bool all_reject = true;
    for (const auto& detail : r.per_transition) {
        REQUIRE(detail.p_value >= 0.0);
        max_p = std::max(max_p, detail.p_value);
        all_reject = all_reject && detail.reject;
        CHECK(detail.reject == (detail.p_value < cfg.alpha));
    }
    CHECK(r.p_value == doctest::Approx(max_p));
    CHECK(r.reject == all_reject);

    // per-transition thresholds are accepted
    TestConfig with_thresholds = cfg;
    with_thresholds.delta_per_transition = {0.002, 0.003, 0.002};
    CHECK_NOTHROW(iup_test(s1, s2, with_thresholds));
}

TEST_CASE("global method dominates the individual method on seed-matched data") {
    Rng rng(2718);
    int dominated = 0;
    const int reps = 40;
    for (int rep = 0; rep < reps; ++rep) {
        auto [s1, s2] = scenario_dataset(1, 120, 120, rng.next_u64(),
                                         CensoringModel::administrative(90.0));
        TestConfig cfg = base_config(0.001, 60, rng.next_u64());
        TestResult global = run_test(s1, s2, cfg);
        TestResult individual = iup_test(s1, s2, cfg);
        if (global.p_value <= individual.p_value + 1e-12) ++dominated;
    }
    CHECK(dominated >= 38);  // at least 95% of repetitions
}

TEST_CASE("power grows with the sample size on a fixed alternative") {
    // identical models (distance 0), threshold inside the alternative
    Rng rng(1618);
    const int reps = 50;
    double previous = -1.0;
    for (int n : {100, 200, 400}) {
        int rejections = 0;
        for (int rep = 0; rep < reps; ++rep) {
            auto [s1, s2] = scenario_dataset(2, n, n, 5000 + static_cast<std::uint64_t>(rep),
                                             CensoringModel::administrative(90.0));
            TestConfig cfg = base_config(0.001, 80, 9000 + static_cast<std::uint64_t>(rep));
            TestResult r = run_test(s1, s2, cfg);
            if (r.reject) ++rejections;
        }
        double rate = static_cast<double>(rejections) / reps;
        CAPTURE(n);
        CHECK(rate >= previous);
        previous = rate;
    }
    CHECK(previous > 0.6);  // the largest size must have real power
}

TEST_CASE("parametric censoring regime fits the censoring law per group") {
    auto censoring = CensoringModel::parametric(Intensity::make_exponential(0.003), 90.0);
    auto [s1, s2] = scenario_dataset(1, 150, 150, 321, censoring);
    TestConfig cfg = base_config(0.0015, 40, 654);
    cfg.censoring = censoring;
    TestResult r = run_test(s1, s2, cfg);
    REQUIRE(r.fit1.censoring.has_value());
    REQUIRE(r.fit2.censoring.has_value());
    CHECK(r.fit1.censoring->rate() > 0.0);
    CHECK(r.reject == (r.p_value < cfg.alpha));
}

TEST_CASE("test result serialization carries the pinned fields") {
    auto [s1, s2] = scenario_dataset(1, 60, 60, 12, CensoringModel::administrative(90.0));
    TestConfig cfg = base_config(0.002, 20, 3);
    TestResult r = run_test(s1, s2, cfg);
    nlohmann::json j = to_json(r);

    for (const char* key : {"d_hat", "p_value", "q_alpha", "reject", "B", "B_effective",
                            "per_transition"})
        CHECK(j.contains(key));
    REQUIRE(j["per_transition"].size() == 3);
    for (const auto& entry : j["per_transition"]) {
        CHECK(entry.contains("j"));
        CHECK(entry.contains("d_j"));
        CHECK(entry.contains("argmax_t"));
    }
    CHECK(j["B"] == 20);
    CHECK(j.contains("replicates"));
    CHECK(to_json(r, false).contains("replicates") == false);
}
