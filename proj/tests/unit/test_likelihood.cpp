#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "criskeq/likelihood.hpp"
#include "criskeq/rng.hpp"
#include "criskeq/simulate.hpp"

using namespace criskeq;

namespace {

Sample exponential_sample(Rng& rng, int n, const std::vector<double>& rates, double tau) {
    CompetingRisksModel m;
    m.horizon = tau;
    for (double r : rates) m.transitions.push_back(Intensity::make_exponential(r));
    SimulationPlan plan{m, n, CensoringModel::administrative(tau), rng.next_u64(), 0, 1};
    return simulate_sample(plan);
}

}  // namespace

TEST_CASE("single-observation log-likelihood by hand") {
    Sample s;
    s.group = 1;
    s.k = 1;
    s.horizon = 90.0;
    s.observations = {{10.0, 1}};
    CompetingRisksModel m;
    m.horizon = 90.0;
    m.transitions = {Intensity::make_exponential(0.1)};
    CHECK(log_likelihood(s, m) == doctest::Approx(-1.0 + std::log(0.1)).epsilon(1e-12));
    CHECK(log_likelihood(s, m) == doctest::Approx(-3.302585092994046).epsilon(1e-12));
}

TEST_CASE("all-censored sample has no event terms") {
    Sample s;
    s.group = 1;
    s.k = 1;
    s.horizon = 90.0;
    for (int i = 0; i < 25; ++i) s.observations.push_back({90.0, 0});
    CompetingRisksModel m;
    m.horizon = 90.0;
    for (double lambda : {0.01, 0.001, 1e-6}) {
        m.transitions = {Intensity::make_exponential(lambda)};
        CHECK(log_likelihood(s, m) == doctest::Approx(-lambda * 25 * 90.0).epsilon(1e-12));
    }
}

TEST_CASE("exponential log-likelihood decomposes over sufficient statistics") {
    Rng rng(101);
    for (int rep = 0; rep < 10; ++rep) {
        Sample s = exponential_sample(rng, 120, {0.002, 0.004, 0.001}, 90.0);
        auto counts = event_counts(s);
        std::vector<double> rates = {rng.uniform(5e-4, 5e-3), rng.uniform(5e-4, 5e-3),
                                     rng.uniform(5e-4, 5e-3)};
        CompetingRisksModel m;
        m.horizon = 90.0;
        for (double r : rates) m.transitions.push_back(Intensity::make_exponential(r));

        double expected = 0.0;
        double rate_sum = 0.0;
        for (std::size_t j = 0; j < rates.size(); ++j) {
            expected += counts.events[j] * std::log(rates[j]);
            rate_sum += rates[j];
        }
        expected -= rate_sum * counts.exposure;
        CHECK(log_likelihood(s, m) == doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("log-likelihood is invariant under permutation of observations") {
    Rng rng(77);
    Sample s = exponential_sample(rng, 60, {0.003, 0.001}, 90.0);
    CompetingRisksModel m;
    m.horizon = 90.0;
    m.transitions = {Intensity::make_gompertz(0.002, -0.01), Intensity::make_weibull(800.0, 1.2)};
    double before = log_likelihood(s, m);
    std::mt19937 shuffle_rng(5);
    std::shuffle(s.observations.begin(), s.observations.end(), shuffle_rng);
    CHECK(log_likelihood(s, m) == doctest::Approx(before).epsilon(1e-13));
}

TEST_CASE("censored log-likelihood adds the censoring density terms") {
    Sample s;
    s.group = 1;
    s.k = 1;
    s.horizon = 90.0;
    s.observations = {{12.0, 1}, {30.0, 0}};
    CompetingRisksModel m;
    m.horizon = 90.0;
    m.transitions = {Intensity::make_exponential(0.01)};
    auto censoring = CensoringModel::parametric(Intensity::make_exponential(0.005), 90.0);

    double base = log_likelihood(s, m);
    double expected_extra = std::log(0.005) - 0.15;  // log g(30) for exponential censoring
    CHECK(log_likelihood_censored(s, m, censoring) == doctest::Approx(base + expected_extra).epsilon(1e-12));

    // no censored observations: identical to the plain value
    Sample events_only = s;
    events_only.observations = {{12.0, 1}, {30.0, 1}};
    CHECK(log_likelihood_censored(events_only, m, censoring) ==
          doctest::Approx(log_likelihood(events_only, m)).epsilon(1e-13));
}

TEST_CASE("censored log-likelihood additivity on random samples") {
    Rng rng(303);
    auto law = Intensity::make_exponential(0.004);
    auto censoring = CensoringModel::parametric(law, 90.0);
    for (int rep = 0; rep < 5; ++rep) {
        CompetingRisksModel truth;
        truth.horizon = 90.0;
        truth.transitions = {Intensity::make_exponential(0.002), Intensity::make_exponential(0.001)};
        SimulationPlan plan{truth, 80, censoring, rng.next_u64(), 0, 1};
        Sample s = simulate_sample(plan);

        double combined = log_likelihood_censored(s, truth, censoring);
        double extra = 0.0;
        for (const auto& o : s.observations)
            if (o.state == 0) extra += std::log(0.004) - cumulative_intensity(law, o.time);
        CHECK(combined == doctest::Approx(log_likelihood(s, truth) + extra).epsilon(1e-12));
    }
}

TEST_CASE("optimizer matches the occurrence/exposure closed form") {
    Rng rng(42);
    auto admin = CensoringModel::administrative(90.0);
    for (int rep = 0; rep < 50; ++rep) {
        int n = 40 + static_cast<int>(rng.uniform(0.0, 200.0));
        Sample s = exponential_sample(rng, n, {rng.uniform(1e-3, 8e-3), rng.uniform(1e-3, 8e-3)}, 90.0);
        auto counts = event_counts(s);
        FitResult fit = fit_mle(s, {Family::exponential, Family::exponential}, admin);
        REQUIRE(fit.converged);
        for (int j = 0; j < 2; ++j) {
            if (counts.events[j] == 0) continue;
            double oracle = counts.events[j] / counts.exposure;
            CHECK(fit.model.transitions[j].rate() == doctest::Approx(oracle).epsilon(1e-6));
        }
    }
}

TEST_CASE("fitted optimum dominates the generating parameters") {
    Rng rng(1234);
    auto admin = CensoringModel::administrative(90.0);

    CompetingRisksModel truth;
    truth.horizon = 90.0;
    truth.transitions = {Intensity::make_gompertz(0.003, -0.02), Intensity::make_weibull(900.0, 1.3)};
    for (int rep = 0; rep < 5; ++rep) {
        SimulationPlan plan{truth, 400, admin, rng.next_u64(), 0, 1};
        Sample s = simulate_sample(plan);
        FitResult fit = fit_mle(s, {Family::gompertz, Family::weibull}, admin);
        REQUIRE(fit.converged);
        CHECK(fit.log_lik >= log_likelihood(s, truth) - 1e-9);
    }
}

TEST_CASE("finite-difference gradient vanishes at the optimum") {
    Rng rng(555);
    auto admin = CensoringModel::administrative(90.0);
    CompetingRisksModel truth;
    truth.horizon = 90.0;
    truth.transitions = {Intensity::make_gompertz(0.004, -0.025), Intensity::make_exponential(0.002)};
    SimulationPlan plan{truth, 600, admin, 99, 0, 1};
    Sample s = simulate_sample(plan);

    FitResult fit = fit_mle(s, {Family::gompertz, Family::exponential}, admin);
    REQUIRE(fit.converged);

    const double scale_bound = 1e-4 * (1.0 + std::fabs(fit.log_lik));
    for (std::size_t j = 0; j < fit.model.transitions.size(); ++j) {
        for (std::size_t pidx = 0; pidx < fit.model.transitions[j].params.size(); ++pidx) {
            double h = 1e-7 * (1.0 + std::fabs(fit.model.transitions[j].params[pidx]));
            CompetingRisksModel up = fit.model, down = fit.model;
            up.transitions[j].params[pidx] += h;
            down.transitions[j].params[pidx] -= h;
            double grad = (log_likelihood(s, up) - log_likelihood(s, down)) / (2.0 * h);
            CHECK(std::fabs(grad) < scale_bound);
        }
    }
}

TEST_CASE("large-sample recovery of gompertz parameters") {
    CompetingRisksModel truth;
    truth.horizon = 90.0;
    truth.transitions = {Intensity::make_gompertz(0.002, -0.016)};
    auto admin = CensoringModel::administrative(90.0);
    SimulationPlan plan{truth, 5000, admin, 2024, 0, 1};
    Sample s = simulate_sample(plan);

    FitResult fit = fit_mle(s, {Family::gompertz}, admin);
    REQUIRE(fit.converged);
    CHECK(fit.model.transitions[0].scale() == doctest::Approx(0.002).epsilon(0.25));
    CHECK(fit.model.transitions[0].shape() == doctest::Approx(-0.016).epsilon(0.25));
}

TEST_CASE("zero-event transitions are pinned to the boundary") {
    Sample s;
    s.group = 1;
    s.k = 2;
    s.horizon = 90.0;
    s.observations = {{10.0, 1}, {20.0, 1}, {90.0, 0}};
    FitResult fit = fit_mle(s, {Family::exponential, Family::exponential},
                            CensoringModel::administrative(90.0));
    REQUIRE(fit.degenerate_states.size() == 1);
    CHECK(fit.degenerate_states[0] == 2);
    CHECK(fit.model.transitions[1].rate() == doctest::Approx(kRateFloor));
    CHECK(std::isfinite(fit.log_lik));
}

TEST_CASE("censoring fit uses the reversed occurrence/exposure form") {
    Rng rng(31);
    auto censoring = CensoringModel::parametric(Intensity::make_exponential(0.003), 90.0);
    CompetingRisksModel truth;
    truth.horizon = 90.0;
    truth.transitions = {Intensity::make_exponential(0.001), Intensity::make_exponential(0.0011),
                         Intensity::make_exponential(0.0004)};

    SUBCASE("closed form") {
        SimulationPlan plan{truth, 300, censoring, rng.next_u64(), 0, 1};
        Sample s = simulate_sample(plan);
        auto counts = event_counts(s);
        REQUIRE(counts.censored > 0);
        CensoringFit cf = fit_censoring(s, Family::exponential);
        CHECK_FALSE(cf.degenerate);
        CHECK(cf.law.rate() == doctest::Approx(counts.censored / counts.exposure).epsilon(1e-6));
    }

    SUBCASE("all observations censored") {
        Sample s;
        s.group = 1;
        s.k = 1;
        s.horizon = 90.0;
        s.observations = {{10.0, 0}, {20.0, 0}, {30.0, 0}};
        CensoringFit cf = fit_censoring(s, Family::exponential);
        CHECK(cf.law.rate() == doctest::Approx(3.0 / 60.0).epsilon(1e-6));
    }

    SUBCASE("no censored observations") {
        Sample s;
        s.group = 1;
        s.k = 1;
        s.horizon = 90.0;
        s.observations = {{10.0, 1}, {20.0, 1}};
        CensoringFit cf = fit_censoring(s, Family::exponential);
        CHECK(cf.degenerate);
        CHECK(cf.law.rate() == doctest::Approx(kRateFloor));
    }

    SUBCASE("rate recovery at n=1000") {
        SimulationPlan plan{truth, 1000, censoring, 606, 0, 1};
        Sample s = simulate_sample(plan);
        CensoringFit cf = fit_censoring(s, Family::exponential);
        CHECK(cf.law.rate() == doctest::Approx(0.003).epsilon(0.20));
    }
}

TEST_CASE("parametric regime extends the reported likelihood") {
    Rng rng(808);
    auto censoring = CensoringModel::parametric(Intensity::make_exponential(0.004), 90.0);
    CompetingRisksModel truth;
    truth.horizon = 90.0;
    truth.transitions = {Intensity::make_exponential(0.002)};
    SimulationPlan plan{truth, 200, censoring, rng.next_u64(), 0, 1};
    Sample s = simulate_sample(plan);

    FitResult fit = fit_mle(s, {Family::exponential}, censoring);
    REQUIRE(fit.censoring.has_value());
    double expected = log_likelihood_censored(
        s, fit.model, CensoringModel::parametric(*fit.censoring, 90.0));
    CHECK(fit.log_lik == doctest::Approx(expected).epsilon(1e-10));
}
