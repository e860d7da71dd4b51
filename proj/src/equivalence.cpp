#include "criskeq/equivalence.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "criskeq/parallel.hpp"
#include "criskeq/simulate.hpp"

namespace criskeq {

void TestConfig::validate(int k) const {
    if (!(delta > 0.0)) throw std::invalid_argument("delta must be > 0");
    if (!(alpha > 0.0 && alpha < 0.5)) throw std::invalid_argument("alpha must lie in (0, 0.5)");
    if (bootstrap < 1) throw std::invalid_argument("bootstrap count B must be >= 1");
    if (static_cast<int>(families.size()) != k)
        throw std::invalid_argument("need one family per competing state (k=" + std::to_string(k) + ")");
    if (!delta_per_transition.empty() && static_cast<int>(delta_per_transition.size()) != k)
        throw std::invalid_argument("delta_per_transition must have one entry per state");
    for (double dj : delta_per_transition)
        if (!(dj > 0.0)) throw std::invalid_argument("per-transition thresholds must be > 0");
    censoring.validate();
}

double p_value(double d_hat, const std::vector<double>& replicates) {
    if (replicates.empty()) throw std::invalid_argument("p_value: no replicates");
    std::size_t count = 0;
    for (double d : replicates)
        if (d <= d_hat) ++count;
    return static_cast<double>(count) / static_cast<double>(replicates.size());
}

namespace {

double lower_quantile(const std::vector<double>& sorted, double alpha) {
    const std::size_t b = sorted.size();
    std::size_t rank = static_cast<std::size_t>(std::ceil(alpha * static_cast<double>(b)));
    if (rank < 1) rank = 1;
    if (rank > b) rank = b;
    return sorted[rank - 1];
}

struct BootstrapSetup {
    CompetingRisksModel model1, model2;
    CensoringModel censoring1, censoring2;
    int n1 = 0, n2 = 0;
};

// Per-group bootstrap censoring: administrative regimes keep the fixed end,
// parametric regimes use the censoring law fitted to that group.
CensoringModel bootstrap_censoring(const CensoringModel& configured, const FitResult& fit) {
    if (configured.is_administrative()) return configured;
    if (!fit.censoring)
        throw std::logic_error("parametric censoring regime but no fitted censoring law");
    return CensoringModel::parametric(*fit.censoring, configured.tau);
}

struct ReplicateOutcome {
    double statistic = 0.0;
    bool valid = false;
};

// One bootstrap replicate: simulate both groups from the selected models,
// refit the intensities, and evaluate `statistic` on the refitted pair.
template <typename StatisticFn>
ReplicateOutcome run_replicate(const BootstrapSetup& setup, const TestConfig& config,
                               std::uint64_t replicate_id, const StatisticFn& statistic) {
    SimulationPlan plan1{setup.model1, setup.n1, setup.censoring1, config.seed, replicate_id, 1};
    SimulationPlan plan2{setup.model2, setup.n2, setup.censoring2, config.seed, replicate_id, 2};
    Sample sim1 = simulate_sample(plan1);
    Sample sim2 = simulate_sample(plan2);

    FitResult refit1 = fit_intensities(sim1, config.families, setup.model1.horizon, config.fit);
    FitResult refit2 = fit_intensities(sim2, config.families, setup.model2.horizon, config.fit);

    ReplicateOutcome out;
    out.valid = refit1.converged && refit2.converged;
    if (out.valid) out.statistic = statistic(refit1.model, refit2.model);
    return out;
}

// Runs B replicates (ids base_id..base_id+B-1), drops non-convergent ones and
// enforces the minimum effective fraction.
template <typename StatisticFn>
std::vector<double> bootstrap_statistics(const BootstrapSetup& setup, const TestConfig& config,
                                         std::uint64_t base_id, const StatisticFn& statistic) {
    const int b = config.bootstrap;
    std::vector<ReplicateOutcome> outcomes(static_cast<std::size_t>(b));
    parallel_for(b, config.jobs, [&](int r) {
        outcomes[static_cast<std::size_t>(r)] =
            run_replicate(setup, config, base_id + static_cast<std::uint64_t>(r), statistic);
    });

    std::vector<double> valid;
    valid.reserve(static_cast<std::size_t>(b));
    for (const auto& o : outcomes)
        if (o.valid) valid.push_back(o.statistic);

    if (static_cast<double>(valid.size()) < config.min_effective_fraction * static_cast<double>(b))
        throw test_failure("only " + std::to_string(valid.size()) + " of " + std::to_string(b) +
                           " bootstrap replicates converged");
    std::sort(valid.begin(), valid.end());
    return valid;
}

void fill_transition_details(TestResult& result, const DistanceResult& distances) {
    result.per_transition.clear();
    for (std::size_t j = 0; j < distances.per_transition.size(); ++j) {
        TransitionTestDetail detail;
        detail.j = static_cast<int>(j) + 1;
        detail.d_j = distances.per_transition[j].d;
        detail.argmax_t = distances.per_transition[j].argmax_t;
        result.per_transition.push_back(detail);
    }
}

}  // namespace

TestResult run_test(const Sample& s1, const Sample& s2, const TestConfig& config) {
    s1.validate();
    s2.validate();
    if (s1.k != s2.k) throw std::invalid_argument("samples disagree on the number of states");
    config.validate(s1.k);

    TestResult result;
    result.method = "global";
    result.b = config.bootstrap;

    result.fit1 = fit_mle(s1, config.families, config.censoring, config.fit);
    result.fit2 = fit_mle(s2, config.families, config.censoring, config.fit);
    if (!result.fit1.converged || !result.fit2.converged)
        throw test_failure("maximum-likelihood fit did not converge");

    DistanceResult distances = global_distance(result.fit1.model, result.fit2.model);
    result.d_hat = distances.d_hat;
    fill_transition_details(result, distances);

    BootstrapSetup setup;
    setup.n1 = s1.n();
    setup.n2 = s2.n();
    setup.censoring1 = bootstrap_censoring(config.censoring, result.fit1);
    setup.censoring2 = bootstrap_censoring(config.censoring, result.fit2);

    if (result.d_hat >= config.delta) {
        setup.model1 = result.fit1.model;
        setup.model2 = result.fit2.model;
    } else {
        ConstrainedFitResult cfit = fit_constrained(s1, s2, config.families, config.delta,
                                                    config.censoring, config.constrained);
        if (!cfit.converged)
            throw test_failure("constrained fit missed the margin (residual " +
                               std::to_string(cfit.constraint_residual) + ")");
        result.constrained_used = true;
        result.constrained_residual = cfit.constraint_residual;
        auto pair = select_bootstrap_params(result.d_hat, config.delta,
                                            {result.fit1.model, result.fit2.model},
                                            {cfit.model1, cfit.model2});
        setup.model1 = pair.first;
        setup.model2 = pair.second;
    }

    result.replicates = bootstrap_statistics(setup, config, 0, [](const CompetingRisksModel& m1,
                                                                  const CompetingRisksModel& m2) {
        return global_distance(m1, m2).d_hat;
    });
    result.b_effective = static_cast<int>(result.replicates.size());
    result.q_alpha = lower_quantile(result.replicates, config.alpha);
    result.p_value = p_value(result.d_hat, result.replicates);
    result.reject = result.p_value < config.alpha;
    if (!config.keep_replicates) result.replicates.clear();
    return result;
}

TestResult iup_test(const Sample& s1, const Sample& s2, const TestConfig& config) {
    s1.validate();
    s2.validate();
    if (s1.k != s2.k) throw std::invalid_argument("samples disagree on the number of states");
    config.validate(s1.k);

    const int k = s1.k;
    TestResult result;
    result.method = "iup";
    result.b = config.bootstrap;

    result.fit1 = fit_mle(s1, config.families, config.censoring, config.fit);
    result.fit2 = fit_mle(s2, config.families, config.censoring, config.fit);
    if (!result.fit1.converged || !result.fit2.converged)
        throw test_failure("maximum-likelihood fit did not converge");

    DistanceResult distances = global_distance(result.fit1.model, result.fit2.model);
    result.d_hat = distances.d_hat;
    fill_transition_details(result, distances);

    bool all_reject = true;
    double max_p = 0.0;
    int binding = 0;
    std::vector<double> binding_replicates;

    for (int j = 1; j <= k; ++j) {
        const double d_j = distances.per_transition[static_cast<std::size_t>(j - 1)].d;
        const double delta_j = config.delta_per_transition.empty()
                                   ? config.delta
                                   : config.delta_per_transition[static_cast<std::size_t>(j - 1)];

        BootstrapSetup setup;
        setup.n1 = s1.n();
        setup.n2 = s2.n();
        setup.censoring1 = bootstrap_censoring(config.censoring, result.fit1);
        setup.censoring2 = bootstrap_censoring(config.censoring, result.fit2);

        if (d_j >= delta_j) {
            setup.model1 = result.fit1.model;
            setup.model2 = result.fit2.model;
        } else {
            ConstrainedFitResult cfit = fit_constrained_single(s1, s2, config.families, delta_j,
                                                               config.censoring, j, config.constrained);
            if (!cfit.converged)
                throw test_failure("constrained fit for transition " + std::to_string(j) +
                                   " missed the margin (residual " +
                                   std::to_string(cfit.constraint_residual) + ")");
            result.constrained_used = true;
            result.constrained_residual = std::max(result.constrained_residual, cfit.constraint_residual);
            setup.model1 = cfit.model1;
            setup.model2 = cfit.model2;
        }

        // replicate ids are offset per transition so streams never collide;
        // for k = 1 this test is replicate-for-replicate the global test
        const std::uint64_t base_id = static_cast<std::uint64_t>(j - 1) *
                                      static_cast<std::uint64_t>(config.bootstrap);
        const double tau = config.censoring.tau;
        std::vector<double> reps = bootstrap_statistics(
            setup, config, base_id,
            [j, tau](const CompetingRisksModel& m1, const CompetingRisksModel& m2) {
                return sup_norm_diff(m1.transitions[static_cast<std::size_t>(j - 1)],
                                     m2.transitions[static_cast<std::size_t>(j - 1)], tau)
                    .d;
            });

        const double p_j = p_value(d_j, reps);
        auto& detail = result.per_transition[static_cast<std::size_t>(j - 1)];
        detail.p_value = p_j;
        detail.reject = p_j < config.alpha;
        all_reject = all_reject && detail.reject;
        if (j == 1 || p_j > max_p) {
            max_p = p_j;
            binding = j;
            binding_replicates = std::move(reps);
        }
    }

    // the reported quantile and replicates come from the binding (largest-p)
    // transition's bootstrap
    (void)binding;
    result.replicates = std::move(binding_replicates);
    result.b_effective = static_cast<int>(result.replicates.size());
    result.q_alpha = lower_quantile(result.replicates, config.alpha);
    result.p_value = max_p;
    result.reject = all_reject;
    if (!config.keep_replicates) result.replicates.clear();
    return result;
}

}  // namespace criskeq
