#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "criskeq/data.hpp"
#include "criskeq/hazards.hpp"

namespace criskeq {

// Precomputed per-transition statistics. The log-likelihood factorizes across
// transitions: block_j(theta_j) = -sum_i A_j(t_i) + sum_{i: state=j} log alpha_j(t_i),
// so each transition is fitted on its own block.
struct TransitionData {
    int n_total = 0;
    double exposure = 0.0;                 // sum of all observation times
    int events = 0;                        // d_j
    double sum_event_times = 0.0;
    double sum_log_event_times = 0.0;
    const std::vector<double>* all_times = nullptr;
    const std::vector<double>* all_log_times = nullptr;
};

// Shared time arrays plus one TransitionData per cause. The arrays sit behind
// shared_ptr so the TransitionData pointers stay valid when this struct moves.
struct LikelihoodData {
    std::shared_ptr<const std::vector<double>> times;
    std::shared_ptr<const std::vector<double>> log_times;
    std::vector<TransitionData> transitions;  // index j-1
    int censored = 0;
    TransitionData censoring;                 // role-reversed: "events" = censorings
};

LikelihoodData prepare_likelihood_data(const Sample& s);

// Block value for one transition; -inf when the parameters make the block
// non-finite (rejected by the optimizer).
double transition_block_loglik(const Intensity& spec, const TransitionData& td);

// log L(theta) = sum_i log S(t_i) + sum_i sum_j 1{state_i = j} log alpha_j(t_i).
double log_likelihood(const Sample& s, const CompetingRisksModel& model);

// Adds the censoring-density terms sum_{state_i = 0} log g(t_i, psi) on top of
// log_likelihood; requires a parametric censoring model.
double log_likelihood_censored(const Sample& s, const CompetingRisksModel& model,
                               const CensoringModel& censoring);

struct FitOptions {
    int restarts = 5;             // randomized restarts around the base start
    double diameter_tol = 1e-8;   // simplex diameter stop, transformed space
    int max_iterations = 20000;
    // restarts stop early once two starts agree on the optimum to this
    // relative tolerance; set negative to always run all restarts
    double restart_agreement_tol = 1e-9;
};

struct FitResult {
    CompetingRisksModel model;
    std::optional<Intensity> censoring;    // fitted censoring law, parametric regimes only
    double log_lik = 0.0;
    bool converged = false;
    int iterations = 0;
    int restarts_used = 0;
    std::vector<int> degenerate_states;    // 1-based states with zero events
};

// Parameter transform used by the simplex search: positivity-constrained
// parameters (rates, scales, Weibull shape) live on the log scale, the
// Gompertz shape stays untransformed.
std::vector<double> to_transformed(const Intensity& spec);
Intensity from_transformed(Family family, const std::vector<double>& x);

// Per-transition maximum likelihood via multi-start Nelder-Mead.
struct TransitionFit {
    Intensity spec;
    double block_loglik = 0.0;
    bool converged = false;
    int iterations = 0;
    int restarts_used = 0;
};
TransitionFit fit_transition(Family family, const TransitionData& td, const FitOptions& options = {});

// Unconstrained MLE of all transition parameters (and of the censoring law
// when the regime is parametric). Transitions with zero events are pinned to
// the boundary hazard kRateFloor and flagged in degenerate_states.
FitResult fit_mle(const Sample& s, const std::vector<Family>& families,
                  const CensoringModel& censoring, const FitOptions& options = {});

// Intensity parameters only: no censoring fit and no administrative-horizon
// check. This is the refit applied to bootstrap samples, whose statistic only
// needs the transition intensities.
FitResult fit_intensities(const Sample& s, const std::vector<Family>& families, double tau,
                          const FitOptions& options = {});

struct CensoringFit {
    Intensity law;
    double log_lik = 0.0;   // censoring-likelihood value (role-reversed)
    bool converged = false;
    bool degenerate = false;
};

// ML of the censoring parameters with event/censoring roles swapped: censored
// observations contribute log g(t, psi), events contribute log(1 - G(t, psi)).
CensoringFit fit_censoring(const Sample& s, Family censor_family, const FitOptions& options = {});
CensoringFit fit_censoring_from_data(const LikelihoodData& data, Family censor_family,
                                     const FitOptions& options = {});

// Boundary spec used for transitions with zero observed events.
Intensity degenerate_intensity(Family family);

}  // namespace criskeq
