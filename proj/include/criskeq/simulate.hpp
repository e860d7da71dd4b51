#pragma once

#include <cstdint>
#include <utility>

#include "criskeq/data.hpp"
#include "criskeq/hazards.hpp"
#include "criskeq/rng.hpp"

namespace criskeq {

// Everything that determines one simulated sample. (seed, replicate_id, group)
// select the RNG stream, so replicates are reproducible and order-independent.
struct SimulationPlan {
    CompetingRisksModel model;
    int n = 0;
    CensoringModel censoring;
    std::uint64_t seed = 0;
    std::uint64_t replicate_id = 0;
    int group = 1;
};

// One uncensored event: T by inverting the all-cause cumulative hazard at
// -log(u), then the cause drawn with probability alpha_j(T) / sum_m alpha_m(T).
// Returns (beyond_horizon(), 0) when the all-cause hazard cannot reach the
// target within the cap (default 10 * horizon).
std::pair<double, int> simulate_event(const CompetingRisksModel& model, Rng& rng);
std::pair<double, int> simulate_event(const CompetingRisksModel& model, Rng& rng, double cap);

// Draws a censoring time from the law's distribution via closed-form inverse
// of the cumulative hazard; +inf when the law's total mass is below the draw
// (defective censoring laws never censor that subject).
double draw_censoring_time(const Intensity& law, Rng& rng);

// Administrative: min(T, tau), state 0 beyond tau. Parametric: min(T, C),
// state 0 when the drawn C comes first; no additional truncation at tau.
Observation apply_censoring(std::pair<double, int> event, const CensoringModel& censoring, Rng& rng);

// n independent observations, deterministic given (seed, replicate_id, group).
Sample simulate_sample(const SimulationPlan& plan);

}  // namespace criskeq
