#pragma once

#include <vector>

#include "criskeq/data.hpp"

namespace criskeq {

// Standard-normal quantile (Wichura's AS241 rational approximation).
double normal_quantile(double p);

// Right-continuous step estimate of a cumulative transition intensity, with
// jumps only at observed event times of the requested cause.
struct StepFunction {
    std::vector<double> times;      // sorted distinct jump times
    std::vector<double> values;     // cumulative estimate at and after each jump
    std::vector<double> variances;  // cumulative variance estimate

    double value_at(double t) const;
    double variance_at(double t) const;
};

// Nelson-Aalen estimate for cause j: sum over event times <= t of d_j(s)/Y(s),
// with the Poisson-type variance sum d_j(s)/Y(s)^2. Ties aggregate.
StepFunction nelson_aalen(const Sample& s, int j);

struct ConfidenceBand {
    std::vector<double> lower, upper;  // pointwise, aligned with StepFunction::times
};

// Pointwise log-transformed intervals value * exp(±z * sd / value); a zero
// estimate gets the degenerate interval [0, 0].
ConfidenceBand na_confidence(const StepFunction& step, double level = 0.95);

}  // namespace criskeq
