#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "criskeq/constrained.hpp"
#include "criskeq/data.hpp"
#include "criskeq/distance.hpp"
#include "criskeq/likelihood.hpp"

namespace criskeq {

// A statistical procedure failed (non-convergence, too many dropped bootstrap
// replicates); distinct from usage errors so callers can map exit codes.
class test_failure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct TestConfig {
    double delta = 0.0;                        // similarity threshold, intensity units/day
    double alpha = 0.05;                       // nominal level, in (0, 0.5)
    int bootstrap = 250;                       // B
    std::vector<Family> families;              // one per transition
    CensoringModel censoring;                  // administrative tau or parametric family
    std::uint64_t seed = 0;
    int jobs = 1;
    std::vector<double> delta_per_transition;  // per-transition thresholds (individual method)
    double min_effective_fraction = 0.9;       // below this the whole test errors
    bool keep_replicates = true;
    FitOptions fit;
    ConstrainedOptions constrained;

    void validate(int k) const;
};

struct TransitionTestDetail {
    int j = 0;
    double d_j = 0.0;
    double argmax_t = 0.0;
    // filled by the individual (per-transition) method only
    double p_value = -1.0;
    bool reject = false;
};

struct TestResult {
    std::string method;        // "global" or "iup"
    double d_hat = 0.0;
    double q_alpha = 0.0;      // ceil(alpha * B_eff)-th smallest replicate (descriptive)
    double p_value = 1.0;      // primary decision: reject iff p_value < alpha
    bool reject = false;
    int b = 0;
    int b_effective = 0;
    std::vector<double> replicates;  // sorted valid replicate statistics
    std::vector<TransitionTestDetail> per_transition;
    FitResult fit1, fit2;
    bool constrained_used = false;
    double constrained_residual = 0.0;
};

// Empirical distribution function of the replicates at d_hat.
double p_value(double d_hat, const std::vector<double>& replicates);

// The global bootstrap test: fit, distance, margin re-estimation, B bootstrap
// refits, decision by p-value (with the lower empirical quantile reported).
TestResult run_test(const Sample& s1, const Sample& s2, const TestConfig& config);

// The individual-transition baseline: one bootstrap test per transition,
// global p-value = max of the per-transition p-values, reject only if every
// transition rejects.
TestResult iup_test(const Sample& s1, const Sample& s2, const TestConfig& config);

}  // namespace criskeq
