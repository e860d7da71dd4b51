#pragma once

#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace criskeq {

enum class Family { exponential, gompertz, weibull };

std::string family_name(Family f);
Family family_from_string(const std::string& name);
int family_param_count(Family f);
std::vector<Family> families_from_string(const std::string& comma_separated);

// Pointwise hazards diverging at t = 0 (Weibull, shape < 1) are capped at this
// value so downstream arithmetic stays finite; event times are strictly
// positive so the cap is never hit by the likelihood.
inline constexpr double kHazardCap = 1e12;

// Below this magnitude the Gompertz shape uses the shape -> 0 series limit of
// the cumulative hazard (scale * t), avoiding 0/0 cancellation.
inline constexpr double kGompertzShapeEps = 1e-10;

// Boundary hazard level assigned to a transition with zero observed events.
inline constexpr double kRateFloor = 1e-10;

// One cause-specific transition intensity: family tag plus parameter vector.
// Layout: exponential {rate}, gompertz {scale, shape}, weibull {scale, shape}.
// Time unit is days throughout.
struct Intensity {
    Family family = Family::exponential;
    std::vector<double> params;

    static Intensity make_exponential(double rate) { return {Family::exponential, {rate}}; }
    static Intensity make_gompertz(double scale, double shape) { return {Family::gompertz, {scale, shape}}; }
    static Intensity make_weibull(double scale, double shape) { return {Family::weibull, {scale, shape}}; }

    double rate() const { return params.at(0); }
    double scale() const { return params.at(0); }
    double shape() const { return params.at(1); }

    // Hazard that diverges as t -> 0+ (Weibull with shape < 1).
    bool singular_at_zero() const {
        return family == Family::weibull && params.size() > 1 && params[1] < 1.0;
    }

    // Throws std::invalid_argument if the parameters leave the family's domain.
    void validate() const;
};

// alpha(t): pointwise cause-specific hazard.
double intensity(const Intensity& spec, double t);

// A(t) = int_0^t alpha(u) du, closed form per family.
double cumulative_intensity(const Intensity& spec, double t);

// Full competing-risks model for one group: k transition intensities plus the
// study horizon tau (days). Every subject starts in state 0 and moves to
// exactly one of the absorbing states 1..k (or is censored).
struct CompetingRisksModel {
    std::vector<Intensity> transitions;
    double horizon = 0.0;

    int k() const { return static_cast<int>(transitions.size()); }
    void validate() const;
};

// All-cause cumulative hazard A(t) = sum_j A_j(t).
double all_cause_cumulative(const CompetingRisksModel& model, double t);

// Marginal survival S(t) = exp(-A(t)); probability of no event before t.
double survival(const CompetingRisksModel& model, double t);

// Sentinel for "the all-cause hazard never reaches the target within the
// search cap": the subject outlives the observation window.
inline double beyond_horizon() { return std::numeric_limits<double>::infinity(); }

inline constexpr double kInvertTimeTol = 1e-9;  // days

// Smallest t with A(t) >= target, by bracketing + bisection to kInvertTimeTol.
// Returns beyond_horizon() when A(cap) < target. Default cap is 10 * horizon.
double invert_all_cause(const CompetingRisksModel& model, double target, double cap);
double invert_all_cause(const CompetingRisksModel& model, double target);

}  // namespace criskeq
