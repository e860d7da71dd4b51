#include "criskeq/simulate.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace criskeq {

namespace {

// Draws the event time and cause with the all-cause inversion capped at `cap`;
// times beyond the cap come back as (beyond_horizon(), 0). Draws where the
// located time is not strictly positive are redrawn.
std::pair<double, int> draw_event(const CompetingRisksModel& model, Rng& rng, double cap) {
    const int k = model.k();
    std::vector<double> weights(static_cast<std::size_t>(k));
    for (int attempt = 0; attempt < 1000; ++attempt) {
        double target = -std::log(rng.uniform());
        double t = invert_all_cause(model, target, cap);
        if (t == beyond_horizon()) return {beyond_horizon(), 0};
        if (!(t > 0.0)) continue;  // resample: observation times must be positive
        for (int j = 0; j < k; ++j)
            weights[static_cast<std::size_t>(j)] = intensity(model.transitions[static_cast<std::size_t>(j)], t);
        int cause = rng.categorical(weights);
        if (cause < 0) continue;  // all intensities zero at t (measure zero): resample
        return {t, cause + 1};
    }
    throw std::runtime_error("simulate_event: could not draw a valid event time");
}

}  // namespace

std::pair<double, int> simulate_event(const CompetingRisksModel& model, Rng& rng, double cap) {
    model.validate();
    return draw_event(model, rng, cap);
}

std::pair<double, int> simulate_event(const CompetingRisksModel& model, Rng& rng) {
    return simulate_event(model, rng, 10.0 * model.horizon);
}

double draw_censoring_time(const Intensity& law, Rng& rng) {
    const double target = -std::log(rng.uniform());
    switch (law.family) {
        case Family::exponential:
            return target / law.params[0];
        case Family::gompertz: {
            const double scale = law.params[0], shape = law.params[1];
            if (std::fabs(shape) < kGompertzShapeEps) return target / scale;
            // H(t) = (scale/shape)(e^{shape t} - 1) = target
            double arg = 1.0 + shape * target / scale;
            if (!(arg > 0.0)) return std::numeric_limits<double>::infinity();  // defective law
            return std::log(arg) / shape;
        }
        case Family::weibull:
            return law.params[0] * std::pow(target, 1.0 / law.params[1]);
    }
    throw std::logic_error("unknown family tag");
}

Observation apply_censoring(std::pair<double, int> event, const CensoringModel& censoring, Rng& rng) {
    const auto [t, state] = event;
    if (censoring.is_administrative()) {
        if (t > censoring.tau) return {censoring.tau, 0};
        return {t, state};
    }
    double c = draw_censoring_time(censoring.law, rng);
    if (c < t) return {c, 0};
    if (t == beyond_horizon())
        throw std::runtime_error("apply_censoring: event and censoring time both unbounded");
    return {t, state};
}

Sample simulate_sample(const SimulationPlan& plan) {
    plan.model.validate();
    plan.censoring.validate();
    if (plan.n < 1) throw std::invalid_argument("simulate_sample: n must be >= 1");

    Rng rng = make_stream(plan.seed, plan.replicate_id, static_cast<std::uint64_t>(plan.group));

    Sample s;
    s.group = plan.group;
    s.k = plan.model.k();
    s.horizon = plan.model.horizon;
    s.observations.reserve(static_cast<std::size_t>(plan.n));

    const bool administrative = plan.censoring.is_administrative();
    for (int i = 0; i < plan.n; ++i) {
        if (administrative) {
            // events beyond tau are administrative censorings; nothing beyond
            // the horizon is ever needed, so the inversion caps there
            auto ev = draw_event(plan.model, rng, plan.censoring.tau);
            if (ev.first == beyond_horizon()) s.observations.push_back({plan.censoring.tau, 0});
            else s.observations.push_back({ev.first, ev.second});
        } else {
            // random right-censoring replaces the administrative cut: the
            // observed time is min(T, C), so the inversion caps at the drawn C
            double c = draw_censoring_time(plan.censoring.law, rng);
            auto ev = draw_event(plan.model, rng, c);
            if (ev.first == beyond_horizon()) {
                if (!std::isfinite(c))
                    throw std::runtime_error("simulate_sample: event and censoring time both unbounded");
                s.observations.push_back({c, 0});
            } else {
                s.observations.push_back({ev.first, ev.second});
            }
        }
    }
    return s;
}

}  // namespace criskeq
