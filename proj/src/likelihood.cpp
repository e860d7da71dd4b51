#include "criskeq/likelihood.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "criskeq/optim.hpp"
#include "criskeq/rng.hpp"

namespace criskeq {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double finite_or_neg_inf(double v) {
    return std::isfinite(v) ? v : kNegInf;
}

}  // namespace

LikelihoodData prepare_likelihood_data(const Sample& s) {
    s.validate();
    auto times = std::make_shared<std::vector<double>>();
    auto log_times = std::make_shared<std::vector<double>>();
    times->reserve(s.observations.size());
    log_times->reserve(s.observations.size());
    for (const auto& o : s.observations) {
        times->push_back(o.time);
        log_times->push_back(std::log(o.time));
    }

    LikelihoodData data;
    data.times = times;
    data.log_times = log_times;
    data.transitions.assign(static_cast<std::size_t>(s.k), TransitionData{});
    double exposure = 0.0;
    for (double t : *times) exposure += t;

    auto init_td = [&](TransitionData& td) {
        td.n_total = s.n();
        td.exposure = exposure;
        td.all_times = times.get();
        td.all_log_times = log_times.get();
    };
    for (auto& td : data.transitions) init_td(td);
    init_td(data.censoring);

    for (std::size_t i = 0; i < s.observations.size(); ++i) {
        const auto& o = s.observations[i];
        TransitionData* td = nullptr;
        if (o.state == 0) {
            ++data.censored;
            td = &data.censoring;
        } else {
            td = &data.transitions[static_cast<std::size_t>(o.state - 1)];
        }
        ++td->events;
        td->sum_event_times += o.time;
        td->sum_log_event_times += (*log_times)[i];
    }
    return data;
}

double transition_block_loglik(const Intensity& spec, const TransitionData& td) {
    switch (spec.family) {
        case Family::exponential: {
            const double rate = spec.params[0];
            if (!(rate > 0.0)) return kNegInf;
            double v = -rate * td.exposure;
            if (td.events > 0) v += td.events * std::log(rate);
            return finite_or_neg_inf(v);
        }
        case Family::gompertz: {
            const double scale = spec.params[0], shape = spec.params[1];
            if (!(scale > 0.0) || !std::isfinite(shape)) return kNegInf;
            double cum;
            if (std::fabs(shape) < kGompertzShapeEps) {
                cum = scale * td.exposure;
            } else {
                double acc = 0.0;
                for (double t : *td.all_times) acc += std::expm1(shape * t);
                cum = (scale / shape) * acc;
            }
            double v = -cum;
            if (td.events > 0) v += td.events * std::log(scale) + shape * td.sum_event_times;
            return finite_or_neg_inf(v);
        }
        case Family::weibull: {
            const double scale = spec.params[0], shape = spec.params[1];
            if (!(scale > 0.0) || !(shape > 0.0)) return kNegInf;
            const double log_scale = std::log(scale);
            double acc = 0.0;  // sum_i (t_i / scale)^shape
            for (double lt : *td.all_log_times) acc += std::exp(shape * (lt - log_scale));
            double v = -acc;
            if (td.events > 0)
                v += td.events * (std::log(shape) - shape * log_scale) +
                     (shape - 1.0) * td.sum_log_event_times;
            return finite_or_neg_inf(v);
        }
    }
    return kNegInf;
}

double log_likelihood(const Sample& s, const CompetingRisksModel& model) {
    if (model.k() != s.k)
        throw std::invalid_argument("model has " + std::to_string(model.k()) +
                                    " transitions but sample has k=" + std::to_string(s.k));
    for (const auto& tr : model.transitions) tr.validate();
    LikelihoodData data = prepare_likelihood_data(s);
    double total = 0.0;
    for (int j = 0; j < s.k; ++j) {
        double block = transition_block_loglik(model.transitions[static_cast<std::size_t>(j)],
                                               data.transitions[static_cast<std::size_t>(j)]);
        if (block == kNegInf) return kNegInf;
        total += block;
    }
    return total;
}

double log_likelihood_censored(const Sample& s, const CompetingRisksModel& model,
                               const CensoringModel& censoring) {
    if (censoring.is_administrative())
        throw std::invalid_argument("log_likelihood_censored requires a parametric censoring model");
    censoring.validate();
    double base = log_likelihood(s, model);
    if (base == kNegInf) return kNegInf;
    double extra = 0.0;
    for (const auto& o : s.observations) {
        if (o.state != 0) continue;
        // g(t) = h(t) exp(-H(t)) for the censoring hazard law
        double h = intensity(censoring.law, o.time);
        if (!(h > 0.0)) return kNegInf;
        extra += std::log(h) - cumulative_intensity(censoring.law, o.time);
    }
    return finite_or_neg_inf(base + extra);
}

std::vector<double> to_transformed(const Intensity& spec) {
    switch (spec.family) {
        case Family::exponential: return {std::log(spec.params[0])};
        case Family::gompertz: return {std::log(spec.params[0]), spec.params[1]};
        case Family::weibull: return {std::log(spec.params[0]), std::log(spec.params[1])};
    }
    throw std::logic_error("unknown family tag");
}

Intensity from_transformed(Family family, const std::vector<double>& x) {
    switch (family) {
        case Family::exponential: return Intensity::make_exponential(std::exp(x[0]));
        case Family::gompertz: return Intensity::make_gompertz(std::exp(x[0]), x[1]);
        case Family::weibull: return Intensity::make_weibull(std::exp(x[0]), std::exp(x[1]));
    }
    throw std::logic_error("unknown family tag");
}

Intensity degenerate_intensity(Family family) {
    switch (family) {
        case Family::exponential: return Intensity::make_exponential(kRateFloor);
        case Family::gompertz: return Intensity::make_gompertz(kRateFloor, 0.0);
        case Family::weibull: return Intensity::make_weibull(1.0 / kRateFloor, 1.0);
    }
    throw std::logic_error("unknown family tag");
}

namespace {

// Starting point: the occurrence/exposure rate mapped into each family as the
// constant-hazard equivalent.
std::vector<double> base_start(Family family, const TransitionData& td) {
    double rate0 = static_cast<double>(td.events) / td.exposure;
    double log_rate0 = std::log(rate0);
    switch (family) {
        case Family::exponential: return {log_rate0};
        case Family::gompertz: return {log_rate0, 0.0};
        case Family::weibull: return {-log_rate0, 0.0};
    }
    throw std::logic_error("unknown family tag");
}

// Initial simplex steps per transformed coordinate. The Gompertz shape is in
// hazard-exponent units per day; a day-scale horizon wants small steps there.
std::vector<double> coordinate_steps(Family family, const TransitionData& td) {
    double tmax = 1.0;
    for (double t : *td.all_times) tmax = std::max(tmax, t);
    switch (family) {
        case Family::exponential: return {0.3};
        case Family::gompertz: return {0.3, 1.0 / tmax};
        case Family::weibull: return {0.3, 0.3};
    }
    throw std::logic_error("unknown family tag");
}

}  // namespace

TransitionFit fit_transition(Family family, const TransitionData& td, const FitOptions& options) {
    if (td.events <= 0) throw std::invalid_argument("fit_transition needs at least one event");

    auto objective = [&](const std::vector<double>& x) {
        return -transition_block_loglik(from_transformed(family, x), td);
    };

    SimplexOptions nm;
    nm.initial_steps = coordinate_steps(family, td);
    nm.diameter_tol = options.diameter_tol;
    nm.max_iterations = options.max_iterations;

    const std::vector<double> start = base_start(family, td);

    // restart draws use a fixed stream: fitting is deterministic in its inputs
    Rng rng(0x4d4c4546u, {static_cast<std::uint64_t>(family), static_cast<std::uint64_t>(td.events),
                          static_cast<std::uint64_t>(td.n_total)});

    TransitionFit best;
    best.block_loglik = kNegInf;
    double previous_best = kNegInf;
    int runs = 0;

    for (int attempt = 0; attempt <= options.restarts; ++attempt) {
        std::vector<double> x0 = start;
        if (attempt > 0) {
            for (std::size_t c = 0; c < x0.size(); ++c)
                x0[c] += rng.uniform(-3.0, 3.0) * nm.initial_steps[c];
        }
        SimplexResult r = nelder_mead(objective, x0, nm);
        ++runs;
        double value = -r.value;
        best.iterations += r.iterations;
        if (value > best.block_loglik ||
            (value == best.block_loglik && !best.converged && r.converged)) {
            previous_best = best.block_loglik;
            best.block_loglik = value;
            best.spec = from_transformed(family, r.x);
            best.converged = r.converged;
        } else {
            previous_best = std::max(previous_best, value);
        }
        if (options.restart_agreement_tol >= 0.0 && runs >= 2 && std::isfinite(previous_best)) {
            double gap = std::fabs(best.block_loglik - previous_best);
            if (gap <= options.restart_agreement_tol * (1.0 + std::fabs(best.block_loglik))) break;
        }
    }
    best.restarts_used = runs - 1;
    return best;
}

FitResult fit_intensities(const Sample& s, const std::vector<Family>& families, double tau,
                          const FitOptions& options) {
    s.validate();
    if (static_cast<int>(families.size()) != s.k)
        throw std::invalid_argument("need one family per competing state (k=" + std::to_string(s.k) + ")");

    LikelihoodData data = prepare_likelihood_data(s);

    FitResult result;
    result.model.horizon = tau;
    result.model.transitions.reserve(families.size());
    result.converged = true;
    double total = 0.0;

    for (int j = 1; j <= s.k; ++j) {
        const TransitionData& td = data.transitions[static_cast<std::size_t>(j - 1)];
        if (td.events == 0) {
            Intensity floor_spec = degenerate_intensity(families[static_cast<std::size_t>(j - 1)]);
            total += transition_block_loglik(floor_spec, td);
            result.model.transitions.push_back(std::move(floor_spec));
            result.degenerate_states.push_back(j);
            continue;
        }
        TransitionFit fit = fit_transition(families[static_cast<std::size_t>(j - 1)], td, options);
        total += fit.block_loglik;
        result.iterations += fit.iterations;
        result.restarts_used += fit.restarts_used;
        result.converged = result.converged && fit.converged;
        result.model.transitions.push_back(std::move(fit.spec));
    }
    result.log_lik = total;
    return result;
}

FitResult fit_mle(const Sample& s, const std::vector<Family>& families,
                  const CensoringModel& censoring, const FitOptions& options) {
    censoring.validate();
    if (censoring.is_administrative()) {
        s.validate();
        s.check_administrative(censoring.tau);
    }

    FitResult result = fit_intensities(s, families, censoring.tau, options);
    double total = result.log_lik;

    if (!censoring.is_administrative()) {
        LikelihoodData data = prepare_likelihood_data(s);
        CensoringFit cf = fit_censoring_from_data(data, censoring.law.family, options);
        // report the event log-likelihood extended by the censoring density terms
        for (const auto& o : s.observations) {
            if (o.state != 0) continue;
            double h = intensity(cf.law, o.time);
            total += std::log(h) - cumulative_intensity(cf.law, o.time);
        }
        result.converged = result.converged && cf.converged;
        result.censoring = std::move(cf.law);
    }

    result.log_lik = total;
    return result;
}

CensoringFit fit_censoring(const Sample& s, Family censor_family, const FitOptions& options) {
    LikelihoodData data = prepare_likelihood_data(s);
    return fit_censoring_from_data(data, censor_family, options);
}

CensoringFit fit_censoring_from_data(const LikelihoodData& data, Family censor_family,
                                     const FitOptions& options) {
    CensoringFit out;
    if (data.censoring.events == 0) {
        out.law = degenerate_intensity(censor_family);
        out.log_lik = transition_block_loglik(out.law, data.censoring);
        out.converged = true;
        out.degenerate = true;
        return out;
    }
    TransitionFit fit = fit_transition(censor_family, data.censoring, options);
    out.law = std::move(fit.spec);
    out.log_lik = fit.block_loglik;
    out.converged = fit.converged;
    return out;
}

}  // namespace criskeq
