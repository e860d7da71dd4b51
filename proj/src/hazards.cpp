#include "criskeq/hazards.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "criskeq/optim.hpp"

namespace criskeq {

std::string family_name(Family f) {
    switch (f) {
        case Family::exponential: return "exponential";
        case Family::gompertz: return "gompertz";
        case Family::weibull: return "weibull";
    }
    throw std::logic_error("unknown family tag");
}

Family family_from_string(const std::string& name) {
    std::string s;
    s.reserve(name.size());
    for (char c : name) s.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    if (s == "exp" || s == "exponential") return Family::exponential;
    if (s == "gompertz") return Family::gompertz;
    if (s == "weibull") return Family::weibull;
    throw std::invalid_argument("unknown intensity family '" + name + "'");
}

int family_param_count(Family f) {
    return f == Family::exponential ? 1 : 2;
}

std::vector<Family> families_from_string(const std::string& comma_separated) {
    std::vector<Family> out;
    std::stringstream ss(comma_separated);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (!tok.empty()) out.push_back(family_from_string(tok));
    }
    if (out.empty()) throw std::invalid_argument("empty family list");
    return out;
}

void Intensity::validate() const {
    if (static_cast<int>(params.size()) != family_param_count(family))
        throw std::invalid_argument(family_name(family) + ": expected " +
                                    std::to_string(family_param_count(family)) + " parameter(s), got " +
                                    std::to_string(params.size()));
    for (double p : params)
        if (!std::isfinite(p)) throw std::invalid_argument(family_name(family) + ": non-finite parameter");
    switch (family) {
        case Family::exponential:
            if (!(params[0] > 0.0)) throw std::invalid_argument("exponential: rate must be > 0");
            break;
        case Family::gompertz:
            // shape is unrestricted (negative shapes give decreasing hazards)
            if (!(params[0] > 0.0)) throw std::invalid_argument("gompertz: scale must be > 0");
            break;
        case Family::weibull:
            if (!(params[0] > 0.0)) throw std::invalid_argument("weibull: scale must be > 0");
            if (!(params[1] > 0.0)) throw std::invalid_argument("weibull: shape must be > 0");
            break;
    }
}

double intensity(const Intensity& spec, double t) {
    switch (spec.family) {
        case Family::exponential:
            return spec.params[0];
        case Family::gompertz:
            return spec.params[0] * std::exp(spec.params[1] * t);
        case Family::weibull: {
            const double scale = spec.params[0], shape = spec.params[1];
            if (t <= 0.0) {
                if (shape > 1.0) return 0.0;
                if (shape == 1.0) return 1.0 / scale;
                return kHazardCap;
            }
            double a = (shape / scale) * std::pow(t / scale, shape - 1.0);
            return std::min(a, kHazardCap);
        }
    }
    throw std::logic_error("unknown family tag");
}

double cumulative_intensity(const Intensity& spec, double t) {
    if (t <= 0.0) return 0.0;
    switch (spec.family) {
        case Family::exponential:
            return spec.params[0] * t;
        case Family::gompertz: {
            const double scale = spec.params[0], shape = spec.params[1];
            if (std::fabs(shape) < kGompertzShapeEps) return scale * t;
            return (scale / shape) * std::expm1(shape * t);
        }
        case Family::weibull:
            return std::pow(t / spec.params[0], spec.params[1]);
    }
    throw std::logic_error("unknown family tag");
}

void CompetingRisksModel::validate() const {
    if (transitions.empty()) throw std::invalid_argument("model needs at least one transition");
    if (!(horizon > 0.0)) throw std::invalid_argument("model horizon must be > 0");
    for (const auto& tr : transitions) tr.validate();
}

double all_cause_cumulative(const CompetingRisksModel& model, double t) {
    double total = 0.0;
    for (const auto& tr : model.transitions) total += cumulative_intensity(tr, t);
    return total;
}

double survival(const CompetingRisksModel& model, double t) {
    return std::exp(-all_cause_cumulative(model, t));
}

double invert_all_cause(const CompetingRisksModel& model, double target, double cap) {
    if (target < 0.0) throw std::invalid_argument("invert_all_cause: target must be >= 0");
    if (target == 0.0) return 0.0;
    if (!(cap > 0.0)) return beyond_horizon();
    if (!std::isfinite(cap)) {
        // expand a finite bracket; bail out if the total hazard is bounded
        // below the target (the subject never experiences any event)
        double hi = 10.0 * model.horizon;
        const double limit = 1e9 * model.horizon;
        while (all_cause_cumulative(model, hi) < target) {
            if (hi > limit) return beyond_horizon();
            hi *= 2.0;
        }
        cap = hi;
    } else if (all_cause_cumulative(model, cap) < target) {
        return beyond_horizon();
    }
    return bisect_nondecreasing(
        [&](double t) { return all_cause_cumulative(model, t); }, target, cap, kInvertTimeTol);
}

double invert_all_cause(const CompetingRisksModel& model, double target) {
    return invert_all_cause(model, target, 10.0 * model.horizon);
}

}  // namespace criskeq
