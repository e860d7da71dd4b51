#include "criskeq/nelson_aalen.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace criskeq {

double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("normal_quantile: p must be in (0, 1)");
    // AS241 (Wichura): double-precision rational approximations
    const double q = p - 0.5;
    double r, num, den;
    if (std::fabs(q) <= 0.425) {
        r = 0.180625 - q * q;
        num = (((((((2509.0809287301226727 * r + 33430.575583588128105) * r + 67265.770927008700853) * r +
                    45921.953931549871457) * r + 13731.693765509461125) * r + 1971.5909503065514427) * r +
                  133.14166789178437745) * r + 3.387132872796366608);
        den = (((((((5226.495278852545703 * r + 28729.085735721942674) * r + 39307.89580009271061) * r +
                    21213.794301586595867) * r + 5394.1960214247511077) * r + 687.1870074920579083) * r +
                  42.313330701600911252) * r + 1.0);
        return q * num / den;
    }
    r = q < 0.0 ? p : 1.0 - p;
    r = std::sqrt(-std::log(r));
    if (r <= 5.0) {
        r -= 1.6;
        num = (((((((7.7454501427834140764e-4 * r + 0.0227238449892691845833) * r + 0.24178072517745061177) * r +
                    1.27045825245236838258) * r + 3.64784832476320460504) * r + 5.7694972214606914055) * r +
                  4.6303378461565452959) * r + 1.42343711074968357734);
        den = (((((((1.05075007164441684324e-9 * r + 5.475938084995344946e-4) * r + 0.0151986665636164571966) * r +
                    0.14810397642748007459) * r + 0.68976733498510000455) * r + 1.6763848301838038494) * r +
                  2.05319162663775882187) * r + 1.0);
    } else {
        r -= 5.0;
        num = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r + 0.0012426609473880784386) * r +
                    0.026532189526576123093) * r + 0.29656057182850489123) * r + 1.7848265399172913358) * r +
                  5.4637849111641143699) * r + 6.6579046435011037772);
        den = (((((((2.04426310338993978564e-15 * r + 1.4215117583164458887e-7) * r + 1.8463183175100546818e-5) * r +
                    7.868691311456132591e-4) * r + 0.0148753612908506148525) * r + 0.13692988092273580531) * r +
                  0.59983220655588793769) * r + 1.0);
    }
    double value = num / den;
    return q < 0.0 ? -value : value;
}

double StepFunction::value_at(double t) const {
    auto it = std::upper_bound(times.begin(), times.end(), t);
    if (it == times.begin()) return 0.0;
    return values[static_cast<std::size_t>(it - times.begin()) - 1];
}

double StepFunction::variance_at(double t) const {
    auto it = std::upper_bound(times.begin(), times.end(), t);
    if (it == times.begin()) return 0.0;
    return variances[static_cast<std::size_t>(it - times.begin()) - 1];
}

StepFunction nelson_aalen(const Sample& s, int j) {
    s.validate();
    if (j < 1 || j > s.k) throw std::invalid_argument("nelson_aalen: state index out of range");

    // event/censoring multiplicities per distinct time
    std::map<double, std::pair<int, int>> by_time;  // time -> (cause-j events, leaving total)
    for (const auto& o : s.observations) {
        auto& entry = by_time[o.time];
        if (o.state == j) ++entry.first;
        ++entry.second;
    }

    StepFunction out;
    int at_risk = s.n();
    double value = 0.0, variance = 0.0;
    for (const auto& [time, counts] : by_time) {
        const auto [d_j, leaving] = counts;
        if (d_j > 0) {
            const double y = static_cast<double>(at_risk);
            value += static_cast<double>(d_j) / y;
            variance += static_cast<double>(d_j) / (y * y);
            out.times.push_back(time);
            out.values.push_back(value);
            out.variances.push_back(variance);
        }
        at_risk -= leaving;
    }
    return out;
}

ConfidenceBand na_confidence(const StepFunction& step, double level) {
    if (!(level > 0.0 && level < 1.0)) throw std::invalid_argument("na_confidence: level must be in (0, 1)");
    const double z = normal_quantile(0.5 + level / 2.0);

    ConfidenceBand band;
    band.lower.reserve(step.values.size());
    band.upper.reserve(step.values.size());
    for (std::size_t i = 0; i < step.values.size(); ++i) {
        const double a = step.values[i];
        if (!(a > 0.0)) {
            band.lower.push_back(0.0);
            band.upper.push_back(0.0);
            continue;
        }
        const double sd = std::sqrt(step.variances[i]);
        const double half = z * sd / a;
        band.lower.push_back(a * std::exp(-half));
        band.upper.push_back(a * std::exp(half));
    }
    return band;
}

}  // namespace criskeq
