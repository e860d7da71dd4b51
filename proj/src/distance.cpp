#include "criskeq/distance.hpp"

#include <cmath>
#include <stdexcept>

#include "criskeq/optim.hpp"

namespace criskeq {

TransitionDistance sup_norm_diff(const Intensity& a, const Intensity& b, double tau,
                                 const DistanceOptions& options) {
    a.validate();
    b.validate();
    if (!(tau > options.t_min)) throw std::invalid_argument("sup_norm_diff: tau must exceed t_min");
    if (options.grid_points < 3) throw std::invalid_argument("sup_norm_diff: need at least 3 grid points");

    auto diff = [&](double t) { return std::fabs(intensity(a, t) - intensity(b, t)); };

    const int n = options.grid_points;
    const double lo = options.t_min, hi = tau;
    const double step = (hi - lo) / static_cast<double>(n - 1);

    // first strict maximum wins, so constant differences report the smallest t
    int best_idx = 0;
    double best_val = diff(lo);
    for (int i = 1; i < n; ++i) {
        double t = lo + step * i;
        double v = diff(t);
        if (v > best_val) {
            best_val = v;
            best_idx = i;
        }
    }

    double bracket_lo = lo + step * std::max(0, best_idx - 1);
    double bracket_hi = lo + step * std::min(n - 1, best_idx + 1);
    double refined_t = golden_section([&](double t) { return -diff(t); }, bracket_lo, bracket_hi,
                                      options.refine_tol);
    double refined_val = diff(refined_t);

    TransitionDistance out;
    if (refined_val > best_val) {
        out.d = refined_val;
        out.argmax_t = refined_t;
    } else {
        out.d = best_val;
        out.argmax_t = lo + step * best_idx;
    }
    out.boundary_singularity = best_idx == 0 && (a.singular_at_zero() || b.singular_at_zero());
    return out;
}

DistanceResult global_distance(const CompetingRisksModel& m1, const CompetingRisksModel& m2,
                               const DistanceOptions& options) {
    if (m1.k() != m2.k())
        throw std::invalid_argument("global_distance: models have different numbers of transitions");
    if (m1.horizon != m2.horizon)
        throw std::invalid_argument("global_distance: models have different horizons");

    DistanceResult out;
    out.grid_points = options.grid_points;
    out.per_transition.reserve(static_cast<std::size_t>(m1.k()));
    for (int j = 0; j < m1.k(); ++j) {
        TransitionDistance td = sup_norm_diff(m1.transitions[static_cast<std::size_t>(j)],
                                              m2.transitions[static_cast<std::size_t>(j)],
                                              m1.horizon, options);
        if (j == 0 || td.d > out.d_hat) {
            out.d_hat = td.d;
            out.argmax_state = j + 1;
            out.argmax_t = td.argmax_t;
        }
        out.per_transition.push_back(td);
    }
    return out;
}

}  // namespace criskeq
