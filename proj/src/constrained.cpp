#include "criskeq/constrained.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "criskeq/optim.hpp"
#include "criskeq/rng.hpp"

namespace criskeq {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// One transition pair pinned to |alpha1 - alpha2|_sup = delta.
struct PairMargin {
    Intensity spec1, spec2;
    double block_sum = kNegInf;   // block1 + block2 at the solution
    double residual = std::numeric_limits<double>::infinity();
    bool feasible = false;
};

struct PairProblem {
    Family family;
    const TransitionData* td1;
    const TransitionData* td2;
    double tau;
    double delta;
    const ConstrainedOptions* opt;

    int p() const { return family_param_count(family); }

    Intensity spec_a(const std::vector<double>& z) const {
        std::vector<double> x(z.begin(), z.begin() + p());
        return from_transformed(family, x);
    }
    Intensity spec_b(const std::vector<double>& z) const {
        std::vector<double> x(z.begin() + p(), z.end());
        return from_transformed(family, x);
    }

    double block_sum(const Intensity& a, const Intensity& b) const {
        double v1 = transition_block_loglik(a, *td1);
        double v2 = transition_block_loglik(b, *td2);
        if (v1 == kNegInf || v2 == kNegInf) return kNegInf;
        return v1 + v2;
    }

    double pair_distance(const Intensity& a, const Intensity& b, const DistanceOptions& d) const {
        // extreme transformed coordinates overflow to non-finite parameters;
        // report them as infinitely far so searches steer away
        for (double p : a.params)
            if (!std::isfinite(p)) return std::numeric_limits<double>::infinity();
        for (double p : b.params)
            if (!std::isfinite(p)) return std::numeric_limits<double>::infinity();
        return sup_norm_diff(a, b, tau, d).d;
    }

    double pair_distance(const std::vector<double>& z, const DistanceOptions& d) const {
        return pair_distance(spec_a(z), spec_b(z), d);
    }

    // 0.1 on log coordinates, small steps on the day-scaled Gompertz shape
    std::vector<double> polish_steps(std::size_t skipped) const {
        std::vector<double> steps;
        for (std::size_t c = 0; c < static_cast<std::size_t>(2 * p()); ++c) {
            if (c == skipped) continue;
            bool shape_coord = family == Family::gompertz &&
                               (c % static_cast<std::size_t>(p())) == static_cast<std::size_t>(p() - 1);
            steps.push_back(shape_coord ? 0.005 : 0.1);
        }
        return steps;
    }
};

// Solves scale so that the family's hazard equals `target` at time t.
bool solve_scale_for_level(Family family, double shape, double t, double target, double& scale) {
    if (!(target > 0.0)) return false;
    switch (family) {
        case Family::exponential:
            scale = target;
            return true;
        case Family::gompertz:
            scale = target * std::exp(-shape * t);
            return std::isfinite(scale) && scale > 0.0;
        case Family::weibull: {
            // alpha(t) = shape * t^{shape-1} * scale^{-shape}
            if (!(t > 0.0)) return false;
            double log_scale = (std::log(shape) + (shape - 1.0) * std::log(t) - std::log(target)) / shape;
            scale = std::exp(log_scale);
            return std::isfinite(scale) && scale > 0.0;
        }
    }
    return false;
}

// Warm start: walk the straight line through both groups' transformed
// parameters (gamma = 0 at the MLE pair, 1 at the common midpoint, 2 at the
// swapped pair) and bisect for the margin.
std::vector<double> path_point(const std::vector<double>& z_mle, int p, double gamma) {
    std::vector<double> z = z_mle;
    for (int c = 0; c < p; ++c) {
        double mid = 0.5 * (z_mle[static_cast<std::size_t>(c)] + z_mle[static_cast<std::size_t>(c + p)]);
        z[static_cast<std::size_t>(c)] = z_mle[static_cast<std::size_t>(c)] +
                                         gamma * (mid - z_mle[static_cast<std::size_t>(c)]);
        z[static_cast<std::size_t>(c + p)] = z_mle[static_cast<std::size_t>(c + p)] +
                                             gamma * (mid - z_mle[static_cast<std::size_t>(c + p)]);
    }
    return z;
}

// Bisection for pair_distance(path(gamma)) == delta on [g_lo, g_hi], where the
// predicate dist >= delta holds at exactly one end.
std::vector<double> bisect_path(const PairProblem& prob, const std::vector<double>& z_mle,
                                double g_at_or_above, double g_below, int p) {
    for (int it = 0; it < 80; ++it) {
        double mid = 0.5 * (g_at_or_above + g_below);
        auto z = path_point(z_mle, p, mid);
        if (prob.pair_distance(z, prob.opt->inner_distance) >= prob.delta) g_at_or_above = mid;
        else g_below = mid;
    }
    return path_point(z_mle, p, g_at_or_above);
}

std::vector<std::vector<double>> build_warm_starts(const PairProblem& prob,
                                                   const std::vector<double>& z_mle,
                                                   double d_mle) {
    const int p = prob.p();
    std::vector<std::vector<double>> starts;

    double sep = 0.0;
    for (int c = 0; c < p; ++c)
        sep = std::max(sep, std::fabs(z_mle[static_cast<std::size_t>(c)] -
                                      z_mle[static_cast<std::size_t>(c + p)]));

    if (sep > 1e-9) {
        if (d_mle < prob.delta) {
            // push apart: gamma < 0 moves both groups away from the midpoint
            double g = -1.0;
            bool found = false;
            for (int it = 0; it < 60; ++it, g *= 2.0) {
                if (prob.pair_distance(path_point(z_mle, p, g), prob.opt->inner_distance) >= prob.delta) {
                    found = true;
                    break;
                }
            }
            if (found) starts.push_back(bisect_path(prob, z_mle, g, 0.0, p));
            // swapped-orientation branch: beyond gamma = 2 the difference has
            // the opposite sign
            g = 3.0;
            found = false;
            for (int it = 0; it < 60; ++it, g = 2.0 + (g - 2.0) * 2.0) {
                if (prob.pair_distance(path_point(z_mle, p, g), prob.opt->inner_distance) >= prob.delta) {
                    found = true;
                    break;
                }
            }
            if (found) starts.push_back(bisect_path(prob, z_mle, g, 2.0, p));
        } else {
            // pull together: distance falls to 0 at the midpoint
            starts.push_back(bisect_path(prob, z_mle, 0.0, 1.0, p));
            // opposite-sign branch between midpoint and swapped pair
            starts.push_back(bisect_path(prob, z_mle, 2.0, 1.0, p));
        }
    }

    if (starts.empty()) {
        // (near-)identical groups: split the scale coordinate symmetrically
        for (double sign : {1.0, -1.0}) {
            double eta = 0.01;
            std::vector<double> z;
            for (int it = 0; it < 200; ++it, eta *= 2.0) {
                z = z_mle;
                z[0] += sign * eta;
                z[static_cast<std::size_t>(p)] -= sign * eta;
                if (prob.pair_distance(z, prob.opt->inner_distance) >= prob.delta) break;
            }
            double lo = 0.0, hi = eta;
            for (int it = 0; it < 80; ++it) {
                double mid = 0.5 * (lo + hi);
                z = z_mle;
                z[0] += sign * mid;
                z[static_cast<std::size_t>(p)] -= sign * mid;
                if (prob.pair_distance(z, prob.opt->inner_distance) >= prob.delta) hi = mid;
                else lo = mid;
            }
            z = z_mle;
            z[0] += sign * hi;
            z[static_cast<std::size_t>(p)] -= sign * hi;
            starts.push_back(z);
        }
    }

    // random perturbations of the first start
    Rng rng(0x434f4e53u, {static_cast<std::uint64_t>(prob.family),
                          static_cast<std::uint64_t>(prob.td1->events),
                          static_cast<std::uint64_t>(prob.td2->events)});
    const std::vector<double> base = starts.front();  // copy: push_back reallocates
    for (int r = 0; r < prob.opt->random_starts; ++r) {
        std::vector<double> z = base;
        for (std::size_t c = 0; c < z.size(); ++c) {
            double step = (prob.family == Family::gompertz && (c % static_cast<std::size_t>(p)) == 1)
                              ? 0.02
                              : 0.4;
            z[c] += rng.uniform(-step, step);
        }
        starts.push_back(std::move(z));
    }
    return starts;
}

// Active-point polish: fix the attaining time t* and the difference sign,
// eliminate the larger side's scale through the level equation, and maximize
// the remaining coordinates. Iterates because the attaining point can move.
bool polish(const PairProblem& prob, std::vector<double>& z, double& block, double& residual) {
    const int p = prob.p();
    SimplexOptions nm;
    nm.diameter_tol = prob.opt->fit.diameter_tol;
    nm.max_iterations = prob.opt->fit.max_iterations;

    bool ok = false;
    for (int round = 0; round < prob.opt->polish_rounds; ++round) {
        Intensity a = prob.spec_a(z), b = prob.spec_b(z);
        TransitionDistance dist = sup_norm_diff(a, b, prob.tau, prob.opt->report_distance);
        residual = std::fabs(dist.d - prob.delta);
        block = prob.block_sum(a, b);
        // at least one elimination pass always runs: the penalty stages stop
        // near the margin, the level equation puts the pair exactly on it
        if (residual <= prob.opt->constraint_tol && round > 0) {
            ok = true;
            break;
        }

        const double t_star = dist.argmax_t;
        double a1 = intensity(a, t_star), a2 = intensity(b, t_star);
        // adjust the larger side: its level target alpha_small + delta stays positive
        int big = a1 >= a2 ? 1 : 2;
        std::size_t elim = big == 1 ? 0 : static_cast<std::size_t>(p);
        nm.initial_steps = prob.polish_steps(elim);

        std::vector<double> w;  // z without the eliminated coordinate
        w.reserve(z.size() - 1);
        for (std::size_t c = 0; c < z.size(); ++c)
            if (c != elim) w.push_back(z[c]);

        auto rebuild = [&](const std::vector<double>& wv, std::vector<double>& out) -> bool {
            out.assign(z.size(), 0.0);
            std::size_t wi = 0;
            for (std::size_t c = 0; c < z.size(); ++c)
                if (c != elim) out[c] = wv[wi++];
            Intensity small_spec = big == 1 ? prob.spec_b(out) : prob.spec_a(out);
            double target = intensity(small_spec, t_star) + prob.delta;
            double shape = prob.p() > 1 ? out[elim + 1] : 0.0;
            if (prob.family == Family::weibull) shape = std::exp(shape);
            double scale;
            if (!solve_scale_for_level(prob.family, shape, t_star, target, scale)) return false;
            out[elim] = std::log(scale);
            return true;
        };

        std::vector<double> zt;
        auto objective = [&](const std::vector<double>& wv) {
            std::vector<double> full;
            if (!rebuild(wv, full)) return std::numeric_limits<double>::infinity();
            return -prob.block_sum(prob.spec_a(full), prob.spec_b(full));
        };
        SimplexResult r = nelder_mead(objective, w, nm);
        if (!rebuild(r.x, zt)) break;
        z = zt;
    }
    if (!ok) {
        Intensity a = prob.spec_a(z), b = prob.spec_b(z);
        residual = std::fabs(sup_norm_diff(a, b, prob.tau, prob.opt->report_distance).d - prob.delta);
        block = prob.block_sum(a, b);
        ok = residual <= prob.opt->constraint_tol;
    }
    return ok;
}

PairMargin solve_pair_margin(const PairProblem& prob, const Intensity& mle1, const Intensity& mle2,
                             double d_mle) {
    const int p = prob.p();
    std::vector<double> z_mle = to_transformed(mle1);
    {
        std::vector<double> x2 = to_transformed(mle2);
        z_mle.insert(z_mle.end(), x2.begin(), x2.end());
    }

    SimplexOptions nm;
    nm.initial_steps.assign(static_cast<std::size_t>(2 * p), 0.15);
    if (prob.family == Family::gompertz) {
        nm.initial_steps[static_cast<std::size_t>(p - 1)] = 0.005;
        nm.initial_steps[static_cast<std::size_t>(2 * p - 1)] = 0.005;
    }
    nm.diameter_tol = prob.opt->fit.diameter_tol;
    nm.max_iterations = prob.opt->fit.max_iterations;

    PairMargin best;
    for (const auto& start : build_warm_starts(prob, z_mle, d_mle)) {
        std::vector<double> z = start;
        for (double kappa : prob.opt->penalty_weights) {
            auto objective = [&](const std::vector<double>& zv) {
                Intensity a = prob.spec_a(zv), b = prob.spec_b(zv);
                double ll = prob.block_sum(a, b);
                if (ll == kNegInf) return std::numeric_limits<double>::infinity();
                double viol = prob.pair_distance(a, b, prob.opt->inner_distance) - prob.delta;
                return -ll + kappa * viol * viol;
            };
            z = nelder_mead(objective, z, nm).x;
        }

        double block, residual;
        bool feasible = polish(prob, z, block, residual);
        bool better = false;
        if (feasible && best.feasible) better = block > best.block_sum;
        else if (feasible && !best.feasible) better = true;
        else if (!feasible && !best.feasible) better = residual < best.residual;
        if (better) {
            best.spec1 = prob.spec_a(z);
            best.spec2 = prob.spec_b(z);
            best.block_sum = block;
            best.residual = residual;
            best.feasible = feasible;
        }
    }
    return best;
}

// Margin solve when one side has zero events: that side stays pinned at the
// boundary profile and only the other side's parameters move.
PairMargin solve_pair_margin_degenerate(const PairProblem& prob, const Intensity& fixed_spec,
                                        bool fixed_is_group1, const Intensity& free_mle) {
    const int p = prob.p();
    SimplexOptions nm;
    nm.initial_steps.assign(static_cast<std::size_t>(p), 0.15);
    if (prob.family == Family::gompertz) nm.initial_steps[static_cast<std::size_t>(p - 1)] = 0.005;
    nm.diameter_tol = prob.opt->fit.diameter_tol;
    nm.max_iterations = prob.opt->fit.max_iterations;

    auto pack = [&](const Intensity& free_spec) {
        return fixed_is_group1 ? std::pair<Intensity, Intensity>{fixed_spec, free_spec}
                               : std::pair<Intensity, Intensity>{free_spec, fixed_spec};
    };

    std::vector<double> x = to_transformed(free_mle);
    for (double kappa : prob.opt->penalty_weights) {
        auto objective = [&](const std::vector<double>& xv) {
            Intensity free_spec = from_transformed(prob.family, xv);
            auto [a, b] = pack(free_spec);
            double ll = prob.block_sum(a, b);
            if (ll == kNegInf) return std::numeric_limits<double>::infinity();
            double viol = prob.pair_distance(a, b, prob.opt->inner_distance) - prob.delta;
            return -ll + kappa * viol * viol;
        };
        x = nelder_mead(objective, x, nm).x;
    }

    // elimination polish: pin the attaining time, solve the free scale from
    // the level equation, re-optimize any remaining free coordinates
    for (int round = 0; round < prob.opt->polish_rounds; ++round) {
        auto [a, b] = pack(from_transformed(prob.family, x));
        TransitionDistance dist = sup_norm_diff(a, b, prob.tau, prob.opt->report_distance);
        if (std::fabs(dist.d - prob.delta) <= prob.opt->constraint_tol) break;
        const double t_star = dist.argmax_t;
        const double base = intensity(fixed_spec, t_star);
        auto scale_for = [&](const std::vector<double>& xv, double& scale) {
            double shape = prob.p() > 1 ? xv[1] : 0.0;
            if (prob.family == Family::weibull) shape = std::exp(shape);
            return solve_scale_for_level(prob.family, shape, t_star, base + prob.delta, scale);
        };
        if (prob.p() == 1) {
            double scale;
            if (!scale_for(x, scale)) break;
            x[0] = std::log(scale);
        } else {
            auto objective = [&](const std::vector<double>& rest) {
                std::vector<double> xv{0.0, rest[0]};
                double scale;
                if (!scale_for(xv, scale)) return std::numeric_limits<double>::infinity();
                xv[0] = std::log(scale);
                auto [pa, pb] = pack(from_transformed(prob.family, xv));
                return -prob.block_sum(pa, pb);
            };
            SimplexOptions pol = nm;
            pol.initial_steps = {prob.family == Family::gompertz ? 0.005 : 0.1};
            SimplexResult r = nelder_mead(objective, {x[1]}, pol);
            std::vector<double> xv{0.0, r.x[0]};
            double scale;
            if (!scale_for(xv, scale)) break;
            x = {std::log(scale), r.x[0]};
        }
    }

    PairMargin out;
    auto [a, b] = pack(from_transformed(prob.family, x));
    out.spec1 = a;
    out.spec2 = b;
    out.block_sum = prob.block_sum(a, b);
    out.residual = std::fabs(prob.pair_distance(a, b, prob.opt->report_distance) - prob.delta);
    out.feasible = out.residual <= prob.opt->constraint_tol;
    return out;
}

struct GroupFits {
    LikelihoodData data;
    std::vector<Intensity> specs;
    std::vector<double> blocks;
    std::vector<bool> degenerate;
};

GroupFits fit_group(const Sample& s, const std::vector<Family>& families, const FitOptions& options) {
    GroupFits g;
    g.data = prepare_likelihood_data(s);
    g.specs.reserve(families.size());
    for (int j = 0; j < s.k; ++j) {
        const TransitionData& td = g.data.transitions[static_cast<std::size_t>(j)];
        if (td.events == 0) {
            Intensity spec = degenerate_intensity(families[static_cast<std::size_t>(j)]);
            g.blocks.push_back(transition_block_loglik(spec, td));
            g.specs.push_back(std::move(spec));
            g.degenerate.push_back(true);
        } else {
            TransitionFit fit = fit_transition(families[static_cast<std::size_t>(j)], td, options);
            g.blocks.push_back(fit.block_loglik);
            g.specs.push_back(std::move(fit.spec));
            g.degenerate.push_back(false);
        }
    }
    return g;
}

PairMargin solve_margin_for_transition(const PairProblem& prob, const GroupFits& g1, const GroupFits& g2,
                                       int j, double d_mle) {
    const std::size_t idx = static_cast<std::size_t>(j);
    if (g1.degenerate[idx] && g2.degenerate[idx]) {
        // no events on either side: pin group 2 at the boundary, move group 1
        return solve_pair_margin_degenerate(prob, g2.specs[idx], false, g1.specs[idx]);
    }
    if (g1.degenerate[idx])
        return solve_pair_margin_degenerate(prob, g1.specs[idx], true, g2.specs[idx]);
    if (g2.degenerate[idx])
        return solve_pair_margin_degenerate(prob, g2.specs[idx], false, g1.specs[idx]);
    return solve_pair_margin(prob, g1.specs[idx], g2.specs[idx], d_mle);
}

}  // namespace

ConstrainedFitResult fit_constrained(const Sample& s1, const Sample& s2,
                                     const std::vector<Family>& families, double delta,
                                     const CensoringModel& censoring,
                                     const ConstrainedOptions& options) {
    if (!(delta > 0.0)) throw std::invalid_argument("fit_constrained: delta must be > 0");
    if (s1.k != s2.k) throw std::invalid_argument("fit_constrained: samples disagree on k");
    if (static_cast<int>(families.size()) != s1.k)
        throw std::invalid_argument("fit_constrained: need one family per competing state");
    censoring.validate();

    const double tau = censoring.tau;
    GroupFits g1 = fit_group(s1, families, options.fit);
    GroupFits g2 = fit_group(s2, families, options.fit);

    const int k = s1.k;
    std::vector<double> d(static_cast<std::size_t>(k));
    double d_hat = 0.0;
    for (int j = 0; j < k; ++j) {
        d[static_cast<std::size_t>(j)] = sup_norm_diff(g1.specs[static_cast<std::size_t>(j)],
                                                       g2.specs[static_cast<std::size_t>(j)], tau,
                                                       options.report_distance)
                                             .d;
        d_hat = std::max(d_hat, d[static_cast<std::size_t>(j)]);
    }

    ConstrainedFitResult out;
    out.model1.horizon = tau;
    out.model2.horizon = tau;
    out.model1.transitions = g1.specs;
    out.model2.transitions = g2.specs;

    bool all_feasible = true;
    if (d_hat < delta) {
        // pick the transition whose move to the margin costs the least
        // likelihood; ties go to the largest unconstrained pair distance
        int best_j = -1;
        PairMargin best_margin;
        double best_total = kNegInf;
        for (int j = 0; j < k; ++j) {
            PairProblem prob{families[static_cast<std::size_t>(j)],
                             &g1.data.transitions[static_cast<std::size_t>(j)],
                             &g2.data.transitions[static_cast<std::size_t>(j)],
                             tau, delta, &options};
            PairMargin m = solve_margin_for_transition(prob, g1, g2, j, d[static_cast<std::size_t>(j)]);
            double total = m.block_sum;
            for (int mj = 0; mj < k; ++mj) {
                if (mj == j) continue;
                total += g1.blocks[static_cast<std::size_t>(mj)] + g2.blocks[static_cast<std::size_t>(mj)];
            }
            bool better = best_j < 0;
            if (!better && m.feasible != best_margin.feasible) better = m.feasible;
            else if (!better && total != best_total) better = total > best_total;
            else if (!better) better = d[static_cast<std::size_t>(j)] > d[static_cast<std::size_t>(best_j)];
            if (better) {
                best_j = j;
                best_margin = m;
                best_total = total;
            }
        }
        out.model1.transitions[static_cast<std::size_t>(best_j)] = best_margin.spec1;
        out.model2.transitions[static_cast<std::size_t>(best_j)] = best_margin.spec2;
        out.active_transition = best_j + 1;
        all_feasible = best_margin.feasible;
    } else {
        // every pair beyond the margin gets pulled onto it
        for (int j = 0; j < k; ++j) {
            if (!(d[static_cast<std::size_t>(j)] > delta)) continue;
            PairProblem prob{families[static_cast<std::size_t>(j)],
                             &g1.data.transitions[static_cast<std::size_t>(j)],
                             &g2.data.transitions[static_cast<std::size_t>(j)],
                             tau, delta, &options};
            PairMargin m = solve_margin_for_transition(prob, g1, g2, j, d[static_cast<std::size_t>(j)]);
            out.model1.transitions[static_cast<std::size_t>(j)] = m.spec1;
            out.model2.transitions[static_cast<std::size_t>(j)] = m.spec2;
            out.active_transition = j + 1;
            all_feasible = all_feasible && m.feasible;
        }
    }

    double joint = 0.0;
    for (int j = 0; j < k; ++j) {
        joint += transition_block_loglik(out.model1.transitions[static_cast<std::size_t>(j)],
                                         g1.data.transitions[static_cast<std::size_t>(j)]);
        joint += transition_block_loglik(out.model2.transitions[static_cast<std::size_t>(j)],
                                         g2.data.transitions[static_cast<std::size_t>(j)]);
    }
    out.joint_log_lik = joint;
    out.achieved_distance = global_distance(out.model1, out.model2, options.report_distance).d_hat;
    out.constraint_residual = std::fabs(out.achieved_distance - delta);
    out.converged = all_feasible && out.constraint_residual <= options.constraint_tol;
    return out;
}

ConstrainedFitResult fit_constrained_single(const Sample& s1, const Sample& s2,
                                            const std::vector<Family>& families, double delta,
                                            const CensoringModel& censoring, int transition,
                                            const ConstrainedOptions& options) {
    if (!(delta > 0.0)) throw std::invalid_argument("fit_constrained_single: delta must be > 0");
    if (transition < 1 || transition > s1.k)
        throw std::invalid_argument("fit_constrained_single: transition index out of range");
    censoring.validate();

    const double tau = censoring.tau;
    GroupFits g1 = fit_group(s1, families, options.fit);
    GroupFits g2 = fit_group(s2, families, options.fit);

    const std::size_t idx = static_cast<std::size_t>(transition - 1);
    double d_j = sup_norm_diff(g1.specs[idx], g2.specs[idx], tau, options.report_distance).d;

    ConstrainedFitResult out;
    out.model1.horizon = tau;
    out.model2.horizon = tau;
    out.model1.transitions = g1.specs;
    out.model2.transitions = g2.specs;
    out.active_transition = transition;

    PairProblem prob{families[idx], &g1.data.transitions[idx], &g2.data.transitions[idx],
                     tau, delta, &options};
    PairMargin m = solve_margin_for_transition(prob, g1, g2, transition - 1, d_j);
    out.model1.transitions[idx] = m.spec1;
    out.model2.transitions[idx] = m.spec2;

    double joint = 0.0;
    for (int j = 0; j < s1.k; ++j) {
        joint += transition_block_loglik(out.model1.transitions[static_cast<std::size_t>(j)],
                                         g1.data.transitions[static_cast<std::size_t>(j)]);
        joint += transition_block_loglik(out.model2.transitions[static_cast<std::size_t>(j)],
                                         g2.data.transitions[static_cast<std::size_t>(j)]);
    }
    out.joint_log_lik = joint;
    out.achieved_distance =
        sup_norm_diff(out.model1.transitions[idx], out.model2.transitions[idx], tau,
                      options.report_distance)
            .d;
    out.constraint_residual = std::fabs(out.achieved_distance - delta);
    out.converged = m.feasible && out.constraint_residual <= options.constraint_tol;
    return out;
}

std::pair<CompetingRisksModel, CompetingRisksModel> select_bootstrap_params(
    double d_hat, double delta,
    const std::pair<CompetingRisksModel, CompetingRisksModel>& unconstrained,
    const std::pair<CompetingRisksModel, CompetingRisksModel>& constrained) {
    return d_hat >= delta ? unconstrained : constrained;
}

}  // namespace criskeq
