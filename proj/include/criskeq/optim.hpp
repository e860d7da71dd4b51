#pragma once

#include <functional>
#include <vector>

namespace criskeq {

struct SimplexOptions {
    double initial_step = 0.25;          // edge length of the starting simplex
    std::vector<double> initial_steps;   // optional per-coordinate override
    double diameter_tol = 1e-8;          // stop when the simplex diameter falls below this
    int max_iterations = 20000;
};

struct SimplexResult {
    std::vector<double> x;
    double value = 0.0;
    int iterations = 0;
    int evaluations = 0;
    bool converged = false;
};

// Nelder-Mead downhill simplex, minimizing f. Handles +inf objective values
// (infeasible points sort worst). Works in any dimension >= 1.
SimplexResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                          const std::vector<double>& start,
                          const SimplexOptions& options = {});

// Golden-section minimization of a unimodal f on [a, b]; returns the argmin.
double golden_section(const std::function<double(double)>& f, double a, double b,
                      double tol);

// Smallest t in [0, hi] with g(t) >= target for nondecreasing g, located by
// bisection to absolute tolerance tol. Caller must ensure g(hi) >= target.
double bisect_nondecreasing(const std::function<double(double)>& g, double target,
                            double hi, double tol);

}  // namespace criskeq
