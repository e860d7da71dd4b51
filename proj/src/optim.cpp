#include "criskeq/optim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace criskeq {

namespace {

double simplex_diameter(const std::vector<std::vector<double>>& vertices) {
    double diam = 0.0;
    for (std::size_t i = 1; i < vertices.size(); ++i) {
        for (std::size_t d = 0; d < vertices[0].size(); ++d) {
            diam = std::max(diam, std::fabs(vertices[i][d] - vertices[0][d]));
        }
    }
    return diam;
}

}  // namespace

SimplexResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                          const std::vector<double>& start,
                          const SimplexOptions& options) {
    const std::size_t dim = start.size();
    if (dim == 0) throw std::invalid_argument("nelder_mead: empty start point");

    const double alpha = 1.0, gamma = 2.0, rho = 0.5, sigma = 0.5;

    std::vector<std::vector<double>> x(dim + 1, start);
    for (std::size_t i = 0; i < dim; ++i) {
        double step = i < options.initial_steps.size() ? options.initial_steps[i] : options.initial_step;
        x[i + 1][i] += step;
    }

    std::vector<double> fx(dim + 1);
    int evals = 0;
    auto eval = [&](const std::vector<double>& p) {
        ++evals;
        double v = f(p);
        return std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
    };
    for (std::size_t i = 0; i <= dim; ++i) fx[i] = eval(x[i]);

    std::vector<std::size_t> order(dim + 1);
    int iter = 0;
    bool converged = false;

    for (; iter < options.max_iterations; ++iter) {
        for (std::size_t i = 0; i <= dim; ++i) order[i] = i;
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return fx[a] < fx[b]; });
        {
            std::vector<std::vector<double>> xs(dim + 1);
            std::vector<double> fs(dim + 1);
            for (std::size_t i = 0; i <= dim; ++i) { xs[i] = x[order[i]]; fs[i] = fx[order[i]]; }
            x.swap(xs);
            fx.swap(fs);
        }

        if (simplex_diameter(x) < options.diameter_tol) { converged = true; break; }

        std::vector<double> centroid(dim, 0.0);
        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t d = 0; d < dim; ++d) centroid[d] += x[i][d] / static_cast<double>(dim);

        auto affine = [&](double coef) {
            std::vector<double> p(dim);
            for (std::size_t d = 0; d < dim; ++d)
                p[d] = centroid[d] + coef * (x[dim][d] - centroid[d]);
            return p;
        };

        std::vector<double> xr = affine(-alpha);
        double fr = eval(xr);

        if (fr < fx[0]) {
            std::vector<double> xe = affine(-alpha * gamma);
            double fe = eval(xe);
            if (fe < fr) { x[dim] = std::move(xe); fx[dim] = fe; }
            else         { x[dim] = std::move(xr); fx[dim] = fr; }
        } else if (fr < fx[dim - 1]) {
            x[dim] = std::move(xr);
            fx[dim] = fr;
        } else {
            bool outside = fr < fx[dim];
            std::vector<double> xc = affine(outside ? -alpha * rho : rho);
            double fc = eval(xc);
            if (fc < std::min(fr, fx[dim])) {
                x[dim] = std::move(xc);
                fx[dim] = fc;
            } else {
                // shrink toward the best vertex
                for (std::size_t i = 1; i <= dim; ++i) {
                    for (std::size_t d = 0; d < dim; ++d)
                        x[i][d] = x[0][d] + sigma * (x[i][d] - x[0][d]);
                    fx[i] = eval(x[i]);
                }
            }
        }
    }

    std::size_t best = 0;
    for (std::size_t i = 1; i <= dim; ++i)
        if (fx[i] < fx[best]) best = i;

    return SimplexResult{x[best], fx[best], iter, evals, converged};
}

double golden_section(const std::function<double(double)>& f, double a, double b,
                      double tol) {
    static const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > tol) {
        if (fc < fd) {
            b = d; d = c; fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c; c = d; fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

double bisect_nondecreasing(const std::function<double(double)>& g, double target,
                            double hi, double tol) {
    double lo = 0.0;
    if (g(lo) >= target) return lo;
    while (hi - lo > tol) {
        double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;  // ran out of precision
        if (g(mid) >= target) hi = mid;
        else lo = mid;
    }
    return hi;
}

}  // namespace criskeq
