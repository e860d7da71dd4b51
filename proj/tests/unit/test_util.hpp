#pragma once

#include <cmath>
#include <functional>

namespace testutil {

// Adaptive Simpson quadrature; the independent oracle for cumulative hazards.
inline double simpson_slice(const std::function<double(double)>& f, double a, double fa,
                            double b, double fb, double fm, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::fabs(left + right - whole) <= 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return simpson_slice(f, a, fa, m, fm, flm, left, tol / 2.0, depth - 1) +
           simpson_slice(f, m, fm, b, fb, frm, right, tol / 2.0, depth - 1);
}

inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-12) {
    if (b <= a) return 0.0;
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson_slice(f, a, fa, b, fb, fm, whole, tol, 48);
}

}  // namespace testutil
