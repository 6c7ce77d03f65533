#pragma once

#include <cmath>

namespace fcm {

// Adaptive Simpson quadrature. Self-contained so it can serve as an
// independent reference for the closed-form integrals elsewhere in the
// library.
template <typename F>
double adaptive_simpson(F&& f, double a, double b, double tol = 1e-12,
                        int max_depth = 40) {
    struct Impl {
        const F& f;
        double step(double a, double m, double b, double fa, double fm,
                    double fb, double whole, double tol, int depth) const {
            const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
            const double flm = f(lm), frm = f(rm);
            const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
            const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
            const double delta = left + right - whole;
            if (depth <= 0 || std::fabs(delta) <= 15.0 * tol) {
                return left + right + delta / 15.0;
            }
            return step(a, lm, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
                   step(m, rm, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
        }
    };
    if (a == b) return 0.0;
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return Impl{f}.step(a, m, b, fa, fm, fb, whole, tol, max_depth);
}

}  // namespace fcm
