#include "fcm/auxfn.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace fcm {
namespace {

void check_args(double kappa, double t) {
    if (!std::isfinite(kappa) || !std::isfinite(t)) {
        throw std::invalid_argument("auxfn: non-finite argument");
    }
    if (t < 0.0) {
        throw std::invalid_argument("auxfn: negative time");
    }
}

// int_0^t s^n exp(-a s) ds.
double power_exp_moment(int n, double a, double t) {
    const double x = a * t;
    if (std::fabs(x) < 1.0) {
        // series: t^{n+1} sum_j (-x)^j / (j! (n+j+1))
        double term = 1.0;  // (-x)^j / j!
        double sum = 1.0 / (n + 1);
        for (int j = 1; j < 40; ++j) {
            term *= -x / j;
            const double contrib = term / (n + j + 1);
            sum += contrib;
            if (std::fabs(contrib) < 1e-17 * std::fabs(sum)) break;
        }
        return std::pow(t, n + 1) * sum;
    }
    // recursion M_n = (n M_{n-1} - t^n e^{-a t}) / a
    const double e = std::exp(-x);
    double m = psi(a, t);
    double tn = 1.0;
    for (int j = 1; j <= n; ++j) {
        tn *= t;
        m = (j * m - tn * e) / a;
    }
    return m;
}

// int_0^t s^n psi(a,s) ds.
double power_psi_moment(int n, double a, double t) {
    const double x = a * t;
    if (std::fabs(x) < 1.0) {
        // psi(a,s) = sum_j (-a)^j s^{j+1} / (j+1)!
        double term = 1.0;  // (-x)^j / (j+1)!
        double sum = term / (n + 2);
        for (int j = 1; j < 40; ++j) {
            term *= -x / (j + 1);
            const double contrib = term / (n + j + 2);
            sum += contrib;
            if (std::fabs(contrib) < 1e-17 * std::fabs(sum)) break;
        }
        return std::pow(t, n + 2) * sum;
    }
    return (std::pow(t, n + 1) / (n + 1) - power_exp_moment(n, a, t)) / a;
}

}  // namespace

double psi(double kappa, double t) {
    check_args(kappa, t);
    if (kappa == 0.0) return t;
    return -std::expm1(-kappa * t) / kappa;
}

double theta(double kappa, double t) {
    check_args(kappa, t);
    const double x = kappa * t;
    if (std::fabs(x) < 1e-2) {
        // t^2 (1/2 - x/6 + x^2/24 - x^3/120 + x^4/720 - x^5/5040)
        const double s =
            0.5 + x * (-1.0 / 6.0 +
                 x * (1.0 / 24.0 +
                 x * (-1.0 / 120.0 +
                 x * (1.0 / 720.0 + x * (-1.0 / 5040.0)))));
        return t * t * s;
    }
    // (e^{-x} - 1 + x) / kappa^2
    return (std::expm1(-x) + x) / (kappa * kappa);
}

double upsilon(double kappa, double t) {
    check_args(kappa, t);
    const double x = kappa * t;
    if (std::fabs(x) < 5e-2) {
        const double s =
            1.0 / 3.0 + x * (-0.25 +
                 x * (7.0 / 60.0 +
                 x * (-1.0 / 24.0 +
                 x * (31.0 / 2520.0 +
                 x * (-1.0 / 320.0 + x * (127.0 / 181440.0))))));
        return t * t * t * s;
    }
    // (2x - 3 + 4 e^{-x} - e^{-2x}) / (2 kappa^3)
    const double e = std::exp(-x);
    return (2.0 * x - 3.0 + 4.0 * e - e * e) / (2.0 * kappa * kappa * kappa);
}

double gamma_fn(double kappa, double alpha, double t) {
    check_args(kappa, t);
    check_args(alpha, t);
    if (t == 0.0) return 0.0;
    const double x = kappa * t;
    if (std::fabs(x) >= 1e-2) {
        return (psi(alpha, t) - psi(alpha + kappa, t)) / kappa;
    }
    // expand psi(kappa,s) = s - k s^2/2 + k^2 s^3/6 - k^3 s^4/24 + k^4 s^5/120
    double g = power_exp_moment(1, alpha, t);
    double coeff = 1.0;
    for (int n = 2; n <= 5; ++n) {
        coeff *= -kappa / n;
        g += coeff * power_exp_moment(n, alpha, t);
    }
    return g;
}

double lambda_fn(double kappa, double alpha, double t) {
    check_args(kappa, t);
    check_args(alpha, t);
    if (t == 0.0) return 0.0;
    // symmetric; put the smaller decay first
    if (std::fabs(kappa) > std::fabs(alpha)) std::swap(kappa, alpha);
    const double x = kappa * t;
    if (std::fabs(x) >= 1e-2) {
        return (psi(alpha + kappa, t) - psi(alpha, t) - psi(kappa, t) + t) /
               (alpha * kappa);
    }
    double l = power_psi_moment(1, alpha, t);
    double coeff = 1.0;
    for (int n = 2; n <= 5; ++n) {
        coeff *= -kappa / n;
        l += coeff * power_psi_moment(n, alpha, t);
    }
    return l;
}

}  // namespace fcm
