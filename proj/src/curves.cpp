#include "fcm/curves.hpp"

#include <cmath>
#include <stdexcept>

#include "fcm/auxfn.hpp"
#include "fcm/errors.hpp"

namespace fcm {
namespace {

// log p_t(t + delta)
double log_zcb_price(const PricingParams& pp, const ModelParams& p, double r,
                     double delta) {
    if (!(delta >= 0.0) || !std::isfinite(delta)) {
        throw std::invalid_argument("zcb: maturity must be >= 0 and finite");
    }
    return -delta * pp.b - psi(pp.a, delta) * (r - pp.b) +
           0.5 * p.sigma_r * p.sigma_r * upsilon(pp.a, delta);
}

}  // namespace

double zcb_price(const PricingParams& pp, const ModelParams& p, double r,
                 double delta) {
    return std::exp(log_zcb_price(pp, p, r, delta));
}

double zcb_yield(const PricingParams& pp, const ModelParams& p, double r,
                 double delta) {
    if (!(delta > 0.0)) {
        throw std::invalid_argument(
            "zcb_yield: maturity must be > 0 (use the short rate at 0)");
    }
    return -log_zcb_price(pp, p, r, delta) / delta;
}

double yield_asymptote(const PricingParams& pp, const ModelParams& p) {
    if (pp.a == 0.0) {
        throw AsymptoteUndefined("yield asymptote requires a != 0");
    }
    return pp.b - p.sigma_r * p.sigma_r / (2.0 * pp.a * pp.a);
}

double forward_rate(const PricingParams& pp, const ModelParams& p, double r,
                    double delta) {
    if (!(delta >= 0.0) || !std::isfinite(delta)) {
        throw std::invalid_argument("forward_rate: maturity must be >= 0");
    }
    const double ps = psi(pp.a, delta);
    return pp.b + std::exp(-pp.a * delta) * (r - pp.b) -
           0.5 * p.sigma_r * p.sigma_r * ps * ps;
}

MarketPricesOfRisk market_prices_of_risk(const PricingParams& pp,
                                         const ModelParams& p,
                                         const State& s) {
    MarketPricesOfRisk mpr;
    if (p.sigma_S > 0.0) mpr.lambda_S = s.x / p.sigma_S;
    if (p.sigma_r > 0.0) {
        mpr.lambda_r =
            ((pp.a - p.kappa) * s.r + p.kappa * p.r_bar - pp.a * pp.b) /
            p.sigma_r;
    }
    if (p.sigma_pi > 0.0) {
        mpr.lambda_pi =
            ((pp.k - p.beta) * s.pi + p.beta * p.pi_bar - pp.k * pp.l) /
            p.sigma_pi;
    }
    if (p.sigma_I > 0.0) mpr.lambda_I = pp.h / p.sigma_I;
    return mpr;
}

double inflation_bond_price(const PricingParams& pp, const ModelParams& p,
                            const State& s, double delta) {
    if (!(delta >= 0.0) || !std::isfinite(delta)) {
        throw std::invalid_argument(
            "inflation_bond_price: maturity must be >= 0");
    }
    const double mean_x =
        (pp.l - pp.b - pp.h - 0.5 * p.sigma_I * p.sigma_I) * delta +
        psi(pp.k, delta) * (s.pi - pp.l) - psi(pp.a, delta) * (s.r - pp.b);
    const double var_x =
        p.sigma_pi * p.sigma_pi * upsilon(pp.k, delta) +
        p.sigma_r * p.sigma_r * upsilon(pp.a, delta) -
        2.0 * p.sigma_r * p.sigma_pi * p.corr.rho_rPi *
            lambda_fn(pp.a, pp.k, delta) +
        p.sigma_I * p.sigma_I * delta;
    return s.I * std::exp(mean_x + 0.5 * var_x);
}

double bei(const PricingParams& pp, const ModelParams& p, double pi,
           double delta) {
    if (!(delta >= 0.0) || !std::isfinite(delta)) {
        throw std::invalid_argument("bei: maturity must be >= 0");
    }
    if (delta == 0.0) return pi - pp.h;
    return pp.l - pp.h + psi(pp.k, delta) / delta * (pi - pp.l) +
           0.5 * p.sigma_pi * p.sigma_pi * upsilon(pp.k, delta) / delta -
           p.sigma_r * p.sigma_pi * p.corr.rho_rPi *
               lambda_fn(pp.a, pp.k, delta) / delta;
}

CmCoeffs cm_nominal_coeffs(const PricingParams& pp, const ModelParams& p,
                           double tau) {
    if (!(tau > 0.0)) {
        throw std::invalid_argument("cm_nominal_coeffs: tau must be > 0");
    }
    CmCoeffs c;
    c.loadings(1) = -psi(pp.a, tau) * p.sigma_r;
    return c;
}

CmCoeffs cm_inflation_coeffs(const PricingParams& pp, const ModelParams& p,
                             double tau) {
    if (!(tau > 0.0)) {
        throw std::invalid_argument("cm_inflation_coeffs: tau must be > 0");
    }
    CmCoeffs c;
    c.loadings(1) = -psi(pp.a, tau) * p.sigma_r;
    c.loadings(2) = psi(pp.k, tau) * p.sigma_pi;
    c.loadings(3) = p.sigma_I;
    return c;
}

double cm_total_vol(const ModelParams& p, const CmCoeffs& c) {
    const auto cm = corr_matrix4(p.corr);
    const Eigen::Map<const Eigen::Matrix<double, 4, 4, Eigen::RowMajor>> corr4(
        cm.data());
    const double var = c.loadings.dot(corr4 * c.loadings);
    return std::sqrt(std::max(0.0, var));
}

double cm_excess_return(const CmCoeffs& c, const MarketPricesOfRisk& mpr) {
    const std::optional<double> lambdas[4] = {mpr.lambda_S, mpr.lambda_r,
                                              mpr.lambda_pi, mpr.lambda_I};
    double e = 0.0;
    for (int i = 0; i < 4; ++i) {
        if (c.loadings(i) == 0.0) continue;
        if (!lambdas[i]) {
            throw ValidationError(
                "cm_excess_return: required market price of risk is undefined");
        }
        e += c.loadings(i) * *lambdas[i];
    }
    return e;
}

}  // namespace fcm
