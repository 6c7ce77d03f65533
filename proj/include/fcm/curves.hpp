#pragma once

#include <Eigen/Dense>
#include <optional>

#include "fcm/params.hpp"

namespace fcm {

// Market prices of risk per risk source; an entry is empty when the
// corresponding volatility is zero (the price of an untraded risk is not
// fabricated).
struct MarketPricesOfRisk {
    std::optional<double> lambda_S;
    std::optional<double> lambda_r;
    std::optional<double> lambda_pi;
    std::optional<double> lambda_I;
};

// Loadings of a constant-maturity bond index on the risk sources ordered
// (S, r, pi, I). The same vector applies to the Brownian increments
// (volatility) and to the market prices of risk (excess return).
struct CmCoeffs {
    Eigen::Vector4d loadings = Eigen::Vector4d::Zero();
};

// Vasicek zero-coupon bond price over maturity delta:
// exp{-delta b - psi(a,delta)(r - b) + (sigma_r^2/2) upsilon(a,delta)}.
double zcb_price(const PricingParams& pp, const ModelParams& p, double r,
                 double delta);

// Continuously compounded zero-coupon yield, -log(price)/delta; delta > 0.
double zcb_yield(const PricingParams& pp, const ModelParams& p, double r,
                 double delta);

// Common long-maturity limit of all yield curves: b - sigma_r^2 / (2 a^2).
// Throws AsymptoteUndefined when a == 0.
double yield_asymptote(const PricingParams& pp, const ModelParams& p);

// Instantaneous forward rate: b + e^{-a delta}(r - b) -
// (sigma_r^2/2) psi^2(a,delta).
double forward_rate(const PricingParams& pp, const ModelParams& p, double r,
                    double delta);

MarketPricesOfRisk market_prices_of_risk(const PricingParams& pp,
                                         const ModelParams& p,
                                         const State& s);

// Price of a bond paying the inflation index I_T at maturity.
double inflation_bond_price(const PricingParams& pp, const ModelParams& p,
                            const State& s, double delta);

// Break-even inflation over maturity delta; returns pi - h at delta = 0
// (the analytic limit).
double bei(const PricingParams& pp, const ModelParams& p, double pi,
           double delta);

// Constant-maturity nominal bond index: loading -psi(a,tau) sigma_r on W^r.
CmCoeffs cm_nominal_coeffs(const PricingParams& pp, const ModelParams& p,
                           double tau);

// Constant-maturity inflation bond index: loadings
// (-psi(a,tau) sigma_r, psi(k,tau) sigma_pi, sigma_I) on (W^r, W^pi, W^I).
CmCoeffs cm_inflation_coeffs(const PricingParams& pp, const ModelParams& p,
                             double tau);

// Annualized index volatility sqrt(L' C L) with C the 4x4 risk-source
// correlation matrix.
double cm_total_vol(const ModelParams& p, const CmCoeffs& c);

// Instantaneous excess return sum_i loading_i * lambda_i. Throws
// ValidationError if a needed market price of risk is undefined.
double cm_excess_return(const CmCoeffs& c, const MarketPricesOfRisk& mpr);

}  // namespace fcm
