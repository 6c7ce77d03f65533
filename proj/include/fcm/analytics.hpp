#pragma once

#include <Eigen/Dense>
#include <utility>

#include "fcm/params.hpp"

namespace fcm {

// Risk-source ordering used by every matrix in this module: (S, r, pi, I).
// Note this differs from the 7-vector ordering of the moments module.

struct LogNormalSummary {
    double mean_log = 0.0;
    double var_log = 0.0;
    double t = 0.0;
};

// Relative weights in (stocks, nominal bond index, inflation bond index);
// cash is the residual. No sign restrictions.
struct PortfolioSpec {
    Eigen::Vector3d w = Eigen::Vector3d::Zero();
    double tau_B = 10.0;
    double tau_D = 10.0;
};

struct SharpeDistribution {
    double mean = 0.0;
    double variance = 0.0;
    double t = 0.0;
};

struct PortfolioCoeffs {
    double vol = 0.0;                 // sqrt(w' L C L' w)
    Eigen::Vector4d premium_loadings  // w' L, applied to (lambda^S, lambda^r,
        = Eigen::Vector4d::Zero();    // lambda^pi, lambda^I)
};

// Distributions of log S_t, log I_t and log(S_t / I_t).
LogNormalSummary log_stock_dist(const ModelParams& p, const State& s0,
                                double t);
LogNormalSummary log_inflation_dist(const ModelParams& p, const State& s0,
                                    double t);
LogNormalSummary log_real_stock_dist(const ModelParams& p, const State& s0,
                                     double t);

// Long-horizon volatility rates lim sqrt(Var[log .]/t) for the stock index
// in nominal and real terms. Uses the convention 0/0 = 0 for deterministic
// factors; throws NonStationary when a stochastic factor has non-positive
// mean reversion.
std::pair<double, double> asymptotic_vol_rates(const ModelParams& p);

// Asset exposure matrix L, rows (stocks, nominal bond, inflation bond),
// columns (S, r, pi, I). Interest-rate entries are negative (a long bond
// position loses when rates rise).
Eigen::Matrix<double, 3, 4> exposure_matrix(const PricingParams& pp,
                                            const ModelParams& p, double tau_B,
                                            double tau_D);

// Factor-risk matrix L~ used by factor investing; interest-rate entries are
// positive and the two inflation sources are aggregated root-sum-square.
Eigen::Matrix3d factor_matrix(const PricingParams& pp, const ModelParams& p,
                              double tau_B, double tau_D);

PortfolioCoeffs portfolio_coeffs(const PricingParams& pp, const ModelParams& p,
                                 const PortfolioSpec& spec);

// Normal distribution of the instantaneous Sharpe ratio at horizon t.
// Throws ZeroVolPortfolio when the portfolio volatility vanishes.
SharpeDistribution sharpe_distribution(const PricingParams& pp,
                                       const ModelParams& p, const State& s0,
                                       const PortfolioSpec& spec, double t);

// Relative allocation (w^S, w^B, w^D) delivering factor volatilities
// f = (f^E, f^R, f^I). Throws UnattainableFactor when a requested factor
// has no carrier asset.
Eigen::Vector3d factor_weights(const PricingParams& pp, const ModelParams& p,
                               const Eigen::Vector3d& f, double tau_B,
                               double tau_D);

// Scale weights so that the portfolio volatility equals sigma_tot.
Eigen::Vector3d scale_to_target(const PricingParams& pp, const ModelParams& p,
                                const PortfolioSpec& spec, double sigma_tot);

}  // namespace fcm
