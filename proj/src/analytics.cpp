#include "fcm/analytics.hpp"

#include <cmath>
#include <stdexcept>

#include "fcm/auxfn.hpp"
#include "fcm/curves.hpp"
#include "fcm/errors.hpp"

namespace fcm {
namespace {

void check_horizon(double t) {
    if (!(t >= 0.0) || !std::isfinite(t)) {
        throw std::invalid_argument("analytics: horizon must be >= 0");
    }
}

// 2 [sigma_r sigma_S rho_rS Theta(kappa) - sigma_r sigma_x rho_rS
//    Lambda(kappa,alpha) - sigma_x sigma_S Theta(alpha)]
double stock_cross_terms(const ModelParams& p, double t) {
    return 2.0 * (p.sigma_r * p.sigma_S * p.corr.rho_rS * theta(p.kappa, t) -
                  p.sigma_r * p.sigma_x * p.corr.rho_rS *
                      lambda_fn(p.kappa, p.alpha, t) -
                  p.sigma_x * p.sigma_S * theta(p.alpha, t));
}

Eigen::Matrix4d corr4(const ModelParams& p) {
    const auto cm = corr_matrix4(p.corr);
    return Eigen::Map<const Eigen::Matrix<double, 4, 4, Eigen::RowMajor>>(
        cm.data());
}

// E[lambda_t] over (S, r, pi, I); only entries with nonzero mask are
// evaluated (the others may have zero volatility).
Eigen::Vector4d expected_lambda(const PricingParams& pp, const ModelParams& p,
                                const State& s0, double t,
                                const Eigen::Vector4d& mask) {
    Eigen::Vector4d el = Eigen::Vector4d::Zero();
    if (mask(0) != 0.0) {
        el(0) = (p.x_bar + std::exp(-p.alpha * t) * (s0.x - p.x_bar)) /
                p.sigma_S;
    }
    if (mask(1) != 0.0) {
        el(1) = (pp.a * (p.r_bar - pp.b) +
                 std::exp(-p.kappa * t) * (pp.a - p.kappa) * (s0.r - p.r_bar)) /
                p.sigma_r;
    }
    if (mask(2) != 0.0) {
        el(2) = (pp.k * (p.pi_bar - pp.l) +
                 std::exp(-p.beta * t) * (pp.k - p.beta) * (s0.pi - p.pi_bar)) /
                p.sigma_pi;
    }
    if (mask(3) != 0.0) {
        el(3) = pp.h / p.sigma_I;
    }
    return el;
}

// Fluctuation loadings of (lambda^S, lambda^r, lambda^pi) on the
// unit-volatility deviations of (x, r, pi), scaled through the assets.
Eigen::Matrix3d fluctuation_matrix(const PricingParams& pp,
                                   const ModelParams& p, double tau_B,
                                   double tau_D) {
    Eigen::Matrix3d m = Eigen::Matrix3d::Zero();
    m(0, 0) = p.sigma_x;
    m(1, 1) = -psi(pp.a, tau_B) * (pp.a - p.kappa) * p.sigma_r;
    m(2, 1) = -psi(pp.a, tau_D) * (pp.a - p.kappa) * p.sigma_r;
    m(2, 2) = psi(pp.k, tau_D) * (pp.k - p.beta) * p.sigma_pi;
    return m;
}

// Covariance of the unit-volatility OU deviations, ordered (x, r, pi).
Eigen::Matrix3d deviation_cov(const ModelParams& p, double t) {
    const double rS = p.corr.rho_rS, rPi = p.corr.rho_rPi,
                 SPi = p.corr.rho_SPi;
    Eigen::Matrix3d v;
    v(0, 0) = psi(2.0 * p.alpha, t);
    v(0, 1) = -rS * psi(p.kappa + p.alpha, t);
    v(0, 2) = -SPi * psi(p.alpha + p.beta, t);
    v(1, 0) = v(0, 1);
    v(1, 1) = psi(2.0 * p.kappa, t);
    v(1, 2) = rPi * psi(p.kappa + p.beta, t);
    v(2, 0) = v(0, 2);
    v(2, 1) = v(1, 2);
    v(2, 2) = psi(2.0 * p.beta, t);
    return v;
}

// Stationary rate sigma / speed with the 0/0 := 0 convention.
double stationary_rate(double sigma, double speed, const char* name) {
    if (sigma == 0.0) return 0.0;
    if (speed <= 0.0) {
        throw NonStationary(std::string("asymptotic rates require positive "
                                        "mean reversion for ") +
                            name);
    }
    return sigma / speed;
}

}  // namespace

LogNormalSummary log_stock_dist(const ModelParams& p, const State& s0,
                                double t) {
    check_horizon(t);
    LogNormalSummary d;
    d.t = t;
    d.mean_log = std::log(s0.S) +
                 (p.r_bar + p.x_bar - 0.5 * p.sigma_S * p.sigma_S) * t +
                 psi(p.kappa, t) * (s0.r - p.r_bar) +
                 psi(p.alpha, t) * (s0.x - p.x_bar);
    d.var_log = p.sigma_r * p.sigma_r * upsilon(p.kappa, t) +
                p.sigma_x * p.sigma_x * upsilon(p.alpha, t) +
                p.sigma_S * p.sigma_S * t + stock_cross_terms(p, t);
    return d;
}

LogNormalSummary log_inflation_dist(const ModelParams& p, const State& s0,
                                    double t) {
    check_horizon(t);
    LogNormalSummary d;
    d.t = t;
    d.mean_log = std::log(s0.I) +
                 (p.pi_bar - 0.5 * p.sigma_I * p.sigma_I) * t +
                 psi(p.beta, t) * (s0.pi - p.pi_bar);
    d.var_log = p.sigma_pi * p.sigma_pi * upsilon(p.beta, t) +
                p.sigma_I * p.sigma_I * t;
    return d;
}

LogNormalSummary log_real_stock_dist(const ModelParams& p, const State& s0,
                                     double t) {
    check_horizon(t);
    LogNormalSummary d;
    d.t = t;
    d.mean_log = std::log(s0.S / s0.I) +
                 (p.r_bar + p.x_bar - p.pi_bar +
                  0.5 * p.sigma_I * p.sigma_I - 0.5 * p.sigma_S * p.sigma_S) *
                     t +
                 psi(p.kappa, t) * (s0.r - p.r_bar) +
                 psi(p.alpha, t) * (s0.x - p.x_bar) -
                 psi(p.beta, t) * (s0.pi - p.pi_bar);
    d.var_log = p.sigma_r * p.sigma_r * upsilon(p.kappa, t) +
                p.sigma_x * p.sigma_x * upsilon(p.alpha, t) +
                p.sigma_pi * p.sigma_pi * upsilon(p.beta, t) +
                p.sigma_S * p.sigma_S * t + p.sigma_I * p.sigma_I * t +
                stock_cross_terms(p, t) -
                2.0 * (p.sigma_S * p.sigma_pi * p.corr.rho_SPi *
                           theta(p.beta, t) -
                       p.sigma_x * p.sigma_pi * p.corr.rho_SPi *
                           lambda_fn(p.alpha, p.beta, t) +
                       p.sigma_r * p.sigma_pi * p.corr.rho_rPi *
                           lambda_fn(p.kappa, p.beta, t));
    return d;
}

std::pair<double, double> asymptotic_vol_rates(const ModelParams& p) {
    const double qr = stationary_rate(p.sigma_r, p.kappa, "r");
    const double qx = stationary_rate(p.sigma_x, p.alpha, "x");
    const double qpi = stationary_rate(p.sigma_pi, p.beta, "pi");
    const double rS = p.corr.rho_rS, rPi = p.corr.rho_rPi,
                 SPi = p.corr.rho_SPi;

    const double nominal_var =
        qr * qr + qx * qx + p.sigma_S * p.sigma_S +
        2.0 * (qr * p.sigma_S * rS - qr * qx * rS - qx * p.sigma_S);
    const double real_var =
        nominal_var + qpi * qpi + p.sigma_I * p.sigma_I -
        2.0 * (p.sigma_S * qpi * SPi - qx * qpi * SPi + qr * qpi * rPi);
    return {std::sqrt(std::max(0.0, nominal_var)),
            std::sqrt(std::max(0.0, real_var))};
}

Eigen::Matrix<double, 3, 4> exposure_matrix(const PricingParams& pp,
                                            const ModelParams& p, double tau_B,
                                            double tau_D) {
    if (!(tau_B > 0.0) || !(tau_D > 0.0)) {
        throw std::invalid_argument("exposure_matrix: maturities must be > 0");
    }
    Eigen::Matrix<double, 3, 4> l = Eigen::Matrix<double, 3, 4>::Zero();
    l(0, 0) = p.sigma_S;
    l(1, 1) = -psi(pp.a, tau_B) * p.sigma_r;
    l(2, 1) = -psi(pp.a, tau_D) * p.sigma_r;
    l(2, 2) = psi(pp.k, tau_D) * p.sigma_pi;
    l(2, 3) = p.sigma_I;
    return l;
}

Eigen::Matrix3d factor_matrix(const PricingParams& pp, const ModelParams& p,
                              double tau_B, double tau_D) {
    if (!(tau_B > 0.0) || !(tau_D > 0.0)) {
        throw std::invalid_argument("factor_matrix: maturities must be > 0");
    }
    const double psi_k = psi(pp.k, tau_D);
    Eigen::Matrix3d lt = Eigen::Matrix3d::Zero();
    lt(0, 0) = p.sigma_S;
    lt(1, 1) = psi(pp.a, tau_B) * p.sigma_r;
    lt(2, 1) = psi(pp.a, tau_D) * p.sigma_r;
    lt(2, 2) = std::sqrt(psi_k * psi_k * p.sigma_pi * p.sigma_pi +
                         p.sigma_I * p.sigma_I);
    return lt;
}

PortfolioCoeffs portfolio_coeffs(const PricingParams& pp, const ModelParams& p,
                                 const PortfolioSpec& spec) {
    const auto l = exposure_matrix(pp, p, spec.tau_B, spec.tau_D);
    PortfolioCoeffs c;
    c.premium_loadings = l.transpose() * spec.w;
    const double var = c.premium_loadings.dot(corr4(p) * c.premium_loadings);
    c.vol = std::sqrt(std::max(0.0, var));
    return c;
}

SharpeDistribution sharpe_distribution(const PricingParams& pp,
                                       const ModelParams& p, const State& s0,
                                       const PortfolioSpec& spec, double t) {
    check_horizon(t);
    const auto coeffs = portfolio_coeffs(pp, p, spec);
    const double denom_var = coeffs.vol * coeffs.vol;
    if (!(denom_var > 0.0)) {
        throw ZeroVolPortfolio("sharpe_distribution: portfolio has zero "
                               "volatility");
    }

    const Eigen::Vector4d el =
        expected_lambda(pp, p, s0, t, coeffs.premium_loadings);
    const Eigen::Matrix3d m = fluctuation_matrix(pp, p, spec.tau_B, spec.tau_D);
    const Eigen::Matrix3d v = deviation_cov(p, t);

    // cross-check: L Var[lambda] L' must equal M V M' whenever Var[lambda]
    // itself is well defined (all three state volatilities positive)
    if (p.sigma_S > 0.0 && p.sigma_r > 0.0 && p.sigma_pi > 0.0) {
        const auto l = exposure_matrix(pp, p, spec.tau_B, spec.tau_D);
        Eigen::Matrix4d var_lambda = Eigen::Matrix4d::Zero();
        const Eigen::Vector3d dv(p.sigma_x / p.sigma_S, pp.a - p.kappa,
                                 pp.k - p.beta);
        var_lambda.topLeftCorner<3, 3>() =
            dv.asDiagonal() * v * dv.asDiagonal();
        const Eigen::Matrix3d lhs = l * var_lambda * l.transpose();
        const Eigen::Matrix3d rhs = m * v * m.transpose();
        const double scale = 1.0 + rhs.cwiseAbs().maxCoeff();
        if (((lhs - rhs).cwiseAbs().maxCoeff()) > 1e-10 * scale) {
            throw std::logic_error(
                "sharpe_distribution: variance factorizations disagree");
        }
    }

    SharpeDistribution d;
    d.t = t;
    d.mean = coeffs.premium_loadings.dot(el) / coeffs.vol;
    const Eigen::Vector3d wm = m.transpose() * spec.w;
    d.variance = std::max(0.0, wm.dot(v * wm)) / denom_var;
    return d;
}

Eigen::Vector3d factor_weights(const PricingParams& pp, const ModelParams& p,
                               const Eigen::Vector3d& f, double tau_B,
                               double tau_D) {
    const Eigen::Matrix3d lt = factor_matrix(pp, p, tau_B, tau_D);
    const double equity_carrier = lt(0, 0);
    const double rate_carrier = lt(1, 1);
    const double infl_carrier = lt(2, 2);

    Eigen::Vector3d w = Eigen::Vector3d::Zero();
    if (f(0) != 0.0) {
        if (equity_carrier == 0.0) {
            throw UnattainableFactor("equity factor has no carrier (sigma_S = 0)");
        }
        w(0) = f(0) / equity_carrier;
    }
    if (f(2) != 0.0) {
        if (infl_carrier == 0.0) {
            throw UnattainableFactor(
                "inflation factor has no carrier (sigma_pi = sigma_I = 0)");
        }
        w(2) = f(2) / infl_carrier;
    }
    // the inflation bond also carries rate risk lt(2,1); the nominal bond
    // compensates so that the net rate exposure equals f^R
    const double rate_needed = f(1) - w(2) * lt(2, 1);
    if (rate_needed != 0.0) {
        if (rate_carrier == 0.0) {
            throw UnattainableFactor(
                "interest-rate factor has no carrier (psi(a,tau_B) sigma_r = 0)");
        }
        w(1) = rate_needed / rate_carrier;
    }
    return w;
}

Eigen::Vector3d scale_to_target(const PricingParams& pp, const ModelParams& p,
                                const PortfolioSpec& spec, double sigma_tot) {
    if (!(sigma_tot >= 0.0) || !std::isfinite(sigma_tot)) {
        throw std::invalid_argument("scale_to_target: invalid sigma_tot");
    }
    const auto coeffs = portfolio_coeffs(pp, p, spec);
    if (!(coeffs.vol > 0.0)) {
        throw ZeroVolPortfolio("scale_to_target: portfolio has zero volatility");
    }
    return spec.w * (sigma_tot / coeffs.vol);
}

}  // namespace fcm
