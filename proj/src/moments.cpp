#include "fcm/moments.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fcm/auxfn.hpp"

namespace fcm {
namespace {

// Lower triangle of the unit-volatility covariance C(t); sigma_r, sigma_x
// and sigma_pi are set to one, correlations retained.
Mat7 unit_covariance(const ModelParams& p, double t) {
    const double kappa = p.kappa, alpha = p.alpha, beta = p.beta;
    const double rS = p.corr.rho_rS, rPi = p.corr.rho_rPi, SPi = p.corr.rho_SPi;

    Mat7 c = Mat7::Zero();
    c(0, 0) = psi(2.0 * kappa, t);
    c(1, 0) = gamma_fn(kappa, kappa, t);
    c(1, 1) = upsilon(kappa, t);
    c(2, 0) = -rS * psi(kappa + alpha, t);
    c(2, 1) = -rS * gamma_fn(kappa, alpha, t);
    c(2, 2) = psi(2.0 * alpha, t);
    c(3, 0) = -rS * gamma_fn(alpha, kappa, t);
    c(3, 1) = -rS * lambda_fn(kappa, alpha, t);
    c(3, 2) = gamma_fn(alpha, alpha, t);
    c(3, 3) = upsilon(alpha, t);
    c(4, 0) = rPi * psi(kappa + beta, t);
    c(4, 1) = rPi * gamma_fn(kappa, beta, t);
    c(4, 2) = -SPi * psi(alpha + beta, t);
    c(4, 3) = -SPi * gamma_fn(alpha, beta, t);
    c(4, 4) = psi(2.0 * beta, t);
    c(5, 0) = rPi * gamma_fn(beta, kappa, t);
    c(5, 1) = rPi * lambda_fn(kappa, beta, t);
    c(5, 2) = -SPi * gamma_fn(beta, alpha, t);
    c(5, 3) = -SPi * lambda_fn(alpha, beta, t);
    c(5, 4) = gamma_fn(beta, beta, t);
    c(5, 5) = upsilon(beta, t);
    c(6, 0) = rS * psi(kappa, t);
    c(6, 1) = rS * theta(kappa, t);
    c(6, 2) = -psi(alpha, t);
    c(6, 3) = -theta(alpha, t);
    c(6, 4) = SPi * psi(beta, t);
    c(6, 5) = SPi * theta(beta, t);
    c(6, 6) = t;

    c.triangularView<Eigen::StrictlyUpper>() = c.transpose();
    return c;
}

}  // namespace

Vec7 mean_vector(const ModelParams& p, const State& s0, double t) {
    if (!(t >= 0.0) || !std::isfinite(t)) {
        throw std::invalid_argument("mean_vector: t must be >= 0 and finite");
    }
    Vec7 m;
    m(0) = p.r_bar + std::exp(-p.kappa * t) * (s0.r - p.r_bar);
    m(1) = t * p.r_bar + psi(p.kappa, t) * (s0.r - p.r_bar);
    m(2) = p.x_bar + std::exp(-p.alpha * t) * (s0.x - p.x_bar);
    m(3) = t * p.x_bar + psi(p.alpha, t) * (s0.x - p.x_bar);
    m(4) = p.pi_bar + std::exp(-p.beta * t) * (s0.pi - p.pi_bar);
    m(5) = t * p.pi_bar + psi(p.beta, t) * (s0.pi - p.pi_bar);
    m(6) = 0.0;
    return m;
}

MomentSet cov_matrix(const ModelParams& p, const State& s0, double t) {
    if (!(t >= 0.0) || !std::isfinite(t)) {
        throw std::invalid_argument("cov_matrix: t must be >= 0 and finite");
    }
    MomentSet ms;
    ms.t = t;
    ms.mean = mean_vector(p, s0, t);
    ms.scale << p.sigma_r, p.sigma_r, p.sigma_x, p.sigma_x, p.sigma_pi,
        p.sigma_pi, 1.0;
    ms.unit_cov = unit_covariance(p, t);
    // outer-product form keeps the scaled matrix exactly symmetric
    ms.cov = (ms.scale * ms.scale.transpose()).cwiseProduct(ms.unit_cov);
    return ms;
}

MomentSet cov_matrix(const ModelParams& p, double t) {
    return cov_matrix(p, State{0.0, 1.0, 0.0, 1.0, 0.0}, t);
}

double rank_relation_residual(const MomentSet& m, const ModelParams& p) {
    double worst = 0.0;
    for (int j = 0; j < 7; ++j) {
        const double res = p.sigma_x * m.cov(6, j) + m.cov(2, j) +
                           p.alpha * m.cov(3, j);
        worst = std::max(worst, std::fabs(res));
    }
    return worst;
}

}  // namespace fcm
