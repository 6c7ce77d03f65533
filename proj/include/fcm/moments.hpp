#pragma once

#include <Eigen/Dense>

#include "fcm/params.hpp"

namespace fcm {

using Vec7 = Eigen::Matrix<double, 7, 1>;
using Mat7 = Eigen::Matrix<double, 7, 7>;

// Component ordering shared by all modules:
//   0: r_t   1: int r   2: x_t   3: int x   4: pi_t   5: int pi   6: W^S_t
//
// Conditional moments of this 7-vector over a horizon t. The covariance
// factorizes as cov = D * unit_cov * D with D = diag(sigma_r, sigma_r,
// sigma_x, sigma_x, sigma_pi, sigma_pi, 1); the sampler works on unit_cov
// so that zero volatilities do not degrade its rank. The full matrix is
// always rank-deficient: sigma_x W^S = -(x - E x) - alpha (int x - E int x)
// holds exactly, so row 6 is a linear combination of rows 2 and 3.
struct MomentSet {
    double t = 0.0;
    Vec7 mean = Vec7::Zero();
    Mat7 cov = Mat7::Zero();
    Mat7 unit_cov = Mat7::Zero();
    Vec7 scale = Vec7::Ones();  // diagonal of D
};

// Conditional mean of the 7-vector given the state s0 at horizon t.
Vec7 mean_vector(const ModelParams& p, const State& s0, double t);

// Full moment set at horizon t (covariance does not depend on the state).
// The mean is filled in relative to s0.
MomentSet cov_matrix(const ModelParams& p, const State& s0, double t);

// Covariance-only variant; mean is the conditional mean from a state with
// all entries zero.
MomentSet cov_matrix(const ModelParams& p, double t);

// Max absolute residual of the exact linear relation across all 7 columns:
//   sigma_x * cov(6,j) + cov(2,j) + alpha * cov(3,j) = 0.
double rank_relation_residual(const MomentSet& m, const ModelParams& p);

}  // namespace fcm
