#pragma once

#include <array>
#include <cstdint>
#include <utility>

namespace fcm {

// Correlations between the driving Brownian motions W^r, W^S and W^pi.
// The fourth source (unexpected inflation, W^I) is independent of the rest.
struct CorrTriple {
    double rho_rS = 0.0;
    double rho_rPi = 0.0;
    double rho_SPi = 0.0;
};

// 1 - x^2 - y^2 - z^2 + 2xyz, the determinant of the 3x3 correlation
// matrix with off-diagonals x, y, z.
double determinant3(double x, double y, double z);

// True iff the assembled 3x3 matrix is positive-semidefinite. Boundary
// (singular) matrices are valid model inputs, hence the small tolerance.
bool is_valid_corr(const CorrTriple& c);

// Admissible range of the third correlation given the other two:
// [xy - sqrt((1-x^2)(1-y^2)), xy + sqrt((1-x^2)(1-y^2))].
std::pair<double, double> z_interval(double x, double y);

// Monte-Carlo estimate of the fraction of uniform triples in [-1,1]^3 that
// form a valid correlation matrix. Converges to pi^2/16.
double psd_volume_fraction(std::size_t n_samples, std::uint64_t seed);

// 4x4 correlation matrix over risk sources ordered (S, r, pi, I),
// row-major. The fourth source is uncorrelated with the others.
std::array<double, 16> corr_matrix4(const CorrTriple& c);

}  // namespace fcm
