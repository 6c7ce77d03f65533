#include "fcm/corr.hpp"

#include <cmath>
#include <stdexcept>

#include "fcm/errors.hpp"
#include "fcm/rng.hpp"

namespace fcm {
namespace {

constexpr double kPsdTol = 1e-12;

void check_unit_range(double v, const char* name) {
    if (!std::isfinite(v) || v < -1.0 || v > 1.0) {
        throw ValidationError(std::string("correlation ") + name +
                              " outside [-1,1]");
    }
}

}  // namespace

double determinant3(double x, double y, double z) {
    if (!std::isfinite(x) || !std::isfinite(y) || !std::isfinite(z)) {
        throw std::invalid_argument("determinant3: non-finite argument");
    }
    return 1.0 - x * x - y * y - z * z + 2.0 * x * y * z;
}

bool is_valid_corr(const CorrTriple& c) {
    check_unit_range(c.rho_rS, "rho_rS");
    check_unit_range(c.rho_rPi, "rho_rPi");
    check_unit_range(c.rho_SPi, "rho_SPi");
    // With all off-diagonals in [-1,1] the 1x1 and 2x2 principal minors are
    // automatically non-negative, so the determinant alone decides PSD.
    return determinant3(c.rho_rS, c.rho_rPi, c.rho_SPi) >= -kPsdTol;
}

std::pair<double, double> z_interval(double x, double y) {
    check_unit_range(x, "x");
    check_unit_range(y, "y");
    const double half = std::sqrt((1.0 - x * x) * (1.0 - y * y));
    return {x * y - half, x * y + half};
}

double psd_volume_fraction(std::size_t n_samples, std::uint64_t seed) {
    if (n_samples < 1) {
        throw std::invalid_argument("psd_volume_fraction: n_samples < 1");
    }
    RngStream rng(seed);
    std::size_t hits = 0;
    for (std::size_t i = 0; i < n_samples; ++i) {
        const double x = 2.0 * rng.next_uniform() - 1.0;
        const double y = 2.0 * rng.next_uniform() - 1.0;
        const double z = 2.0 * rng.next_uniform() - 1.0;
        if (determinant3(x, y, z) >= -kPsdTol) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(n_samples);
}

std::array<double, 16> corr_matrix4(const CorrTriple& c) {
    if (!is_valid_corr(c)) {
        throw ValidationError("corr_matrix4: correlation triple is not PSD");
    }
    // risk-source order (S, r, pi, I); W^I is independent of the rest
    return {1.0,       c.rho_rS,  c.rho_SPi, 0.0,
            c.rho_rS,  1.0,       c.rho_rPi, 0.0,
            c.rho_SPi, c.rho_rPi, 1.0,       0.0,
            0.0,       0.0,       0.0,       1.0};
}

}  // namespace fcm
