#include "fcm/params.hpp"

#include <cmath>
#include <string>

#include "fcm/errors.hpp"

namespace fcm {
namespace {

void require_finite(double v, const char* name) {
    if (!std::isfinite(v)) {
        throw ValidationError(std::string(name) + " is not finite");
    }
}

void require_nonneg(double v, const char* name) {
    require_finite(v, name);
    if (v < 0.0) {
        throw ValidationError(std::string(name) + " must be >= 0");
    }
}

}  // namespace

void ModelParams::validate() const {
    require_finite(kappa, "kappa");
    require_finite(r_bar, "r_bar");
    require_nonneg(sigma_r, "sigma_r");
    require_finite(alpha, "alpha");
    require_finite(x_bar, "x_bar");
    require_nonneg(sigma_x, "sigma_x");
    require_finite(beta, "beta");
    require_finite(pi_bar, "pi_bar");
    require_nonneg(sigma_pi, "sigma_pi");
    require_nonneg(sigma_S, "sigma_S");
    require_nonneg(sigma_I, "sigma_I");
    if (!is_valid_corr(corr)) {
        const auto iv = z_interval(corr.rho_rS, corr.rho_rPi);
        throw ValidationError(
            "correlation triple is not positive-semidefinite: determinant " +
            std::to_string(determinant3(corr.rho_rS, corr.rho_rPi, corr.rho_SPi)) +
            " < 0; admissible rho_SPi interval is [" + std::to_string(iv.first) +
            ", " + std::to_string(iv.second) + "]");
    }
}

void PricingParams::validate() const {
    require_finite(a, "a");
    require_finite(b, "b");
    require_finite(h, "h");
    require_finite(k, "k");
    require_finite(l, "l");
}

void State::validate() const {
    require_finite(r, "r");
    require_finite(S, "S");
    require_finite(x, "x");
    require_finite(I, "I");
    require_finite(pi, "pi");
    if (S <= 0.0) throw ValidationError("S must be > 0");
    if (I <= 0.0) throw ValidationError("I must be > 0");
}

}  // namespace fcm
