#pragma once

#include "fcm/corr.hpp"

namespace fcm {

// Real-world (P-measure) dynamics parameters. Rates per annum, volatilities
// per sqrt(annum). Zero and negative mean-reversion speeds are allowed;
// only asymptotic-rate formulas reject them.
struct ModelParams {
    // short rate: dr = kappa (r_bar - r) dt + sigma_r dW^r
    double kappa = 0.0;
    double r_bar = 0.0;
    double sigma_r = 0.0;
    // equity risk premium: dx = alpha (x_bar - x) dt - sigma_x dW^S
    double alpha = 0.0;
    double x_bar = 0.0;
    double sigma_x = 0.0;
    // expected inflation: dpi = beta (pi_bar - pi) dt + sigma_pi dW^pi
    double beta = 0.0;
    double pi_bar = 0.0;
    double sigma_pi = 0.0;
    // index volatilities
    double sigma_S = 0.0;
    double sigma_I = 0.0;

    CorrTriple corr;

    // Throws ValidationError on non-finite values, negative volatilities or
    // an inadmissible correlation triple.
    void validate() const;
};

// Market-price-of-risk / Q-measure parameters: the nominal curve is Vasicek
// with speed a and level b; inflation pricing uses speed k, level l and the
// unexpected-inflation premium scale h.
struct PricingParams {
    double a = 0.0;
    double b = 0.0;
    double h = 0.0;
    double k = 0.0;
    double l = 0.0;

    void validate() const;
};

// The five state variables at one instant.
struct State {
    double r = 0.0;
    double S = 1.0;
    double x = 0.0;
    double I = 1.0;
    double pi = 0.0;

    // Requires finite entries and S > 0, I > 0.
    void validate() const;
};

}  // namespace fcm
