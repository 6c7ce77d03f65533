#pragma once

#include <stdexcept>
#include <string>

namespace fcm {

// Base class for all model-level failures.
struct ModelError : std::runtime_error {
    explicit ModelError(const std::string& msg) : std::runtime_error(msg) {}
};

// Parameter set fails an admissibility requirement.
struct ValidationError : ModelError {
    explicit ValidationError(const std::string& msg) : ModelError(msg) {}
};

// Config file could not be parsed at all.
struct ParseError : ModelError {
    explicit ParseError(const std::string& msg) : ModelError(msg) {}
};

// The 3x3 driving-noise correlation matrix is singular; the exact sampler
// does not handle this case and refuses to run.
struct RankDeficientCorrelation : ModelError {
    explicit RankDeficientCorrelation(const std::string& msg) : ModelError(msg) {}
};

// The 6x6 leading block of the unit-volatility covariance failed to
// factorize. This signals pathological parameters, not a conditioning
// nuisance, so no jitter is applied.
struct CholeskyFailure : ModelError {
    explicit CholeskyFailure(const std::string& msg) : ModelError(msg) {}
};

// Asymptotic-rate formulas require positive mean reversion for every
// stochastic factor.
struct NonStationary : ModelError {
    explicit NonStationary(const std::string& msg) : ModelError(msg) {}
};

// Long-maturity yield limit requires a != 0.
struct AsymptoteUndefined : ModelError {
    explicit AsymptoteUndefined(const std::string& msg) : ModelError(msg) {}
};

// A requested factor exposure has no carrier asset (zero divisor).
struct UnattainableFactor : ModelError {
    explicit UnattainableFactor(const std::string& msg) : ModelError(msg) {}
};

// Portfolio volatility vanishes where a formula divides by it.
struct ZeroVolPortfolio : ModelError {
    explicit ZeroVolPortfolio(const std::string& msg) : ModelError(msg) {}
};

}  // namespace fcm
