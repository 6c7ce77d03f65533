#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fcm/params.hpp"

namespace fcm {

// Fully validated run configuration loaded from a sectioned key-value file
// (see configs/cappar.toml for the documented format). Key names follow the
// model symbols: kappa, r_bar, sigma_r, rho_rS, ...
struct RunConfig {
    ModelParams model;
    PricingParams pricing;
    State initial;

    // simulation
    std::vector<double> grid_times;  // resolved from step/n_steps or times
    std::size_t n_paths = 100;
    std::uint64_t seed = 1;

    // output
    std::string out_dir = ".";
    std::string format = "csv";  // csv | json

    // curves
    double curve_max_maturity = 30.0;
    int curve_points = 60;

    // portfolio
    std::optional<Eigen::Vector3d> weights;         // w_S, w_B, w_D
    std::optional<Eigen::Vector3d> factor_targets;  // f_E, f_R, f_I
    double tau_B = 10.0;
    double tau_D = 15.0;
    std::optional<double> sigma_tot;
    double sharpe_horizon_max = 15.0;
    int sharpe_points = 30;
};

// Throws ParseError on malformed input and ValidationError (naming the
// offending key) on invalid values.
RunConfig load_config(const std::string& path);

}  // namespace fcm
