#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <random>

#include "fcm/analytics.hpp"
#include "fcm/auxfn.hpp"
#include "fcm/config.hpp"
#include "fcm/curves.hpp"
#include "fcm/errors.hpp"
#include "fcm/io.hpp"
#include "fcm/moments.hpp"
#include "fcm/quadrature.hpp"
#include "fcm/sim.hpp"

namespace {

namespace fs = std::filesystem;

std::ofstream open_output(const fcm::RunConfig& cfg, const std::string& name) {
    fs::create_directories(cfg.out_dir);
    const fs::path p = fs::path(cfg.out_dir) / name;
    std::ofstream os(p, std::ios::binary);
    if (!os) throw fcm::ModelError("cannot open output file: " + p.string());
    std::cout << p.string() << "\n";
    return os;
}

int cmd_validate(const fcm::RunConfig& cfg) {
    // load_config already validated everything; report the key derived
    // quantities so the config can be eyeballed.
    const double det = fcm::determinant3(cfg.model.corr.rho_rS,
                                         cfg.model.corr.rho_rPi,
                                         cfg.model.corr.rho_SPi);
    std::cout << "ok: correlation determinant = " << fcm::format_double(det)
              << ", grid points = " << cfg.grid_times.size()
              << ", n_paths = " << cfg.n_paths << "\n";
    return 0;
}

int cmd_simulate(const fcm::RunConfig& cfg) {
    const fcm::ScenarioSet s =
        fcm::simulate(cfg.model, cfg.initial, fcm::TimeGrid{cfg.grid_times},
                      cfg.n_paths, cfg.seed);
    if (cfg.format == "json") {
        // manifest + CSV payload: the bulk data stays columnar.
        auto os = open_output(cfg, "scenarios.csv");
        fcm::write_scenarios_csv(os, s);
        auto ms = open_output(cfg, "scenarios.json");
        ms << "{\n  \"seed\": " << s.seed
           << ",\n  \"n_paths\": " << s.paths.size() << ",\n  \"times\": [";
        for (std::size_t j = 0; j < s.grid.t_points.size(); ++j) {
            if (j) ms << ", ";
            ms << fcm::format_double(s.grid.t_points[j]);
        }
        ms << "],\n  \"payload\": \"scenarios.csv\"\n}\n";
    } else {
        auto os = open_output(cfg, "scenarios.csv");
        fcm::write_scenarios_csv(os, s);
    }
    return 0;
}

int cmd_moments(const fcm::RunConfig& cfg) {
    const double t = cfg.grid_times.back();
    const fcm::MomentSet m = fcm::cov_matrix(cfg.model, cfg.initial, t);
    auto os = open_output(cfg, "moments.json");
    os << fcm::moments_json(m);
    return 0;
}

int cmd_curves(const fcm::RunConfig& cfg) {
    std::vector<fcm::CurvePoint> pts;
    for (int i = 1; i <= cfg.curve_points; ++i) {
        const double tau = cfg.curve_max_maturity * i / cfg.curve_points;
        fcm::CurvePoint p;
        p.maturity = tau;
        p.yield = fcm::zcb_yield(cfg.pricing, cfg.model, cfg.initial.r, tau);
        p.forward =
            fcm::forward_rate(cfg.pricing, cfg.model, cfg.initial.r, tau);
        p.bei = fcm::bei(cfg.pricing, cfg.model, cfg.initial.pi, tau);
        pts.push_back(p);
    }
    auto os = open_output(cfg, "curves.csv");
    fcm::write_curves_csv(os, pts);
    return 0;
}

int cmd_bei(const fcm::RunConfig& cfg) {
    auto os = open_output(cfg, "bei.csv");
    os << "maturity,bei\n";
    for (int i = 0; i <= cfg.curve_points; ++i) {
        const double tau = cfg.curve_max_maturity * i / cfg.curve_points;
        os << fcm::format_double(tau) << ','
           << fcm::format_double(
                  fcm::bei(cfg.pricing, cfg.model, cfg.initial.pi, tau))
           << '\n';
    }
    return 0;
}

fcm::PortfolioSpec resolve_portfolio(const fcm::RunConfig& cfg) {
    fcm::PortfolioSpec spec;
    spec.tau_B = cfg.tau_B;
    spec.tau_D = cfg.tau_D;
    if (cfg.weights) {
        spec.w = *cfg.weights;
    } else if (cfg.factor_targets) {
        spec.w = fcm::factor_weights(cfg.pricing, cfg.model,
                                     *cfg.factor_targets, cfg.tau_B, cfg.tau_D);
    } else {
        throw fcm::ValidationError(
            "[portfolio] needs either weights (w_S, w_B, w_D) or factor "
            "targets (f_E, f_R, f_I)");
    }
    if (cfg.sigma_tot) {
        spec.w = fcm::scale_to_target(cfg.pricing, cfg.model, spec,
                                      *cfg.sigma_tot);
    }
    return spec;
}

int cmd_sharpe(const fcm::RunConfig& cfg) {
    const fcm::PortfolioSpec spec = resolve_portfolio(cfg);
    std::vector<fcm::SharpePoint> pts;
    for (int i = 1; i <= cfg.sharpe_points; ++i) {
        const double t = cfg.sharpe_horizon_max * i / cfg.sharpe_points;
        const fcm::SharpeDistribution d =
            fcm::sharpe_distribution(cfg.pricing, cfg.model, cfg.initial,
                                     spec, t);
        pts.push_back({t, d.mean, std::sqrt(d.variance)});
    }
    auto os = open_output(cfg, "sharpe.csv");
    fcm::write_sharpe_csv(os, pts);
    return 0;
}

int cmd_weights(const fcm::RunConfig& cfg) {
    if (!cfg.factor_targets) {
        throw fcm::ValidationError(
            "[portfolio] weights command needs factor targets (f_E, f_R, "
            "f_I)");
    }
    Eigen::Vector3d w = fcm::factor_weights(
        cfg.pricing, cfg.model, *cfg.factor_targets, cfg.tau_B, cfg.tau_D);
    fcm::PortfolioSpec spec;
    spec.w = w;
    spec.tau_B = cfg.tau_B;
    spec.tau_D = cfg.tau_D;
    if (cfg.sigma_tot) {
        w = fcm::scale_to_target(cfg.pricing, cfg.model, spec, *cfg.sigma_tot);
        spec.w = w;
    }
    const Eigen::Matrix3d lt =
        fcm::factor_matrix(cfg.pricing, cfg.model, cfg.tau_B, cfg.tau_D);
    const Eigen::Vector3d achieved = lt.transpose() * w;
    const double total = w.sum();
    const fcm::PortfolioCoeffs pc =
        fcm::portfolio_coeffs(cfg.pricing, cfg.model, spec);

    auto os = open_output(cfg, "weights.json");
    auto arr = [](const Eigen::Vector3d& v) {
        return "[" + fcm::format_double(v(0)) + ", " +
               fcm::format_double(v(1)) + ", " + fcm::format_double(v(2)) +
               "]";
    };
    os << "{\n  \"labels\": [\"stocks\", \"nominal_bonds\", "
          "\"inflation_bonds\"],\n"
       << "  \"weights\": " << arr(w) << ",\n"
       << "  \"weights_pct\": " << arr(100.0 / total * w) << ",\n"
       << "  \"factor_vols\": " << arr(achieved) << ",\n"
       << "  \"portfolio_vol\": " << fcm::format_double(pc.vol) << "\n}\n";
    return 0;
}

// Self-contained sanity run: closed-form integrals against quadrature and
// the exact sampler against an Euler discretization.
int cmd_oracle_check(const fcm::RunConfig& cfg) {
    std::mt19937_64 gen(7);
    std::uniform_real_distribution<double> speed(-2.0, 2.0);
    std::uniform_real_distribution<double> horizon(0.0, 50.0);
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
        const double kappa = speed(gen), alpha = speed(gen);
        const double t = horizon(gen);
        const auto rel = [](double got, double want) {
            return std::fabs(got - want) /
                   std::max(1.0, std::max(std::fabs(got), std::fabs(want)));
        };
        // quadrature tolerance scaled by the closed form: the integrands
        // grow like e^{|k| t} for negative decays
        const auto tol = [](double v) {
            return 1e-13 * std::max(1.0, std::fabs(v));
        };
        double v = fcm::theta(kappa, t);
        worst = std::max(
            worst, rel(v, fcm::adaptive_simpson(
                              [&](double s) { return fcm::psi(kappa, s); },
                              0.0, t, tol(v))));
        v = fcm::upsilon(kappa, t);
        worst = std::max(
            worst,
            rel(v, fcm::adaptive_simpson(
                       [&](double s) {
                           const double ps = fcm::psi(kappa, s);
                           return ps * ps;
                       },
                       0.0, t, tol(v))));
        v = fcm::lambda_fn(kappa, alpha, t);
        worst = std::max(
            worst, rel(v, fcm::adaptive_simpson(
                              [&](double s) {
                                  return fcm::psi(alpha, s) *
                                         fcm::psi(kappa, s);
                              },
                              0.0, t, tol(v))));
    }
    std::cout << "quadrature check: worst relative error = "
              << fcm::format_double(worst) << "\n";
    const bool quad_ok = worst < 1e-9;

    const double t_end = 1.0;
    const std::size_t n = 20000;
    const fcm::ScenarioSet ex = fcm::simulate(
        cfg.model, cfg.initial, fcm::TimeGrid{{t_end}}, n, cfg.seed);
    const fcm::ScenarioSet eu = fcm::euler_simulate(cfg.model, cfg.initial,
                                                    t_end, 1e-3, n,
                                                    cfg.seed + 1);
    auto mean_sd = [n](const fcm::ScenarioSet& s, auto proj) {
        double m = 0.0, q = 0.0;
        for (const auto& path : s.paths) m += proj(path.back());
        m /= static_cast<double>(n);
        for (const auto& path : s.paths) {
            const double d = proj(path.back()) - m;
            q += d * d;
        }
        return std::pair<double, double>(
            m, std::sqrt(q / static_cast<double>(n - 1) /
                         static_cast<double>(n)));
    };
    bool sim_ok = true;
    const char* names[] = {"r", "x", "pi", "log S", "log I"};
    const std::function<double(const fcm::State&)> projs[] = {
        [](const fcm::State& s) { return s.r; },
        [](const fcm::State& s) { return s.x; },
        [](const fcm::State& s) { return s.pi; },
        [](const fcm::State& s) { return std::log(s.S); },
        [](const fcm::State& s) { return std::log(s.I); }};
    for (int i = 0; i < 5; ++i) {
        const auto [me, se_e] = mean_sd(ex, projs[i]);
        const auto [mu, se_u] = mean_sd(eu, projs[i]);
        const double se = std::hypot(se_e, se_u);
        const double zscore = (me - mu) / se;
        std::cout << "euler vs exact, mean " << names[i]
                  << ": z = " << fcm::format_double(zscore) << "\n";
        if (std::fabs(zscore) > 5.0) sim_ok = false;
    }
    std::cout << (quad_ok && sim_ok ? "oracle-check: pass\n"
                                    : "oracle-check: FAIL\n");
    return quad_ok && sim_ok ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"five-factor capital market model toolkit"};
    app.require_subcommand(1);
    app.fallthrough();  // allow global options after the subcommand

    std::string config_path;
    std::optional<std::uint64_t> seed_override;
    std::optional<std::string> out_override;
    std::optional<std::string> format_override;
    app.add_option("--config", config_path, "configuration file")
        ->required();
    app.add_option("--seed", seed_override, "override the config seed");
    app.add_option("--out", out_override, "override the output directory");
    app.add_option("--format", format_override, "override output format")
        ->check(CLI::IsMember({"csv", "json"}));

    const std::vector<std::pair<std::string, int (*)(const fcm::RunConfig&)>>
        commands = {{"simulate", cmd_simulate}, {"moments", cmd_moments},
                    {"curves", cmd_curves},     {"bei", cmd_bei},
                    {"sharpe", cmd_sharpe},     {"weights", cmd_weights},
                    {"validate", cmd_validate},
                    {"oracle-check", cmd_oracle_check}};
    for (const auto& [name, fn] : commands) {
        app.add_subcommand(name)->parse_complete_callback([] {});
    }

    CLI11_PARSE(app, argc, argv);

    try {
        fcm::RunConfig cfg = fcm::load_config(config_path);
        if (seed_override) cfg.seed = *seed_override;
        if (out_override) cfg.out_dir = *out_override;
        if (format_override) cfg.format = *format_override;
        for (const auto& [name, fn] : commands) {
            if (app.got_subcommand(name)) return fn(cfg);
        }
        return 2;
    } catch (const fcm::ParseError& e) {
        std::cerr << "{\"error\": \"parse\", \"message\": \"" << e.what()
                  << "\"}\n";
        return 2;
    } catch (const fcm::ValidationError& e) {
        std::cerr << "{\"error\": \"validation\", \"message\": \"" << e.what()
                  << "\"}\n";
        return 2;
    } catch (const fcm::ModelError& e) {
        std::cerr << "{\"error\": \"numerical\", \"message\": \"" << e.what()
                  << "\"}\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "{\"error\": \"internal\", \"message\": \"" << e.what()
                  << "\"}\n";
        return 3;
    }
}
