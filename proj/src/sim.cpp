#include "fcm/sim.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <stdexcept>

#include "fcm/errors.hpp"

namespace fcm {
namespace {

constexpr double kRankTol = 1e-10;

using Mat6 = Eigen::Matrix<double, 6, 6>;

void require_full_rank_corr(const ModelParams& p) {
    const double det =
        determinant3(p.corr.rho_rS, p.corr.rho_rPi, p.corr.rho_SPi);
    if (det <= kRankTol) {
        throw RankDeficientCorrelation(
            "driving-noise correlation matrix is (numerically) singular; "
            "exact simulation requires a full-rank correlation matrix");
    }
}

// Cholesky factor of the 6x6 leading block of the unit-volatility
// covariance. Shared by every step of the same length.
struct StepSampler {
    double delta = 0.0;
    Mat7 unit_cov;
    Vec7 scale;
    double alpha = 0.0;
    Mat6 chol;

    StepSampler(const ModelParams& p, double delta_) : delta(delta_) {
        const MomentSet ms = cov_matrix(p, delta_);
        unit_cov = ms.unit_cov;
        scale = ms.scale;
        alpha = p.alpha;
        Eigen::LLT<Mat6> llt(unit_cov.topLeftCorner<6, 6>());
        if (llt.info() != Eigen::Success) {
            throw CholeskyFailure(
                "6x6 leading block of the unit-volatility covariance is not "
                "positive-definite; check model parameters");
        }
        chol = llt.matrixL();
    }

    Vec7 sample(const Vec7& mean, RngStream& rng) const {
        Eigen::Matrix<double, 6, 1> g;
        for (int i = 0; i < 6; ++i) g(i) = rng.next_normal();
        Vec7 z;
        z.head<6>() = chol * g;
        z(6) = -z(2) - alpha * z(3);
        return mean + scale.cwiseProduct(z);
    }
};

State apply_y(const ModelParams& p, const State& s, double delta,
              const Vec7& y, double u_infl) {
    State next;
    next.r = y(0);
    next.x = y(2);
    next.pi = y(4);
    next.S = s.S * std::exp(y(1) + y(3) - 0.5 * p.sigma_S * p.sigma_S * delta +
                            p.sigma_S * y(6));
    next.I = s.I * std::exp(y(5) - 0.5 * p.sigma_I * p.sigma_I * delta +
                            p.sigma_I * std::sqrt(delta) * u_infl);
    return next;
}

// Cholesky of the 3x3 correlation matrix of (W^r, W^S, W^pi); tolerates the
// PSD boundary (Euler does not need full rank).
std::array<double, 6> corr3_cholesky(const CorrTriple& c) {
    const double l11 = 1.0;
    const double l21 = c.rho_rS;
    const double l22 = std::sqrt(std::max(0.0, 1.0 - l21 * l21));
    const double l31 = c.rho_rPi;
    const double l32 =
        l22 > 0.0 ? (c.rho_SPi - l21 * l31) / l22 : 0.0;
    const double l33 =
        std::sqrt(std::max(0.0, 1.0 - l31 * l31 - l32 * l32));
    return {l11, l21, l22, l31, l32, l33};
}

struct EulerPathResult {
    State state;
    Vec7 y;
};

EulerPathResult euler_path(const ModelParams& p, const State& s0,
                           double t_end, double dt,
                           const std::array<double, 6>& l, RngStream& rng) {
    const auto n_steps = static_cast<std::size_t>(std::llround(t_end / dt));
    const double sdt = std::sqrt(dt);

    double r = s0.r, x = s0.x, pi = s0.pi;
    double log_s = std::log(s0.S), log_i = std::log(s0.I);
    double int_r = 0.0, int_x = 0.0, int_pi = 0.0, ws = 0.0;

    for (std::size_t i = 0; i < n_steps; ++i) {
        const double g1 = rng.next_normal();
        const double g2 = rng.next_normal();
        const double g3 = rng.next_normal();
        const double g4 = rng.next_normal();
        const double er = l[0] * g1;
        const double es = l[1] * g1 + l[2] * g2;
        const double epi = l[3] * g1 + l[4] * g2 + l[5] * g3;

        int_r += r * dt;
        int_x += x * dt;
        int_pi += pi * dt;
        log_s += (r + x - 0.5 * p.sigma_S * p.sigma_S) * dt +
                 p.sigma_S * sdt * es;
        log_i += (pi - 0.5 * p.sigma_I * p.sigma_I) * dt +
                 p.sigma_I * sdt * g4;
        ws += sdt * es;

        r += p.kappa * (p.r_bar - r) * dt + p.sigma_r * sdt * er;
        x += p.alpha * (p.x_bar - x) * dt - p.sigma_x * sdt * es;
        pi += p.beta * (p.pi_bar - pi) * dt + p.sigma_pi * sdt * epi;
    }

    EulerPathResult out;
    out.state = State{r, std::exp(log_s), x, std::exp(log_i), pi};
    out.y << r, int_r, x, int_x, pi, int_pi, ws;
    return out;
}

}  // namespace

TimeGrid TimeGrid::equidistant(double step, std::size_t n_steps) {
    if (!(step > 0.0) || n_steps == 0) {
        throw std::invalid_argument("TimeGrid: step must be > 0, n_steps >= 1");
    }
    TimeGrid g;
    g.t_points.reserve(n_steps);
    for (std::size_t i = 1; i <= n_steps; ++i) {
        g.t_points.push_back(static_cast<double>(i) * step);
    }
    return g;
}

void TimeGrid::validate() const {
    if (t_points.empty()) {
        throw ValidationError("time grid is empty");
    }
    double prev = 0.0;
    for (double t : t_points) {
        if (!std::isfinite(t) || t <= prev) {
            throw ValidationError(
                "time grid must be strictly increasing and start after 0");
        }
        prev = t;
    }
}

Vec7 sample_singular_normal(const MomentSet& m, const ModelParams& p,
                            RngStream& rng) {
    if (!(m.t > 0.0)) {
        throw std::invalid_argument(
            "sample_singular_normal: horizon must be > 0");
    }
    require_full_rank_corr(p);
    StepSampler sampler(p, m.t);
    return sampler.sample(m.mean, rng);
}

State exact_step(const ModelParams& p, const State& s, double delta,
                 RngStream& rng) {
    if (!(delta > 0.0)) {
        throw std::invalid_argument("exact_step: delta must be > 0");
    }
    require_full_rank_corr(p);
    StepSampler sampler(p, delta);
    const Vec7 y = sampler.sample(mean_vector(p, s, delta), rng);
    return apply_y(p, s, delta, y, rng.next_normal());
}

ScenarioSet simulate(const ModelParams& p, const State& s0,
                     const TimeGrid& grid, std::size_t n_paths,
                     std::uint64_t seed) {
    p.validate();
    s0.validate();
    grid.validate();
    if (n_paths < 1) {
        throw std::invalid_argument("simulate: n_paths must be >= 1");
    }
    require_full_rank_corr(p);

    // one factorization per distinct step length
    std::map<double, StepSampler> samplers;
    std::vector<const StepSampler*> step_sampler(grid.t_points.size());
    double prev = 0.0;
    for (std::size_t i = 0; i < grid.t_points.size(); ++i) {
        const double delta = grid.t_points[i] - prev;
        prev = grid.t_points[i];
        auto it = samplers.find(delta);
        if (it == samplers.end()) {
            it = samplers.emplace(delta, StepSampler(p, delta)).first;
        }
        step_sampler[i] = &it->second;
    }

    ScenarioSet out;
    out.grid = grid;
    out.seed = seed;
    out.params = p;
    out.paths.resize(n_paths);
    for (std::size_t path = 0; path < n_paths; ++path) {
        RngStream rng(seed, path);
        std::vector<State> states;
        states.reserve(grid.t_points.size());
        State s = s0;
        for (std::size_t i = 0; i < grid.t_points.size(); ++i) {
            const StepSampler& sampler = *step_sampler[i];
            const Vec7 y = sampler.sample(mean_vector(p, s, sampler.delta), rng);
            s = apply_y(p, s, sampler.delta, y, rng.next_normal());
            states.push_back(s);
        }
        out.paths[path] = std::move(states);
    }
    return out;
}

ScenarioSet euler_simulate(const ModelParams& p, const State& s0,
                           double t_end, double dt, std::size_t n_paths,
                           std::uint64_t seed) {
    p.validate();
    s0.validate();
    if (!(dt > 0.0) || !(t_end >= dt)) {
        throw std::invalid_argument("euler_simulate: need dt > 0, t_end >= dt");
    }
    if (n_paths < 1) {
        throw std::invalid_argument("euler_simulate: n_paths must be >= 1");
    }
    const auto l = corr3_cholesky(p.corr);

    ScenarioSet out;
    out.grid.t_points = {t_end};
    out.seed = seed;
    out.params = p;
    out.paths.resize(n_paths);
    for (std::size_t path = 0; path < n_paths; ++path) {
        RngStream rng(seed, path);
        out.paths[path] = {euler_path(p, s0, t_end, dt, l, rng).state};
    }
    return out;
}

std::vector<Vec7> euler_sample_y(const ModelParams& p, const State& s0,
                                 double t_end, double dt, std::size_t n_paths,
                                 std::uint64_t seed) {
    if (!(dt > 0.0) || !(t_end >= dt) || n_paths < 1) {
        throw std::invalid_argument("euler_sample_y: invalid arguments");
    }
    const auto l = corr3_cholesky(p.corr);
    std::vector<Vec7> out;
    out.reserve(n_paths);
    for (std::size_t path = 0; path < n_paths; ++path) {
        RngStream rng(seed, path);
        out.push_back(euler_path(p, s0, t_end, dt, l, rng).y);
    }
    return out;
}

}  // namespace fcm
