#pragma once

#include <cstdint>
#include <vector>

#include "fcm/moments.hpp"
#include "fcm/params.hpp"
#include "fcm/rng.hpp"

namespace fcm {

class RngStream;

// Strictly increasing observation times, all > 0 (time 0 is the initial
// condition and is not stored).
struct TimeGrid {
    std::vector<double> t_points;

    static TimeGrid equidistant(double step, std::size_t n_steps);
    void validate() const;
};

// Simulated paths of the five state variables on a grid. paths[i][j] is the
// state of path i at grid.t_points[j].
struct ScenarioSet {
    TimeGrid grid;
    std::vector<std::vector<State>> paths;
    std::uint64_t seed = 0;
    ModelParams params;
};

// One draw of the 7-vector Y ~ N(m.mean, m.cov). The distribution is
// singular: the draw uses a Cholesky factor of the 6x6 leading block of the
// unit-volatility covariance and reconstructs the seventh component as
// Z7 = -Z3 - alpha Z4, then scales by D. Consumes exactly six normals.
//
// Throws RankDeficientCorrelation when the 3x3 correlation matrix is
// singular (determinant <= 1e-10) and CholeskyFailure when the 6x6 block is
// numerically non-PD.
Vec7 sample_singular_normal(const MomentSet& m, const ModelParams& p,
                            RngStream& rng);

// Exact transition of the full state over delta: Y is drawn conditional on
// s, then S and I are updated by their exponential representations.
// Consumes seven normals (six for Y, one for the W^I increment).
State exact_step(const ModelParams& p, const State& s, double delta,
                 RngStream& rng);

// Chained exact steps over the grid. Each path uses its own deterministic
// substream keyed by (seed, path index), so results do not depend on the
// order paths are generated in. Step covariances are factorized once per
// distinct step length.
ScenarioSet simulate(const ModelParams& p, const State& s0,
                     const TimeGrid& grid, std::size_t n_paths,
                     std::uint64_t seed);

// First-order (Euler-Maruyama) discretization of the five SDEs used as an
// approximate cross-check of the exact scheme. S and I are stepped in log
// space. Only the terminal state of each path is recorded.
ScenarioSet euler_simulate(const ModelParams& p, const State& s0,
                           double t_end, double dt, std::size_t n_paths,
                           std::uint64_t seed);

// Euler samples of the full 7-vector (r, int r, x, int x, pi, int pi, W^S)
// at t_end; the integrals are left Riemann sums. Oracle for the moments
// module.
std::vector<Vec7> euler_sample_y(const ModelParams& p, const State& s0,
                                 double t_end, double dt, std::size_t n_paths,
                                 std::uint64_t seed);

}  // namespace fcm
