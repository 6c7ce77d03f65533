#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "fcm/corr.hpp"
#include "fcm/errors.hpp"

using fcm::CorrTriple;
using fcm::determinant3;
using fcm::is_valid_corr;
using fcm::z_interval;

namespace {

Eigen::Matrix3d assemble(double x, double y, double z) {
    Eigen::Matrix3d m;
    m << 1, x, y, x, 1, z, y, z, 1;
    return m;
}

bool psd_by_eigenvalues(double x, double y, double z, double tol = 1e-12) {
    const Eigen::Matrix3d m = assemble(x, y, z);
    const Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(m);
    return es.eigenvalues().minCoeff() >= -tol;
}

}  // namespace

TEST_CASE("validity agrees with an eigenvalue oracle") {
    std::mt19937_64 gen(1);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    int disagreements = 0;
    for (int i = 0; i < 10000; ++i) {
        const double x = u(gen), y = u(gen), z = u(gen);
        const bool ours = is_valid_corr({x, y, z});
        const bool oracle = psd_by_eigenvalues(x, y, z);
        if (ours != oracle) {
            // only permissible very close to the boundary
            CHECK(std::fabs(determinant3(x, y, z)) < 1e-10);
            ++disagreements;
        }
    }
    CHECK(disagreements <= 2);
}

TEST_CASE("conditional interval endpoints sit on the PSD boundary") {
    for (double x = -0.95; x <= 0.96; x += 0.19) {
        for (double y = -0.95; y <= 0.96; y += 0.19) {
            const auto [lo, hi] = z_interval(x, y);
            CHECK(lo <= hi);
            // interior points valid, exterior invalid
            const double mid = 0.5 * (lo + hi);
            CHECK(is_valid_corr({x, y, mid}));
            CHECK(is_valid_corr({x, y, lo + 1e-6 * (hi - lo)}));
            CHECK(is_valid_corr({x, y, hi - 1e-6 * (hi - lo)}));
            if (lo - 1e-4 >= -1.0) {
                CHECK_FALSE(is_valid_corr({x, y, lo - 1e-4}));
            }
            if (hi + 1e-4 <= 1.0) {
                CHECK_FALSE(is_valid_corr({x, y, hi + 1e-4}));
            }
            // determinant vanishes at the endpoints
            CHECK(std::fabs(determinant3(x, y, lo)) < 1e-10);
            CHECK(std::fabs(determinant3(x, y, hi)) < 1e-10);
        }
    }
}

TEST_CASE("rotated coordinates turn the slice into an ellipse") {
    // for fixed z, (x,y) is admissible iff u^2/(1+z) + v^2/(1-z) <= 1 with
    // u = (x+y)/sqrt(2), v = (x-y)/sqrt(2)
    std::mt19937_64 gen(3);
    std::uniform_real_distribution<double> uu(-0.99, 0.99);
    for (int i = 0; i < 2000; ++i) {
        const double x = uu(gen), y = uu(gen), z = uu(gen);
        const double u = (x + y) / std::sqrt(2.0);
        const double v = (x - y) / std::sqrt(2.0);
        const double q = u * u / (1.0 + z) + v * v / (1.0 - z);
        if (q < 1.0 - 1e-9) CHECK(is_valid_corr({x, y, z}));
        if (q > 1.0 + 1e-9) CHECK_FALSE(is_valid_corr({x, y, z}));
    }
}

TEST_CASE("a plausible-looking triple can be inadmissible") {
    CHECK(determinant3(0.9, 0.9, 0.0) == doctest::Approx(-0.62));
    CHECK_FALSE(is_valid_corr({0.9, 0.9, 0.0}));
    CHECK_THROWS_AS((void)z_interval(1.5, 0.0), fcm::ValidationError);
}

TEST_CASE("admissible volume fraction converges to pi^2/16") {
    const double frac = fcm::psd_volume_fraction(200000, 99);
    const double want = M_PI * M_PI / 16.0;
    CHECK(std::fabs(frac - want) < 0.004);
}

TEST_CASE("4x4 matrix has unit diagonal and an independent fourth source") {
    const CorrTriple c{0.1, 0.8, -0.25};
    const auto m = fcm::corr_matrix4(c);
    const auto at = [&](int i, int j) { return m[4 * i + j]; };
    for (int i = 0; i < 4; ++i) CHECK(at(i, i) == 1.0);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) CHECK(at(i, j) == at(j, i));
    for (int j = 0; j < 3; ++j) CHECK(at(3, j) == 0.0);
    // ordering (S, r, pi, I)
    CHECK(at(0, 1) == c.rho_rS);
    CHECK(at(0, 2) == c.rho_SPi);
    CHECK(at(1, 2) == c.rho_rPi);
}
