#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <unistd.h>
#include <fstream>
#include <string>

#include "fcm/config.hpp"
#include "fcm/errors.hpp"
#include "fcm/io.hpp"

namespace {

namespace fs = std::filesystem;

struct TempFile {
    fs::path path;
    explicit TempFile(const std::string& content) {
        static int counter = 0;
        path = fs::temp_directory_path() /
               ("fcm_cfg_" + std::to_string(::getpid()) + "_" +
                std::to_string(counter++) + ".toml");
        std::ofstream(path) << content;
    }
    ~TempFile() { fs::remove(path); }
};

const std::string kBase = R"([model]
kappa = 0.09
r_bar = 0.0275
sigma_r = 0.01
alpha = 0.06
x_bar = 0.045
sigma_x = 0.007
sigma_S = 0.15
beta = 0.05
pi_bar = 0.015
sigma_pi = 0.005
sigma_I = 0.005
rho_rS = 0.0
rho_rPi = 0.80
rho_SPi = -0.25

[pricing]
a = 0.03
b = 0.065
h = -0.001
k = 0.05
l = 0.02

[initial]
r = 0.005
S = 1.0
x = 0.03
I = 1.0
pi = 0.0
)";

}  // namespace

TEST_CASE("shipped calibrated config loads with the table values") {
    const fcm::RunConfig cfg = fcm::load_config("../configs/cappar.toml");
    CHECK(cfg.model.kappa == 0.09);
    CHECK(cfg.model.r_bar == 0.0275);
    CHECK(cfg.model.sigma_x == 0.007);
    CHECK(cfg.model.corr.rho_rPi == 0.80);
    CHECK(cfg.model.corr.rho_SPi == -0.25);
    CHECK(cfg.pricing.a == 0.03);
    CHECK(cfg.pricing.h == -0.001);
    CHECK(cfg.initial.r == 0.005);
    CHECK(cfg.initial.x == 0.03);
    CHECK(cfg.grid_times.size() == 10);
    CHECK(cfg.grid_times.back() == 10.0);
    CHECK(cfg.n_paths == 100);
    CHECK(cfg.seed == 1);
    CHECK(cfg.format == "csv");
    REQUIRE(cfg.factor_targets.has_value());
    CHECK((*cfg.factor_targets)(0) == 40.0);
    CHECK(cfg.tau_D == 15.0);
}

TEST_CASE("minimal config gets defaults") {
    const TempFile f(kBase);
    const fcm::RunConfig cfg = fcm::load_config(f.path.string());
    CHECK(cfg.n_paths == 100);
    CHECK(cfg.seed == 1);
    CHECK(cfg.curve_points == 60);
    CHECK_FALSE(cfg.weights.has_value());
    CHECK_FALSE(cfg.factor_targets.has_value());
    CHECK(cfg.grid_times.size() == 10);
}

TEST_CASE("empty file is a parse error") {
    const TempFile f("\n# only a comment\n");
    CHECK_THROWS_AS(fcm::load_config(f.path.string()), fcm::ParseError);
    CHECK_THROWS_AS(fcm::load_config("/nonexistent/path.toml"),
                    fcm::ParseError);
}

TEST_CASE("inadmissible correlations are rejected citing the determinant") {
    std::string bad = kBase;
    const auto pos = bad.find("rho_rPi = 0.80");
    bad.replace(pos, 14, "rho_rPi = 0.90");
    bad.replace(bad.find("rho_rS = 0.0\n"), 13, "rho_rS = 0.90\n");
    const TempFile f(bad);
    try {
        fcm::load_config(f.path.string());
        FAIL("expected ValidationError");
    } catch (const fcm::ValidationError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("determinant") != std::string::npos);
        CHECK(msg.find("[model]") != std::string::npos);
    }
}

TEST_CASE("errors name the offending key") {
    SUBCASE("unknown key") {
        const TempFile f(kBase + "\n[simulation]\nstep = 1\nn_steps = 4\n"
                                 "bogus_key = 3\n");
        try {
            fcm::load_config(f.path.string());
            FAIL("expected ValidationError");
        } catch (const fcm::ValidationError& e) {
            CHECK(std::string(e.what()).find("bogus_key") !=
                  std::string::npos);
        }
    }
    SUBCASE("missing key") {
        std::string missing = kBase;
        missing.replace(missing.find("sigma_S = 0.15\n"), 15, "");
        const TempFile f(missing);
        try {
            fcm::load_config(f.path.string());
            FAIL("expected ValidationError");
        } catch (const fcm::ValidationError& e) {
            CHECK(std::string(e.what()).find("sigma_S") != std::string::npos);
        }
    }
    SUBCASE("non-numeric value") {
        std::string bad = kBase;
        bad.replace(bad.find("kappa = 0.09"), 12, "kappa = fast");
        const TempFile f(bad);
        try {
            fcm::load_config(f.path.string());
            FAIL("expected ValidationError");
        } catch (const fcm::ValidationError& e) {
            CHECK(std::string(e.what()).find("kappa") != std::string::npos);
        }
    }
    SUBCASE("bad n_paths") {
        const TempFile f(kBase +
                         "\n[simulation]\nstep = 1\nn_steps = 2\n"
                         "n_paths = 2.5\n");
        CHECK_THROWS_AS(fcm::load_config(f.path.string()),
                        fcm::ValidationError);
    }
}

TEST_CASE("explicit times and section variants") {
    const TempFile f(kBase + "\n[simulation]\ntimes = 0.5, 1.5, 4\n"
                             "n_paths = 7\nseed = 99\n");
    const fcm::RunConfig cfg = fcm::load_config(f.path.string());
    CHECK(cfg.grid_times == std::vector<double>{0.5, 1.5, 4.0});
    CHECK(cfg.n_paths == 7);
    CHECK(cfg.seed == 99);

    const TempFile g(kBase + "\n[simulation]\ntimes = 2, 1\n");
    CHECK_THROWS_AS(fcm::load_config(g.path.string()), fcm::ValidationError);
}

TEST_CASE("shortest round-trip formatting survives re-parsing") {
    for (double v : {0.1, 1.0 / 3.0, 9.1517e-5, -0.0275, 1e-300, 123456.789}) {
        const std::string s = fcm::format_double(v);
        CHECK(std::stod(s) == v);
    }
    CHECK(fcm::format_double(0.1) == "0.1");
    CHECK(fcm::format_double(100.0) == "100");
}
