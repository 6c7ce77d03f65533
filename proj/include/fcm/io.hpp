#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "fcm/moments.hpp"
#include "fcm/sim.hpp"

namespace fcm {

// Shortest decimal representation that round-trips to the same double, so
// emitted files are bitwise-reproducible across runs.
std::string format_double(double v);

// Header `path,time,r,S,x,I,pi`, one row per path x grid point, paths in
// index order.
void write_scenarios_csv(std::ostream& os, const ScenarioSet& s);

struct CurvePoint {
    double maturity = 0.0;
    double yield = 0.0;
    double forward = 0.0;
    double bei = 0.0;
};

void write_curves_csv(std::ostream& os, const std::vector<CurvePoint>& pts);

struct SharpePoint {
    double horizon = 0.0;
    double mean = 0.0;
    double sd = 0.0;
};

void write_sharpe_csv(std::ostream& os, const std::vector<SharpePoint>& pts);

// JSON document with the mean as a 7-array and the covariance as a 7x7
// nested array, labelled ["r","int_r","x","int_x","pi","int_pi","W_S"].
std::string moments_json(const MomentSet& m);

}  // namespace fcm
