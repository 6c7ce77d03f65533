#include "fcm/io.hpp"

#include <charconv>
#include <cstdio>
#include <system_error>

#include <json.hpp>

namespace fcm {

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

void write_scenarios_csv(std::ostream& os, const ScenarioSet& s) {
    os << "path,time,r,S,x,I,pi\n";
    for (std::size_t i = 0; i < s.paths.size(); ++i) {
        for (std::size_t j = 0; j < s.grid.t_points.size(); ++j) {
            const State& st = s.paths[i][j];
            os << i << ',' << format_double(s.grid.t_points[j]) << ','
               << format_double(st.r) << ',' << format_double(st.S) << ','
               << format_double(st.x) << ',' << format_double(st.I) << ','
               << format_double(st.pi) << '\n';
        }
    }
}

void write_curves_csv(std::ostream& os, const std::vector<CurvePoint>& pts) {
    os << "maturity,yield,forward,bei\n";
    for (const auto& p : pts) {
        os << format_double(p.maturity) << ',' << format_double(p.yield) << ','
           << format_double(p.forward) << ',' << format_double(p.bei) << '\n';
    }
}

void write_sharpe_csv(std::ostream& os, const std::vector<SharpePoint>& pts) {
    os << "horizon,mean,std\n";
    for (const auto& p : pts) {
        os << format_double(p.horizon) << ',' << format_double(p.mean) << ','
           << format_double(p.sd) << '\n';
    }
}

std::string moments_json(const MomentSet& m) {
    nlohmann::ordered_json doc;
    doc["labels"] = {"r", "int_r", "x", "int_x", "pi", "int_pi", "W_S"};
    doc["t"] = m.t;
    auto& mean = doc["mean"] = nlohmann::ordered_json::array();
    for (int i = 0; i < 7; ++i) mean.push_back(m.mean(i));
    auto& cov = doc["cov"] = nlohmann::ordered_json::array();
    for (int i = 0; i < 7; ++i) {
        auto row = nlohmann::ordered_json::array();
        for (int j = 0; j < 7; ++j) row.push_back(m.cov(i, j));
        cov.push_back(row);
    }
    return doc.dump(2) + "\n";
}

}  // namespace fcm
