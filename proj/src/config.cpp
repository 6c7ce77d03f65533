#include "fcm/config.hpp"

#include <algorithm>
#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "fcm/errors.hpp"
#include "fcm/sim.hpp"

namespace fcm {
namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

using SectionMap = std::map<std::string, std::map<std::string, std::string>>;

SectionMap parse_sections(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open config file: " + path);
    SectionMap sections;
    std::string line, section;
    std::size_t lineno = 0;
    bool saw_content = false;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        saw_content = true;
        if (line.front() == '[') {
            if (line.back() != ']') {
                throw ParseError(path + ":" + std::to_string(lineno) +
                                 ": unterminated section header");
            }
            section = trim(line.substr(1, line.size() - 2));
            if (section.empty()) {
                throw ParseError(path + ":" + std::to_string(lineno) +
                                 ": empty section name");
            }
            sections[section];
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos || section.empty()) {
            throw ParseError(path + ":" + std::to_string(lineno) +
                             ": expected 'key = value' inside a section");
        }
        const std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
            value = value.substr(1, value.size() - 2);
        }
        if (key.empty() || value.empty()) {
            throw ParseError(path + ":" + std::to_string(lineno) +
                             ": empty key or value");
        }
        if (!sections[section].emplace(key, value).second) {
            throw ValidationError("duplicate key [" + section + "] " + key);
        }
    }
    if (!saw_content) throw ParseError(path + ": empty config file");
    return sections;
}

class SectionReader {
public:
    SectionReader(const SectionMap& all, std::string name)
        : name_(std::move(name)) {
        const auto it = all.find(name_);
        if (it != all.end()) kv_ = &it->second;
    }

    bool present() const { return kv_ != nullptr; }

    bool has(const std::string& key) const {
        return kv_ && kv_->count(key) > 0;
    }

    double number(const std::string& key) const {
        return parse_number(key, raw(key));
    }

    double number_or(const std::string& key, double fallback) const {
        if (!has(key)) return fallback;
        return number(key);
    }

    std::string text_or(const std::string& key,
                        const std::string& fallback) const {
        if (!has(key)) return fallback;
        return raw(key);
    }

    std::vector<double> number_list(const std::string& key) const {
        std::vector<double> out;
        std::string item;
        std::istringstream ss(raw(key));
        while (std::getline(ss, item, ',')) {
            item = trim(item);
            if (item.empty()) continue;
            out.push_back(parse_number(key, item));
        }
        if (out.empty()) {
            throw ValidationError(where(key) + ": empty list");
        }
        return out;
    }

    void mark_used(const std::string& key) const { used_.insert(key); }

    void check_no_unknown_keys() const {
        if (!kv_) return;
        for (const auto& [key, value] : *kv_) {
            if (!used_.count(key)) {
                throw ValidationError("unknown key [" + name_ + "] " + key);
            }
        }
    }

private:
    std::string where(const std::string& key) const {
        return "[" + name_ + "] " + key;
    }

    const std::string& raw(const std::string& key) const {
        if (!kv_) throw ValidationError("missing section [" + name_ + "]");
        const auto it = kv_->find(key);
        if (it == kv_->end()) {
            throw ValidationError("missing key " + where(key));
        }
        used_.insert(key);
        return it->second;
    }

    double parse_number(const std::string& key, const std::string& s) const {
        errno = 0;
        char* end = nullptr;
        const double v = std::strtod(s.c_str(), &end);
        if (end == s.c_str() || *end != '\0' || errno == ERANGE ||
            !std::isfinite(v)) {
            throw ValidationError(where(key) + ": not a finite number: '" + s +
                                  "'");
        }
        return v;
    }

    std::string name_;
    const std::map<std::string, std::string>* kv_ = nullptr;
    mutable std::set<std::string> used_;
};

}  // namespace

RunConfig load_config(const std::string& path) {
    const SectionMap sections = parse_sections(path);
    static const std::set<std::string> known = {
        "model", "pricing", "initial", "simulation",
        "output", "curves", "portfolio"};
    for (const auto& [name, kv] : sections) {
        if (!known.count(name)) {
            throw ValidationError("unknown section [" + name + "]");
        }
    }

    RunConfig cfg;

    SectionReader model(sections, "model");
    cfg.model.kappa = model.number("kappa");
    cfg.model.r_bar = model.number("r_bar");
    cfg.model.sigma_r = model.number("sigma_r");
    cfg.model.alpha = model.number("alpha");
    cfg.model.x_bar = model.number("x_bar");
    cfg.model.sigma_x = model.number("sigma_x");
    cfg.model.beta = model.number("beta");
    cfg.model.pi_bar = model.number("pi_bar");
    cfg.model.sigma_pi = model.number("sigma_pi");
    cfg.model.sigma_S = model.number("sigma_S");
    cfg.model.sigma_I = model.number("sigma_I");
    cfg.model.corr.rho_rS = model.number("rho_rS");
    cfg.model.corr.rho_rPi = model.number("rho_rPi");
    cfg.model.corr.rho_SPi = model.number("rho_SPi");
    model.check_no_unknown_keys();
    try {
        cfg.model.validate();
    } catch (const ValidationError& e) {
        throw ValidationError(std::string("[model] ") + e.what());
    }

    SectionReader pricing(sections, "pricing");
    cfg.pricing.a = pricing.number("a");
    cfg.pricing.b = pricing.number("b");
    cfg.pricing.h = pricing.number("h");
    cfg.pricing.k = pricing.number("k");
    cfg.pricing.l = pricing.number("l");
    pricing.check_no_unknown_keys();

    SectionReader initial(sections, "initial");
    cfg.initial.r = initial.number("r");
    cfg.initial.S = initial.number("S");
    cfg.initial.x = initial.number("x");
    cfg.initial.I = initial.number("I");
    cfg.initial.pi = initial.number("pi");
    initial.check_no_unknown_keys();
    try {
        cfg.initial.validate();
    } catch (const ValidationError& e) {
        throw ValidationError(std::string("[initial] ") + e.what());
    }

    SectionReader simulation(sections, "simulation");
    if (simulation.present()) {
        if (simulation.has("times")) {
            cfg.grid_times = simulation.number_list("times");
        } else {
            const double step = simulation.number("step");
            const double n_steps = simulation.number("n_steps");
            if (!(step > 0.0)) {
                throw ValidationError("[simulation] step must be > 0");
            }
            if (n_steps < 1.0 || n_steps != std::floor(n_steps)) {
                throw ValidationError(
                    "[simulation] n_steps must be a positive integer");
            }
            cfg.grid_times =
                TimeGrid::equidistant(step, static_cast<std::size_t>(n_steps))
                    .t_points;
        }
        const double n_paths = simulation.number_or("n_paths", 100.0);
        if (n_paths < 1.0 || n_paths != std::floor(n_paths)) {
            throw ValidationError(
                "[simulation] n_paths must be a positive integer");
        }
        cfg.n_paths = static_cast<std::size_t>(n_paths);
        const double seed = simulation.number_or("seed", 1.0);
        if (seed < 0.0 || seed != std::floor(seed)) {
            throw ValidationError(
                "[simulation] seed must be a non-negative integer");
        }
        cfg.seed = static_cast<std::uint64_t>(seed);
        simulation.check_no_unknown_keys();
    } else {
        cfg.grid_times = TimeGrid::equidistant(1.0, 10).t_points;
    }
    TimeGrid grid{cfg.grid_times};
    try {
        grid.validate();
    } catch (const ValidationError& e) {
        throw ValidationError(std::string("[simulation] times: ") + e.what());
    }

    SectionReader output(sections, "output");
    cfg.out_dir = output.text_or("dir", ".");
    output.mark_used("dir");
    cfg.format = output.text_or("format", "csv");
    output.mark_used("format");
    if (cfg.format != "csv" && cfg.format != "json") {
        throw ValidationError("[output] format must be 'csv' or 'json'");
    }
    output.check_no_unknown_keys();

    SectionReader curves(sections, "curves");
    cfg.curve_max_maturity = curves.number_or("max_maturity", 30.0);
    if (!(cfg.curve_max_maturity > 0.0)) {
        throw ValidationError("[curves] max_maturity must be > 0");
    }
    const double pts = curves.number_or("n_points", 60.0);
    if (pts < 1.0 || pts != std::floor(pts)) {
        throw ValidationError("[curves] n_points must be a positive integer");
    }
    cfg.curve_points = static_cast<int>(pts);
    curves.check_no_unknown_keys();

    SectionReader portfolio(sections, "portfolio");
    if (portfolio.present()) {
        if (portfolio.has("w_S") || portfolio.has("w_B") ||
            portfolio.has("w_D")) {
            cfg.weights = Eigen::Vector3d(portfolio.number("w_S"),
                                          portfolio.number("w_B"),
                                          portfolio.number("w_D"));
        }
        if (portfolio.has("f_E") || portfolio.has("f_R") ||
            portfolio.has("f_I")) {
            cfg.factor_targets = Eigen::Vector3d(portfolio.number("f_E"),
                                                 portfolio.number("f_R"),
                                                 portfolio.number("f_I"));
        }
        cfg.tau_B = portfolio.number_or("tau_B", 10.0);
        cfg.tau_D = portfolio.number_or("tau_D", 15.0);
        if (!(cfg.tau_B > 0.0) || !(cfg.tau_D > 0.0)) {
            throw ValidationError("[portfolio] tau_B and tau_D must be > 0");
        }
        if (portfolio.has("sigma_tot")) {
            cfg.sigma_tot = portfolio.number("sigma_tot");
            if (!(*cfg.sigma_tot > 0.0)) {
                throw ValidationError("[portfolio] sigma_tot must be > 0");
            }
        }
        cfg.sharpe_horizon_max = portfolio.number_or("horizon_max", 15.0);
        if (!(cfg.sharpe_horizon_max > 0.0)) {
            throw ValidationError("[portfolio] horizon_max must be > 0");
        }
        const double hp = portfolio.number_or("horizon_points", 30.0);
        if (hp < 1.0 || hp != std::floor(hp)) {
            throw ValidationError(
                "[portfolio] horizon_points must be a positive integer");
        }
        cfg.sharpe_points = static_cast<int>(hp);
        portfolio.check_no_unknown_keys();
    }

    return cfg;
}

}  // namespace fcm
