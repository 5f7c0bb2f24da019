#include "magsplit/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace magsplit {

namespace {

std::string trim(const std::string& s)
{
    size_t b = s.find_first_not_of(" \t\r");
    size_t e = s.find_last_not_of(" \t\r");
    if (b == std::string::npos) return "";
    return s.substr(b, e - b + 1);
}

std::vector<std::pair<double, double>> load_table(const std::string& path,
                                                  std::vector<std::string>& errors)
{
    std::vector<std::pair<double, double>> rows;
    std::ifstream in(path);
    if (!in) {
        errors.push_back("profile.table: cannot open '" + path + "'");
        return rows;
    }
    std::string line;
    while (std::getline(in, line)) {
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream ls(line);
        double u, b;
        if (ls >> u >> b) rows.emplace_back(u, b);
        else errors.push_back("profile.table: malformed row '" + line + "'");
    }
    return rows;
}

} // namespace

MagneticProfile RunConfig::make_profile() const
{
    if (!profile_table.empty()) {
        std::vector<std::string> errs;
        auto rows = load_table(profile_table, errs);
        if (!errs.empty()) throw std::invalid_argument(errs.front());
        return MagneticProfile::tabulated(b0, b1, a, std::move(rows));
    }
    return MagneticProfile::builtin(b0, b1, a, kappa);
}

WellGeometry RunConfig::make_geometry() const
{
    return magsplit::make_geometry(make_profile(), L);
}

RunConfig parse_config_text(const std::string& text)
{
    RunConfig cfg;
    std::vector<std::string> errors;
    std::map<std::string, std::string> kv;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        size_t eq = t.find('=');
        if (eq == std::string::npos) {
            errors.push_back("line " + std::to_string(lineno) + ": expected key = value");
            continue;
        }
        std::string key = trim(t.substr(0, eq));
        std::string val = trim(t.substr(eq + 1));
        if (kv.count(key)) errors.push_back("duplicate key '" + key + "'");
        kv[key] = val;
    }

    auto take = [&](const std::string& key) -> const std::string* {
        auto it = kv.find(key);
        if (it == kv.end()) return nullptr;
        return &it->second;
    };
    auto as_double = [&](const std::string& key, double& out) {
        if (const std::string* v = take(key)) {
            try {
                size_t pos = 0;
                out = std::stod(*v, &pos);
                if (pos != v->size()) throw std::invalid_argument("");
            } catch (...) {
                errors.push_back(key + ": not a number ('" + *v + "')");
            }
        }
    };
    auto as_int = [&](const std::string& key, int& out) {
        double d = out;
        as_double(key, d);
        out = static_cast<int>(std::lround(d));
    };
    auto as_bool = [&](const std::string& key, bool& out) {
        if (const std::string* v = take(key)) {
            if (*v == "true" || *v == "1") out = true;
            else if (*v == "false" || *v == "0") out = false;
            else errors.push_back(key + ": expected true/false");
        }
    };

    as_double("profile.b0", cfg.b0);
    as_double("profile.b1", cfg.b1);
    as_double("profile.a", cfg.a);
    as_double("profile.L", cfg.L);
    as_double("profile.kappa", cfg.kappa);
    if (const std::string* v = take("profile.table")) cfg.profile_table = *v;

    as_double("radial.r_max", cfg.radial.r_max);
    as_int("radial.n_radial", cfg.radial.n);
    as_double("radial.eig_tol", cfg.radial.eig_tol);

    as_double("quadrature.x2_halfwidth", cfg.quad.x2_halfwidth);
    as_int("quadrature.points_per_period", cfg.quad.points_per_period);
    as_int("quadrature.panel_order", cfg.quad.panel_order);
    as_double("quadrature.s_max", cfg.quad.s_max);
    as_double("quadrature.y_max", cfg.quad.y_max);
    as_int("quadrature.jacobi_order", cfg.quad.jacobi_order);
    as_int("quadrature.extra_digits", cfg.quad.extra_digits);

    as_double("grid2d.box", cfg.grid.box_half);
    as_double("grid2d.dx", cfg.grid.dx);
    as_int("grid2d.n_eig", cfg.grid.n_eig);
    as_double("grid2d.h", cfg.grid_h);

    if (const std::string* v = take("run.h_list")) {
        cfg.h_list.clear();
        std::string s = *v;
        std::replace(s.begin(), s.end(), ',', ' ');
        std::istringstream hs(s);
        double h;
        while (hs >> h) cfg.h_list.push_back(h);
        if (cfg.h_list.empty()) errors.push_back("run.h_list: no values");
    }
    as_bool("run.require_theorem_hypothesis", cfg.require_theorem_hypothesis);
    as_int("run.jobs", cfg.jobs);

    // unknown keys are reported by name
    static const char* known[] = {
        "profile.b0", "profile.b1", "profile.a", "profile.L", "profile.kappa",
        "profile.table", "radial.r_max", "radial.n_radial", "radial.eig_tol",
        "quadrature.x2_halfwidth", "quadrature.points_per_period", "quadrature.panel_order",
        "quadrature.s_max", "quadrature.y_max", "quadrature.jacobi_order",
        "quadrature.extra_digits", "grid2d.box", "grid2d.dx", "grid2d.n_eig", "grid2d.h",
        "run.h_list", "run.require_theorem_hypothesis", "run.jobs"};
    for (const auto& [key, val] : kv) {
        (void)val;
        bool ok = false;
        for (const char* k : known) ok |= (key == k);
        if (!ok) errors.push_back("unknown key '" + key + "'");
    }

    // cross-field invariants, all reported together
    if (!(cfg.b0 > 0)) errors.push_back("profile.b0 must be positive");
    if (!(cfg.b1 > cfg.b0)) errors.push_back("profile.b1 must exceed b0 (field well)");
    if (!(cfg.a > 0)) errors.push_back("profile.a must be positive");
    if (!(cfg.a < 0.5 * cfg.L)) errors.push_back("wells overlap: need a < L/2");
    if (cfg.profile_table.empty() && !(cfg.kappa > 0))
        errors.push_back("profile.kappa must be positive");
    for (double h : cfg.h_list)
        if (!(h > 0)) errors.push_back("run.h_list entries must be positive");
    if (cfg.jobs < 1) errors.push_back("run.jobs must be at least 1");

    const bool hyp = cfg.L > (2.0 + std::sqrt(6.0)) * cfg.a;
    if (!hyp) {
        if (cfg.require_theorem_hypothesis) {
            errors.push_back("separation hypothesis L > (2+sqrt 6) a violated and "
                             "run.require_theorem_hypothesis is set");
        } else {
            cfg.warnings.push_back("separation hypothesis L > (2+sqrt 6) a violated; the "
                                   "weaker integral inequality will be checked numerically");
        }
    }

    if (!errors.empty()) {
        std::string msg = "invalid configuration:";
        for (const auto& e : errors) msg += "\n  - " + e;
        throw std::invalid_argument(msg);
    }
    return cfg;
}

RunConfig parse_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

std::string format_double(double v)
{
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

} // namespace magsplit
