#include "magsplit/config.hpp"
#include "magsplit/grid2d.hpp"
#include "magsplit/interaction.hpp"
#include "magsplit/verify.hpp"
#include "magsplit/wkb.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <cstdio>
#include <fstream>
#include <future>
#include <iostream>

using namespace magsplit;

namespace {

RunConfig load_cfg(const std::string& path)
{
    if (path.empty()) return parse_config_text(""); // built-in reference defaults
    return parse_config(path);
}

void emit(const std::string& out_path, const std::string& text)
{
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out_path);
    if (!f) throw std::runtime_error("cannot write '" + out_path + "'");
    f << text;
}

nlohmann::json constants_json(const PredictionConstants& k)
{
    nlohmann::json j;
    j["M"] = k.M;
    j["N"] = k.N;
    j["delta0"] = k.delta0;
    j["Phi0"] = k.phi0;
    j["S0"] = k.S0;
    j["S"] = k.S;
    j["I"] = k.I;
    j["F0"] = k.F0;
    j["c0"] = k.c0;
    j["c"] = k.c;
    j["b0"] = k.b0;
    j["b1"] = k.b1;
    j["a"] = k.a;
    j["L"] = k.L;
    j["hypothesis"] = k.hypothesis;
    j["inequality_ok"] = k.inequality_ok;
    return j;
}

std::string constants_csv(const PredictionConstants& k)
{
    std::string s = "# schema=1\nname,value\n";
    auto row = [&](const char* n, double v) {
        s += n;
        s += ",";
        s += format_double(v);
        s += "\n";
    };
    row("M", k.M);
    row("N", k.N);
    row("delta0", k.delta0);
    row("Phi0", k.phi0);
    row("S0", k.S0);
    row("S", k.S);
    row("I", k.I);
    row("F0", k.F0);
    row("c0", k.c0);
    row("c", k.c);
    s += "hypothesis,";
    s += k.hypothesis ? "1" : "0";
    s += "\ninequality_ok,";
    s += k.inequality_ok ? "1" : "0";
    s += "\n";
    return s;
}

std::string report_csv_header()
{
    return "# schema=1\n"
           "h,log10_gap_direct,log10_gap_pred,ratio,wh_from_Wh_ratio,laplace_dev,flags,"
           "log10_w_direct,log10_w_from_W,log10_W_numeric,log10_W_laplace,ratio_gap_a0,mu\n";
}

std::string report_csv_row(const SplittingReport& r)
{
    std::string flags;
    flags += r.hypothesis ? '1' : '0';
    flags += r.inequality_ok ? '1' : '0';
    flags += r.a0_consistent ? '1' : '0';
    std::string s;
    s += format_double(r.h);
    s += "," + format_double(r.log10_gap_direct);
    s += "," + format_double(r.log10_gap_pred);
    s += "," + format_double(r.ratio_gap);
    s += "," + format_double(1.0 + r.wh_routes_dev);
    s += "," + format_double(r.laplace_dev);
    s += "," + flags;
    s += "," + format_double(r.log10_w_direct);
    s += "," + format_double(r.log10_w_from_W);
    s += "," + format_double(r.log10_W_numeric);
    s += "," + format_double(r.log10_W_laplace);
    s += "," + format_double(r.ratio_gap_a0);
    s += "," + format_double(r.mu);
    s += "\n";
    return s;
}

std::vector<SplittingReport> run_reports(const RunConfig& cfg, const std::vector<double>& hs)
{
    MagneticProfile p = cfg.make_profile();
    WellGeometry g = cfg.make_geometry();
    PredictionConstants k = compute_constants(p, g);

    // midpoint amplitude from a fixed reference chain
    std::vector<RadialGroundState> a0_states;
    for (double h : {0.02, 0.01, 0.005}) a0_states.push_back(ground_state(h, p, g, cfg.radial));
    A0Estimate a0 = extract_a0(p, g, a0_states);

    std::vector<double> sorted = hs;
    std::sort(sorted.begin(), sorted.end(), std::greater<double>());

    std::vector<SplittingReport> reports(sorted.size());
    std::atomic<size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            size_t i = next.fetch_add(1);
            if (i >= sorted.size()) return;
            double h = sorted[i];
            RadialGroundState st = ground_state(h, p, g, cfg.radial);
            reports[i] = splitting_report(h, p, g, st, cfg.quad, k, a0.extrapolated);
        }
    };
    const int jobs = std::clamp(cfg.jobs, 1, static_cast<int>(sorted.size()));
    std::vector<std::future<void>> pool;
    for (int t = 0; t < jobs; ++t) pool.push_back(std::async(std::launch::async, worker));
    for (auto& f : pool) f.get();
    return reports;
}

void emit_reports(const std::vector<SplittingReport>& reports, const std::string& out,
                  bool json, const std::string& trailer = "")
{
    if (json) {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& r : reports) arr.push_back(nlohmann::json::parse(r.to_json()));
        emit(out, arr.dump(2) + "\n");
    } else {
        std::string s = report_csv_header();
        for (const auto& r : reports) s += report_csv_row(r);
        s += trailer;
        emit(out, s);
    }
}

int cmd_constants(const RunConfig& cfg, const std::string& out, bool json)
{
    PredictionConstants k = compute_constants(cfg.make_profile(), cfg.make_geometry());
    emit(out, json ? constants_json(k).dump(2) + "\n" : constants_csv(k));
    return 0;
}

int cmd_radial(const RunConfig& cfg, double h, const std::string& out)
{
    MagneticProfile p = cfg.make_profile();
    WellGeometry g = cfg.make_geometry();
    RadialGroundState st = ground_state(h, p, g, cfg.radial);
    std::string s = "# schema=1\n# h=" + format_double(h) + " mu=" + format_double(st.mu) +
                    " mu2=" + format_double(st.mu2) + "\nr,phi,dphi\n";
    for (size_t i = 0; i < st.r_grid.size(); ++i) {
        s += format_double(st.r_grid[i]);
        s += "," + format_double(st.phi[i]);
        s += "," + format_double(st.dphi[i]);
        s += "\n";
    }
    emit(out, s);
    return 0;
}

int cmd_grid2d(RunConfig cfg, double h, double box, double dx, const std::string& out)
{
    if (h > 0) cfg.grid_h = h;
    if (box > 0) cfg.grid.box_half = box;
    if (dx > 0) cfg.grid.dx = dx;
    MagneticProfile p = cfg.make_profile();
    WellGeometry g = cfg.make_geometry();
    Lattice lat(cfg.grid_h, p, g, cfg.grid);
    EigenResult res = lowest_eigenpairs(lat, cfg.grid);
    nlohmann::json j;
    j["h"] = cfg.grid_h;
    j["box_half"] = cfg.grid.box_half;
    j["dx"] = lat.dx();
    j["nx"] = lat.nx();
    j["lambda"] = res.lambda;
    j["residual"] = res.residual;
    j["iterations"] = res.iterations;
    j["plaquette_flux_sum"] = lat.plaquette_flux_sum();
    j["box_flux"] = lat.box_flux();
    emit(out, j.dump(2) + "\n");
    return 0;
}

int cmd_verify(const RunConfig& cfg)
{
    auto checks = run_verify_suite(cfg.make_profile(), cfg.make_geometry());
    size_t width = 0;
    for (const auto& c : checks) width = std::max(width, c.name.size());
    for (const auto& c : checks) {
        std::printf("%-*s  %s  %s\n", static_cast<int>(width), c.name.c_str(),
                    c.ok ? "PASS" : "FAIL", c.detail.c_str());
    }
    return all_ok(checks) ? 0 : 1;
}

int cmd_sweep(const RunConfig& cfg, double h_min, double h_max, int count,
              const std::string& out, bool json)
{
    std::vector<double> hs;
    for (int i = 0; i < count; ++i) {
        double t = count == 1 ? 0.0 : static_cast<double>(i) / (count - 1);
        hs.push_back(h_max * std::pow(h_min / h_max, t));
    }
    auto reports = run_reports(cfg, hs);
    PredictionConstants k = compute_constants(cfg.make_profile(), cfg.make_geometry());

    // least-squares slope of ln|w_h| against -1/h
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(reports.size());
    for (const auto& r : reports) {
        double x = -1.0 / r.h;
        double y = r.log10_w_direct * 2.302585092994045684;
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    const bool ok = std::fabs(slope / k.S - 1.0) <= 0.02;

    std::string trailer = "# fitted_slope=" + format_double(slope) + " S=" +
                          format_double(k.S) + " slope_over_S=" +
                          format_double(slope / k.S) + "\n";
    emit_reports(reports, out, json, trailer);
    std::cerr << "slope " << slope << " vs S " << k.S << " -> "
              << (ok ? "within" : "OUTSIDE") << " 2 percent\n";
    return ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"two-well magnetic tunneling laboratory"};
    app.require_subcommand(1);
    app.set_help_flag("--help", "print help");
    app.set_help_all_flag("--help-all", "print help for all subcommands");

    std::string cfg_path, out;
    bool json = false;
    int jobs = 0;
    app.add_option("--config", cfg_path, "configuration file (key = value)");
    app.add_option("--out", out, "output path (default: stdout)");
    app.add_flag("--json", json, "emit JSON instead of CSV");
    app.add_option("--jobs", jobs, "parallel workers for h sweeps");

    auto* constants = app.add_subcommand("constants", "closed-form prediction constants");
    auto* radial = app.add_subcommand("radial", "one-well radial ground state dump");
    double h_radial = 0.05;
    radial->add_option("--h", h_radial, "semiclassical parameter");

    auto* splitting = app.add_subcommand("splitting", "per-h splitting reports");
    std::vector<double> h_list;
    splitting->add_option("--h-list", h_list, "h values");

    auto* grid2d = app.add_subcommand("grid2d", "planar lattice diagnostics");
    double h_grid = 0, box = 0, dx = 0;
    grid2d->add_option("--h", h_grid, "semiclassical parameter");
    grid2d->add_option("--box", box, "box half-width");
    grid2d->add_option("--dx", dx, "lattice spacing");

    auto* verify = app.add_subcommand("verify", "identity and invariant suite");

    auto* sweep = app.add_subcommand("sweep", "h-grid sweep with slope fit");
    double h_min = 0.025, h_max = 0.1;
    int count = 7;
    sweep->add_option("--h-min", h_min, "smallest h");
    sweep->add_option("--h-max", h_max, "largest h");
    sweep->add_option("--count", count, "number of log-spaced h values");

    CLI11_PARSE(app, argc, argv);

    try {
        RunConfig cfg = load_cfg(cfg_path);
        if (jobs > 0) cfg.jobs = jobs;
        for (const auto& w : cfg.warnings) std::cerr << "warning: " << w << "\n";

        if (constants->parsed()) return cmd_constants(cfg, out, json);
        if (radial->parsed()) return cmd_radial(cfg, h_radial, out);
        if (splitting->parsed()) {
            auto hs = h_list.empty() ? cfg.h_list : h_list;
            emit_reports(run_reports(cfg, hs), out, json);
            return 0;
        }
        if (grid2d->parsed()) return cmd_grid2d(cfg, h_grid, box, dx, out);
        if (verify->parsed()) return cmd_verify(cfg);
        if (sweep->parsed()) return cmd_sweep(cfg, h_min, h_max, count, out, json);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
