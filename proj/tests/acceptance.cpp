// Acceptance suite: one test case per criterion, each printing a PASS/FAIL
// line. Reference configuration: b0=1, b1=2, a=1, L=5, kappa=1.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "magsplit/grid2d.hpp"
#include "magsplit/interaction.hpp"
#include "magsplit/verify.hpp"
#include "magsplit/wkb.hpp"

#include <cmath>
#include <cstdio>
#include <map>

using namespace magsplit;

namespace {

struct Shared {
    MagneticProfile p = MagneticProfile::builtin(1.0, 2.0, 1.0, 1.0);
    WellGeometry g;
    PhaseData d;
    PredictionConstants k;
    QuadratureConfig q;
    RadialSolverConfig rc;
    std::map<double, RadialGroundState> states;
    std::map<double, WhDirectResult> wh;

    Shared()
    {
        g = make_geometry(p, 5.0);
        d = make_phase_data(p, g);
        k = compute_constants(p, g);
        rc.n = 40000;
    }
    RadialGroundState& state(double h)
    {
        auto it = states.find(h);
        if (it == states.end()) it = states.emplace(h, ground_state(h, p, g, rc)).first;
        return it->second;
    }
    WhDirectResult& whd(double h)
    {
        auto it = wh.find(h);
        if (it == wh.end()) it = wh.emplace(h, wh_direct(h, state(h), p, g, q)).first;
        return it->second;
    }
    double route_dev(double h)
    {
        WhDirectResult& wd = whd(h);
        KummerParams kp = KummerParams::make(h, p.b1(), p.flux_deficit(), state(h).mu);
        ExteriorSolution sol(kp, g.L, wd.phi_mid, q.jacobi_order);
        LogComplex Wn = Wh_numeric(h, kp, d, q);
        LogComplex wfw = wh_from_Wh(h, sol.logC(), kp, d, Wn);
        return std::abs(wd.w.ratio_to(wfw) - std::complex<double>(1, 0));
    }
    double laplace_dev(double h)
    {
        KummerParams kp = KummerParams::make(h, p.b1(), p.flux_deficit(), state(h).mu);
        LogComplex Wn = Wh_numeric(h, kp, d, q);
        LogReal Wl = Wh_laplace(h, d);
        return std::abs(Wn.ratio_to(LogComplex::from_log_real(Wl)) -
                        std::complex<double>(1, 0));
    }
    double gap_ratio(double h)
    {
        return std::exp(whd(h).w.log_mag + std::log(2.0) - gap_prediction(h, k).log_mag);
    }
};

Shared& sh()
{
    static Shared s;
    return s;
}

void report(int n, bool ok, const std::string& detail)
{
    std::printf("[criterion %d] %s  %s\n", n, ok ? "PASS" : "FAIL", detail.c_str());
    std::fflush(stdout);
}

} // namespace

TEST_CASE("criterion 1: identity suite")
{
    auto checks = run_verify_suite(sh().p, sh().g);
    int pass = 0;
    for (const auto& c : checks) pass += c.ok ? 1 : 0;
    bool ok = all_ok(checks);
    // the named sub-identities of this criterion
    ConstantI ci = constant_I(sh().p, sh().g, sh().d);
    AgmonData ag = exponent_S(sh().p, sh().g, ci.closed, sh().d.N);
    ok = ok && std::fabs(ci.closed - ci.integral_form) <= 1e-9 * std::fabs(ci.closed);
    ok = ok && 2.0 * ag.S0 > ag.S;
    ok = ok && ag.inequality_ok;
    ok = ok && std::fabs((1.0 - sh().d.delta0) -
                         (0.5 + sh().p.b0() / (2.0 * sh().p.b1()))) < 1e-15;
    report(1, ok,
           std::to_string(pass) + "/" + std::to_string(checks.size()) +
               " identity checks green; I forms agree, 2 S0 > S, inequality holds, "
               "exponent identity exact");
    CHECK(ok);
}

TEST_CASE("criterion 2: radial vs Kummer exterior representation")
{
    const double h = 0.05;
    RadialGroundState& st = sh().state(h);
    KummerParams kp = KummerParams::make(h, sh().p.b1(), sh().p.flux_deficit(), st.mu);
    ExteriorSolution sol(kp, sh().g.L, st.log_phi(0.5 * sh().g.L));
    double worst = 0;
    for (double r = 1.1; r <= 5.0 + 1e-9; r += 0.02) {
        auto [v, dv] = sol.value(r, sh().p.a());
        double rel = std::fabs(std::expm1(v.log_mag - st.log_phi(r).log_mag));
        worst = std::max(worst, rel);
    }
    double worst_res = 0;
    for (double r : {1.2, 1.8, 2.5, 3.3, 4.2, 4.9})
        worst_res = std::max(worst_res, sol.ode_residual(r, sh().p.flux_deficit(), st.mu));
    bool ok = worst <= 1e-5 && worst_res <= 1e-8;
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "max relative difference %.2e (<= 1e-5), ODE residual %.2e (<= 1e-8)",
                  worst, worst_res);
    report(2, ok, buf);
    CHECK(worst <= 1e-5);
    CHECK(worst_res <= 1e-8);
}

TEST_CASE("criterion 3: eigenvalue expansion coefficient")
{
    // As stated the target is 2 d0 + d1 = 2 beta'(0)/b0 = 4. Two independent
    // routes (outward shooting at fixed mu and the matrix spectrum checked
    // against scipy-grade bisection) both give the ground-state coefficient
    // beta'(0)/b0 = 2, so this criterion documents a defect in the stated
    // constant; it is asserted faithfully and expected to fail.
    RadialSolverConfig fine;
    fine.n = 80000;
    const double h = 0.005;
    RadialGroundState st = ground_state(h, sh().p, sh().g, fine);
    const double coeff = (st.mu - sh().p.b0() * h) / (h * h);
    const double stated = 4.0;
    const double corrected = eigenvalue_expansion(sh().p).mu1_coeff();
    const bool ok_stated = std::fabs(coeff - stated) <= 0.05 * stated;
    const bool ok_corrected = std::fabs(coeff - corrected) <= 0.05 * corrected;
    char buf[220];
    std::snprintf(buf, sizeof buf,
                  "measured (mu-b0 h)/h^2 = %.4f vs stated 4 (|dev| %.0f%%); corrected "
                  "target beta'(0)/b0 = %.1f agrees to %.2f%%",
                  coeff, 100.0 * std::fabs(coeff - stated) / stated, corrected,
                  100.0 * std::fabs(coeff - corrected) / corrected);
    report(3, ok_stated, buf);
    CHECK(ok_corrected); // the solver itself is validated
    CHECK(ok_stated);    // faithful assertion of the stated target
}

TEST_CASE("criterion 4: end-to-end integral identity")
{
    bool ok = true;
    std::string detail;
    for (double h : {0.1, 0.05, 0.025}) {
        double dev = sh().route_dev(h);
        ok = ok && dev <= 1e-4;
        char buf[64];
        std::snprintf(buf, sizeof buf, "h=%g: %.2e  ", h, dev);
        detail += buf;
        CHECK(dev <= 1e-4);
    }
    report(4, ok, "|wh_direct/wh_from_Wh - 1| " + detail + "(<= 1e-4)");
}

TEST_CASE("criterion 5: contour and Laplace steps")
{
    ContourCheckResult c0 = contour_check(0.0, 0.0, 0.1, sh().d, sh().q);
    ContourCheckResult c1 = contour_check(1.0, 0.5, 0.1, sh().d, sh().q);
    bool ok = c0.rel_diff <= 1e-8 && c1.rel_diff <= 1e-8;
    CHECK(c0.rel_diff <= 1e-8);
    CHECK(c1.rel_diff <= 1e-8);
    double prev = 1e300;
    std::string seq;
    for (double h : {0.1, 0.05, 0.025}) {
        double dev = sh().laplace_dev(h);
        ok = ok && dev < prev;
        CHECK(dev < prev);
        prev = dev;
        char buf[48];
        std::snprintf(buf, sizeof buf, "%.3f ", dev);
        seq += buf;
    }
    char buf[200];
    std::snprintf(buf, sizeof buf,
                  "contour diffs %.1e, %.1e (<= 1e-8); |W_num/W_lap - 1| decreasing: %s",
                  c0.rel_diff, c1.rel_diff, seq.c_str());
    report(5, ok, buf);
}

TEST_CASE("criterion 6: theorem convergence trend and the a0 diagnostic")
{
    const std::vector<double> chain{0.1, 0.05, 0.025, 0.0125};
    std::vector<double> R;
    for (double h : chain) R.push_back(sh().gap_ratio(h));
    bool decreasing = true;
    std::string seq;
    for (size_t i = 0; i + 1 < R.size(); ++i) {
        double d = std::fabs(R[i] - R[i + 1]);
        if (i > 0 && d >= std::fabs(R[i - 1] - R[i])) decreasing = false;
        char buf[48];
        std::snprintf(buf, sizeof buf, "%.4f ", d);
        seq += buf;
    }
    // sqrt(h)-model extrapolation through the three smallest h
    auto fit3 = [&](double h1, double R1, double h2, double R2, double h3, double R3) {
        // R = R0 + A sqrt(h) + B h
        double x1 = std::sqrt(h1), x2 = std::sqrt(h2), x3 = std::sqrt(h3);
        double d21 = (R2 - R1) / (x2 - x1);
        double d32 = (R3 - R2) / (x3 - x2);
        double B = (d32 - d21) / (x3 - x1);
        double A = d21 - B * (x1 + x2);
        return R1 - A * x1 - B * h1;
    };
    const double R0 = fit3(chain[1], R[1], chain[2], R[2], chain[3], R[3]);

    std::vector<RadialGroundState> a0_states;
    for (double h : {0.02, 0.01, 0.005}) a0_states.push_back(sh().state(h));
    A0Estimate a0 = extract_a0(sh().p, sh().g, a0_states);
    const double two_pi_a0sq = 2.0 * M_PI * a0.extrapolated * a0.extrapolated;
    const double match = R0 / two_pi_a0sq;
    const bool a0_consistent = std::fabs(match - 1.0) <= 0.02;
    const bool unit_constant = std::fabs(R0 - 1.0) <= 0.02;

    bool ok = decreasing && a0_consistent;
    char buf[320];
    std::snprintf(buf, sizeof buf,
                  "R(h) = %.4f %.4f %.4f %.4f; |R(h)-R(h/2)| = %s(decreasing: %s); "
                  "extrapolated R = %.4f vs 2 pi a0^2 = %.4f (ratio %.4f); theorem "
                  "constant %s: measured 2 pi a0(0)^2 = %.4f, not 1",
                  R[0], R[1], R[2], R[3], seq.c_str(), decreasing ? "yes" : "no", R0,
                  two_pi_a0sq, match,
                  unit_constant ? "confirmed as printed" : "carries the a0 discrepancy",
                  two_pi_a0sq);
    report(6, ok, buf);
    CHECK(decreasing);
    CHECK(a0_consistent);
}

TEST_CASE("criterion 7: slope of log|w_h| against -1/h")
{
    std::vector<double> hs{0.1, 0.0707, 0.05, 0.0354, 0.025};
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (double h : hs) {
        double x = -1.0 / h;
        double y = sh().whd(h).w.log_mag;
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double n = static_cast<double>(hs.size());
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    const double rel = std::fabs(slope / sh().k.S - 1.0);
    bool ok = rel <= 0.02;
    char buf[120];
    std::snprintf(buf, sizeof buf, "fitted slope %.5f vs S = %.5f (off by %.2f%%)", slope,
                  sh().k.S, 100.0 * rel);
    report(7, ok, buf);
    CHECK(ok);
}

TEST_CASE("criterion 8: planar lattice diagnostics")
{
    Grid2DParams par;
    par.box_half = 6.0;
    par.dx = 0.03; // 400 x 400 cells
    par.n_eig = 3;
    const double h = 0.5;
    Lattice lat(h, sh().p, sh().g, par);
    EigenResult res = lowest_eigenpairs(lat, par);

    RadialSolverConfig rc;
    rc.n = 20000;
    RadialGroundState st = ground_state(h, sh().p, sh().g, rc);

    const double mu_rel = std::fabs(res.lambda[0] / st.mu - 1.0);
    const bool two_level =
        res.lambda[1] - res.lambda[0] <= 1e-3 * (res.lambda[2] - res.lambda[0]);
    const double flux_dev = std::fabs(lat.plaquette_flux_sum() - lat.box_flux());

    Lattice lat2(h, sh().p, sh().g, par);
    lat2.gauge_transform(98765);
    EigenResult res2 = lowest_eigenpairs(lat2, par);
    double gauge_dev = 0;
    for (int i = 0; i < 3; ++i)
        gauge_dev = std::max(gauge_dev, std::fabs(res.lambda[i] - res2.lambda[i]));

    bool ok = mu_rel <= 0.01 && two_level && gauge_dev <= 1e-12 && flux_dev <= 1e-10;
    char buf[300];
    std::snprintf(buf, sizeof buf,
                  "lambda1 vs mu: %.3f%% (<= 1%%); (l2-l1)/(l3-l1) = %.2e (<= 1e-3); "
                  "gauge deviation %.2e (<= 1e-12); flux telescoping %.2e; the gap itself "
                  "is ~1e-10 relative here and is validated only via criteria 4-7",
                  100.0 * mu_rel,
                  (res.lambda[1] - res.lambda[0]) / (res.lambda[2] - res.lambda[0]),
                  gauge_dev, flux_dev);
    report(8, ok, buf);
    CHECK(mu_rel <= 0.01);
    CHECK(two_level);
    CHECK(gauge_dev <= 1e-12);
}
