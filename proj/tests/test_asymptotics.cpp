#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "magsplit/asymptotics.hpp"
#include "magsplit/quadrature.hpp"
#include "magsplit/specfun.hpp"

#include <cmath>
#include <random>

using namespace magsplit;

namespace {

MagneticProfile cfg_a() { return MagneticProfile::builtin(1.0, 2.0, 1.0, 1.0); }

PhaseData cfg_a_data()
{
    static MagneticProfile p = cfg_a();
    static WellGeometry g = make_geometry(p, 5.0);
    return make_phase_data(p, g);
}

} // namespace

TEST_CASE("gamma function fixtures")
{
    CHECK(gamma_fn(0.5) == doctest::Approx(std::sqrt(M_PI)).epsilon(1e-14));
    CHECK(gamma_fn(1.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(gamma_fn(2.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(gamma_fn(0.25) == doctest::Approx(3.62560990822).epsilon(1e-12));
    for (double x : {0.05, 0.2, 0.45, 0.8, 1.7, 2.9})
        CHECK(gamma_fn(x) == doctest::Approx(std::tgamma(x)).epsilon(1e-13));
}

TEST_CASE("z_minus: closed values and quadratic residual")
{
    PhaseData d = cfg_a_data();
    CHECK(z_minus(0, 0, d.N) == doctest::Approx(-std::sqrt(1.0 - d.N)).epsilon(1e-15));
    CHECK(z_minus(0, 0, d.N) == doctest::Approx(-0.983721398052).epsilon(1e-11));
    // root of the quadratic to 1e-14 over a sample
    for (double s1 : {0.0, 0.5, 1.0, 3.0}) {
        for (double s2 : {0.0, 0.7, 2.0}) {
            double c = 1 + s1 + s2;
            double z = z_minus(s1, s2, d.N);
            double res = z * z - (c - 1) / c * z + (d.N - 1) / c;
            CHECK(std::fabs(res) < 1e-14);
            CHECK(z < 0);
            CHECK(std::fabs(z) <= 1.0 / c + 1e-15);
        }
    }
    // bisection oracle for s=(1,1), N=0.2: root of z^2 - (2/3) z - 0.8/3
    {
        double lo = -1.0, hi = 0.0;
        auto q = [](double z) { return z * z - (2.0 / 3.0) * z - 0.8 / 3.0; };
        for (int i = 0; i < 200; ++i) {
            double mid = 0.5 * (lo + hi);
            if (q(mid) > 0) lo = mid;
            else hi = mid;
        }
        CHECK(z_minus(1, 1, 0.2) == doctest::Approx(0.5 * (lo + hi)).epsilon(1e-13));
    }
    CHECK_THROWS_AS(z_minus(0, 0, 1.5), std::domain_error);
    CHECK_THROWS_AS(z_minus(0, 0, 0.0), std::domain_error);
    // N -> 1: z -> 0
    CHECK(std::fabs(z_minus(0, 0, 1.0 - 1e-12)) < 2e-6);
}

TEST_CASE("dz_minus: closed value at 0, positivity, finite differences")
{
    CHECK(dz_minus_at_zero(0.36) == doctest::Approx(0.9).epsilon(1e-15));
    CHECK(dz_minus_at_zero(1.0 - 1e-14) == doctest::Approx(0.5).epsilon(1e-7));
    CHECK(dz_minus_at_zero(1e-14) == doctest::Approx(1.0).epsilon(1e-7));
    PhaseData d = cfg_a_data();
    CHECK(dz_minus(0, 0, d.N) == doctest::Approx(dz_minus_at_zero(d.N)).epsilon(1e-13));
    CHECK(dz_minus(0, 0, d.N) == doctest::Approx(0.991860699026).epsilon(1e-11));
    for (double s1 : {0.0, 0.4, 1.7}) {
        for (double s2 : {0.0, 1.1}) {
            double a = dz_minus(s1, s2, d.N);
            CHECK(a > 0);
            double e = 1e-6;
            bool interior = s1 > e;
            double fd = (z_minus(s1 + e, s2, d.N) - z_minus(interior ? s1 - e : 0, s2, d.N)) /
                        (interior ? 2 * e : e);
            CHECK(a == doctest::Approx(fd).epsilon(interior ? 1e-8 : 1e-5));
        }
    }
}

TEST_CASE("psi: critical point identities")
{
    PhaseData d = cfg_a_data();
    for (double s1 : {0.0, 0.5, 2.0}) {
        for (double s2 : {0.0, 1.0}) {
            double z = z_minus(s1, s2, d.N);
            // dpsi/dy at i z_- vanishes: central difference in complex y
            std::complex<double> iz(0, z);
            double e = 1e-6;
            auto dnum = (psi(s1, s2, iz + e, d) - psi(s1, s2, iz - e, d)) / (2 * e);
            CHECK(std::abs(dnum) < 1e-9 * std::max(1.0, std::abs(psi(s1, s2, iz, d))));
            // Im d2psi/dy2 at the critical point vanishes
            CHECK(std::fabs(d2psi_dy2(s1, s2, iz, d).imag()) < 1e-12);
        }
    }
    // near-zero deficit: psi reduces to its polynomial part on the real line
    PhaseData d0 = d;
    d0.absM = 0.0;
    d0.N = 0.0;
    std::complex<double> v = psi(0.3, 0.1, 0.7, d0);
    double A = d0.b1L2_over_8();
    CHECK(v.real() == doctest::Approx(A * 1.4 * (1 + 0.49)).epsilon(1e-14));
    CHECK(v.imag() == doctest::Approx(2 * A * 0.7).epsilon(1e-14));
}

TEST_CASE("omega: critical zero and linearization")
{
    PhaseData d = cfg_a_data();
    double z0 = z_minus(0, 0, d.N);
    CHECK(std::abs(omega(0, 0, std::complex<double>(0, z0), d)) < 1e-14);
    // linearization -sqrt(1-N)(s1+s2) - 2 s1 by finite differences
    const double root = std::sqrt(1.0 - d.N);
    const double e = 1e-6;
    auto at = [&](double s1, double s2) {
        double z = z_minus(s1, s2, d.N);
        return omega(s1, s2, std::complex<double>(0, z), d).real();
    };
    double g1 = (at(e, 0) - at(0, 0)) / e;
    double g2 = (at(0, e) - at(0, 0)) / e;
    CHECK(g1 == doctest::Approx(-root - 2.0).epsilon(1e-5));
    CHECK(g2 == doctest::Approx(-root).epsilon(1e-5));
    // omega is real on the critical set
    double zi = z_minus(0.8, 0.2, d.N);
    CHECK(std::fabs(omega(0.8, 0.2, std::complex<double>(0, zi), d).imag()) < 1e-14);
    CHECK_THROWS_AS(omega(0, 0, std::complex<double>(0, 1.0), d), std::domain_error);
}

TEST_CASE("F: value, gradient, Hessian")
{
    PhaseData d = cfg_a_data();
    auto g0 = grad_F(0, 0, d);
    CHECK(std::fabs(g0[0]) < 1e-12);
    CHECK(std::fabs(g0[1]) < 1e-12);
    CHECK(F(0, 0, d) == doctest::Approx(F_at_zero(d)).epsilon(1e-13));
    CHECK(F_at_zero(d) == doctest::Approx(12.2218520007).epsilon(1e-11));
    CHECK(F_at_zero(d) >= d.b1L2_over_8());

    // gradient against finite differences of F
    for (double s1 : {0.3, 1.2}) {
        for (double s2 : {0.1, 2.0}) {
            auto g = grad_F(s1, s2, d);
            double e = 1e-6;
            CHECK(g[0] == doctest::Approx((F(s1 + e, s2, d) - F(s1 - e, s2, d)) / (2 * e))
                              .epsilon(1e-7));
            CHECK(g[1] == doctest::Approx((F(s1, s2 + e, d) - F(s1, s2 - e, d)) / (2 * e))
                              .epsilon(1e-7));
        }
    }
    // Hessian: off-diagonal relation and finite differences of grad_F
    for (double s1 : {0.0, 0.6}) {
        for (double s2 : {0.0, 1.4}) {
            auto H = hess_F(s1, s2, d);
            CHECK(H[0][1] == doctest::Approx(H[0][0] - d.absM / ((1 + s1) * (1 + s1)))
                                 .epsilon(1e-12));
            CHECK(H[0][1] == doctest::Approx(H[1][1] - d.absM / ((1 + s2) * (1 + s2)))
                                 .epsilon(1e-12));
            double e = 1e-6;
            auto gp = grad_F(s1 + e, s2, d);
            auto gm = grad_F(s1 > e ? s1 - e : 0, s2, d);
            double den = s1 > e ? 2 * e : e;
            double tol = s1 > e ? 1e-6 : 1e-4;
            CHECK(H[0][0] == doctest::Approx((gp[0] - gm[0]) / den).epsilon(tol));
            CHECK(H[1][0] == doctest::Approx((gp[1] - gm[1]) / den).epsilon(tol));
            // positive definite
            CHECK(H[0][0] > 0);
            CHECK(H[0][0] * H[1][1] - H[0][1] * H[1][0] > 0);
        }
    }
}

TEST_CASE("F is convex along rays and minimized at the origin")
{
    PhaseData d = cfg_a_data();
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (int trial = 0; trial < 8; ++trial) {
        double ux = uni(rng), uy = uni(rng);
        double n = std::hypot(ux, uy);
        ux /= n;
        uy /= n;
        double prev = F(0, 0, d), prev_diff = 0;
        for (int i = 1; i <= 10; ++i) {
            double t = 0.3 * i;
            double v = F(t * ux, t * uy, d);
            double diff = v - prev;
            if (i > 1) CHECK(diff > prev_diff); // strictly convex along the ray
            prev = v;
            prev_diff = diff;
        }
    }
    // descent from random starts lands at the origin
    for (int trial = 0; trial < 5; ++trial) {
        double s1 = 3.0 * uni(rng), s2 = 3.0 * uni(rng);
        for (int it = 0; it < 8000; ++it) {
            auto g = grad_F(s1, s2, d);
            s1 = std::max(0.0, s1 - 0.02 * g[0]);
            s2 = std::max(0.0, s2 - 0.02 * g[1]);
        }
        CHECK(std::hypot(s1, s2) < 1e-4);
    }
}

TEST_CASE("curvature lower bound along shifted lines")
{
    PhaseData d = cfg_a_data();
    const double bound = 2.0 * d.b1L2_over_8() * (1.0 - d.N);
    for (double s1 : {0.0, 1.0, 5.0}) {
        for (double s2 : {0.0, 2.5, 5.0}) {
            double z = z_minus(s1, s2, d.N);
            for (double y : {-10.0, -1.0, -0.05, 0.0, 0.3, 2.0, 10.0}) {
                auto val = d2psi_dy2(s1, s2, std::complex<double>(y, z), d);
                CHECK(val.real() >= bound - 1e-9);
            }
        }
    }
}

TEST_CASE("constant I: limits, fixture, integral form")
{
    MagneticProfile p = cfg_a();
    WellGeometry g = make_geometry(p, 5.0);
    PhaseData d = make_phase_data(p, g);
    ConstantI ci = constant_I(p, g, d);
    CHECK(ci.closed == doctest::Approx(5.97185200070).epsilon(1e-11));
    CHECK(ci.closed == doctest::Approx(ci.integral_form).epsilon(1e-10));
    CHECK(ci.closed > 0);
    // N -> 1 and N -> 0 limits of the closed form
    auto closed = [&](double N) {
        double root = std::sqrt(1.0 - N);
        return 2.0 * d.b1L2_over_8() * (0.5 * (N - 1.0) + root - N * std::log1p(root));
    };
    CHECK(std::fabs(closed(1.0 - 1e-12)) < 1e-9);
    CHECK(closed(1e-14) == doctest::Approx(d.b1L2_over_8()).epsilon(1e-10));
}

TEST_CASE("c0: sign, fixture, Gaussian-moment oracle")
{
    PhaseData d = cfg_a_data();
    const double c0 = constant_c0(d);
    CHECK(c0 < 0.0);
    CHECK(c0 == doctest::Approx(-1.63676076474).epsilon(1e-10));

    // curvature at the critical point: numeric value against the closed bound
    double z0 = z_minus(0, 0, d.N);
    double red2 = d2psi_dy2(0, 0, std::complex<double>(0, z0), d).real();
    CHECK(red2 >= 2.0 * d.b1L2_over_8() * (1.0 - d.N) - 1e-12);

    // brute-force oracle: 2D quadrature of the corner Gaussian moment with the
    // s = sigma^(1/delta0) substitution softening the endpoint singularity
    auto H = hess_F(0, 0, d);
    const double root = std::sqrt(1.0 - d.N);
    const double pw = 1.0 / d.delta0;
    const double smax = std::sqrt(90.0 / d.absM);
    const double sigmax = std::pow(smax, d.delta0);
    const GLRule& rule = gl_rule(64);
    const int panels = 12;
    double total = 0;
    const double w = sigmax / panels;
    for (int pa = 0; pa < panels; ++pa) {
        for (int i = 0; i < 64; ++i) {
            double sig1 = (pa + 0.5 * (1 + rule.x[i])) * w;
            double w1 = 0.5 * w * rule.w[i];
            double s1 = std::pow(sig1, pw);
            for (int pb = 0; pb < panels; ++pb) {
                for (int j = 0; j < 64; ++j) {
                    double sig2 = (pb + 0.5 * (1 + rule.x[j])) * w;
                    double w2 = 0.5 * w * rule.w[j];
                    double s2 = std::pow(sig2, pw);
                    double q = 0.5 * (H[0][0] * s1 * s1 + 2 * H[0][1] * s1 * s2 +
                                      H[1][1] * s2 * s2);
                    if (q > 600) continue;
                    total += w1 * w2 * (root * (s1 + s2) + 2 * s1) * std::exp(-q) * pw * pw;
                }
            }
        }
    }
    double oracle = -std::sqrt(2.0 * M_PI / red2) * total;
    CHECK(oracle == doctest::Approx(c0).epsilon(1e-6));
}

TEST_CASE("gap prediction: exponent identity and factor two")
{
    MagneticProfile p = cfg_a();
    WellGeometry g = make_geometry(p, 5.0);
    PredictionConstants k = compute_constants(p, g);
    CHECK(k.c == doctest::Approx(1.21841524164).epsilon(1e-10));
    CHECK(1.0 - k.delta0 == 0.5 + k.b0 / (2.0 * k.b1)); // exact for CFG-A
    for (double h : {0.1, 0.05, 0.02}) {
        LogReal gap = gap_prediction(h, k);
        LogReal wh = wh_prediction(h, k);
        CHECK(gap.sgn == 1);
        CHECK(wh.sgn == -1);
        CHECK(gap.log_mag == doctest::Approx(wh.log_mag + std::log(2.0)).epsilon(1e-13));
    }
    // log10 of the predicted gap at h = 0.05, frozen from the closed form
    LogReal gap05 = gap_prediction(0.05, k);
    CHECK(gap05.log10() ==
          doctest::Approx((std::log(k.c) - k.S / 0.05 + 0.75 * std::log(0.05)) /
                          std::log(10.0))
              .epsilon(1e-12));
}
