#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "magsplit/quadrature.hpp"
#include "magsplit/tridiag.hpp"
#include "magsplit/logspace.hpp"

#include <cmath>
#include <random>

using namespace magsplit;

TEST_CASE("adaptive GK on smooth and peaked integrands")
{
    auto r1 = integrate_gk([](double x) { return std::exp(-x * x); }, -8.0, 8.0, 1e-14);
    CHECK(r1.value == doctest::Approx(std::sqrt(M_PI)).epsilon(1e-13));

    // narrow peak needing adaptivity
    auto r2 = integrate_gk([](double x) { return 1.0 / (1e-6 + x * x); }, -1.0, 1.0, 1e-9);
    double ref = 2.0 * std::atan(1e3) * 1e3;
    CHECK(r2.value == doctest::Approx(ref).epsilon(1e-10));

    // oscillatory
    auto r3 = integrate_gk([](double x) { return std::cos(50.0 * x); }, 0.0, 1.0, 1e-13);
    CHECK(r3.value == doctest::Approx(std::sin(50.0) / 50.0).epsilon(1e-11));
}

TEST_CASE("Gauss-Legendre weights integrate polynomials exactly")
{
    for (int n : {4, 8, 16, 32}) {
        const GLRule& r = gl_rule(n);
        double sw = 0;
        for (double w : r.w) sw += w;
        CHECK(sw == doctest::Approx(2.0).epsilon(1e-14));
        // degree 2n-1 monomial
        int p = 2 * n - 2; // even power for a nonzero integral
        double s = 0;
        for (int i = 0; i < n; ++i) s += r.w[i] * std::pow(r.x[i], p);
        CHECK(s == doctest::Approx(2.0 / (p + 1)).epsilon(1e-12));
    }
}

TEST_CASE("BigFloat Gauss-Legendre matches double rule and high-precision moments")
{
    const int limbs = 6;
    const GLRuleBig& rb = gl_rule_big(8, limbs);
    const GLRule& rd = gl_rule(8);
    for (int i = 0; i < 8; ++i) {
        CHECK(rb.x[i].to_double() == doctest::Approx(rd.x[i]).epsilon(1e-14));
        CHECK(rb.w[i].to_double() == doctest::Approx(rd.w[i]).epsilon(1e-14));
    }
    // moment of degree 14 must hold at BigFloat accuracy
    BigFloat s(limbs);
    for (int i = 0; i < 8; ++i) {
        BigFloat p = rb.w[i];
        for (int k = 0; k < 14; ++k) p = p * rb.x[i];
        s += p;
    }
    BigFloat ref = BigFloat(2.0, limbs).div_uint(15);
    BigFloat err = s - ref;
    if (!err.is_zero()) CHECK(err.exponent2() < -64 * (limbs - 1) + 16);
}

TEST_CASE("Gauss-Jacobi rule reproduces singular-weight moments")
{
    for (double delta : {0.05, 0.25, 0.49}) {
        for (int n : {8, 32, 96}) {
            JacobiRule r = gauss_jacobi01(n, delta);
            for (int k : {0, 1, 2, 7}) {
                double s = 0;
                for (int i = 0; i < n; ++i) s += r.w[i] * std::pow(r.t[i], k);
                CHECK(s == doctest::Approx(1.0 / (delta + k)).epsilon(1e-12));
            }
            // integral of exp against the weight, vs adaptive reference with
            // the singularity softened by substitution t = u^(1/delta)
            double s = 0;
            for (int i = 0; i < n; ++i) s += r.w[i] * std::exp(-3.0 * r.t[i]);
            auto ref = integrate_gk(
                [&](double u) {
                    double t = std::pow(u, 1.0 / delta);
                    return std::exp(-3.0 * t) / delta;
                },
                0.0, 1.0, 1e-14);
            if (n >= 32) CHECK(s == doctest::Approx(ref.value).epsilon(1e-12));
        }
    }
}

TEST_CASE("tridiagonal Sturm count, bisection, inverse iteration")
{
    // discrete 1D Laplacian on n points: eigenvalues 2-2cos(k pi/(n+1))
    const int n = 500;
    Tridiag T;
    T.diag.assign(n, 2.0);
    T.off.assign(n - 1, -1.0);
    auto exact = [&](int k) { return 2.0 - 2.0 * std::cos((k + 1) * M_PI / (n + 1)); };
    CHECK(sturm_count(T, exact(0) - 1e-9) == 0);
    CHECK(sturm_count(T, exact(0) + 1e-9) == 1);
    CHECK(sturm_count(T, exact(4) + 1e-9) == 5);
    for (int k : {0, 1, 7}) {
        double lam = bisect_eigenvalue(T, k);
        CHECK(lam == doctest::Approx(exact(k)).epsilon(1e-12));
    }
    // inverse iteration near the ground state
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = 1.0 + 0.001 * i;
    double mu = inverse_iteration(T, exact(0) - 1e-7, v, 4);
    CHECK(mu == doctest::Approx(exact(0)).epsilon(1e-12));
    // eigenvector shape sin(pi x)
    double scale = v[1] / std::sin(2.0 * M_PI / (n + 1));
    for (int i : {10, 100, 250, 400}) {
        double ref = scale * std::sin((i + 1) * M_PI / (n + 1));
        CHECK(v[i] == doctest::Approx(ref).epsilon(1e-8));
    }
}

TEST_CASE("shifted solve handles indefinite shifts via pivoting")
{
    const int n = 200;
    Tridiag T;
    T.diag.assign(n, 2.0);
    T.off.assign(n - 1, -1.0);
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    std::vector<double> x(n), b(n);
    for (int i = 0; i < n; ++i) x[i] = uni(rng);
    const double sigma = 1.9; // interior of the spectrum
    // b = (T - sigma) x
    for (int i = 0; i < n; ++i) {
        b[i] = (T.diag[i] - sigma) * x[i];
        if (i > 0) b[i] += T.off[i - 1] * x[i - 1];
        if (i + 1 < n) b[i] += T.off[i] * x[i + 1];
    }
    solve_shifted(T, sigma, b);
    for (int i = 0; i < n; ++i) CHECK(b[i] == doctest::Approx(x[i]).epsilon(1e-9));
}

TEST_CASE("log-space arithmetic and rescaling sums")
{
    LogReal a = LogReal::from_value(-3.0);
    LogReal b = LogReal::from_value(7.0);
    CHECK((a * b).value() == doctest::Approx(-21.0));
    CHECK((a + b).value() == doctest::Approx(4.0));
    CHECK((b / a).value() == doctest::Approx(-7.0 / 3.0));

    // huge dynamic range: sum exp(-1000) + exp(-1001) in log space
    LogComplexSum s;
    s.add(-1000.0, {1.0, 0.0});
    s.add(-1001.0, {1.0, 0.0});
    LogComplex r = s.result();
    CHECK(r.log_mag == doctest::Approx(-1000.0 + std::log1p(std::exp(-1.0))).epsilon(1e-14));

    // cancellation to a tiny residual is representable
    LogComplexSum s2;
    s2.add(0.0, {1.0, 0.0});
    s2.add(0.0, {-1.0, 1e-9});
    LogComplex r2 = s2.result();
    CHECK(r2.log_mag == doctest::Approx(std::log(1e-9)).epsilon(1e-9));
    CHECK(std::abs(r2.phase - std::complex<double>(0, 1)) < 1e-12);
}
