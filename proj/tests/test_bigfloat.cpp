#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "magsplit/bigfloat.hpp"

#include <cmath>
#include <random>

using magsplit::BigFloat;

namespace {

// compare a BigFloat against a double reference with relative tolerance
void check_close(const BigFloat& x, double ref, double rtol = 1e-14)
{
    if (ref == 0.0) {
        CHECK(std::fabs(x.to_double()) <= rtol);
    } else {
        CHECK(x.to_double() == doctest::Approx(ref).epsilon(rtol));
    }
}

} // namespace

TEST_CASE("construction and conversion round-trips")
{
    std::mt19937_64 rng(12345);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    for (int i = 0; i < 200; ++i) {
        double x = uni(rng) * std::pow(10.0, (i % 41) - 20);
        BigFloat b(x, 3);
        CHECK(b.to_double() == x); // doubles embed exactly
    }
    CHECK(BigFloat(0.0, 2).is_zero());
    CHECK(BigFloat::from_int64(-7, 2).to_double() == -7.0);
    CHECK(BigFloat::from_int64(1, 2).to_double() == 1.0);
    CHECK(BigFloat::from_int64((1LL << 62) + 1, 2).to_double() == std::ldexp(1.0, 62));
}

TEST_CASE("field operations agree with double at matching precision")
{
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> uni(-10.0, 10.0);
    for (int i = 0; i < 500; ++i) {
        double a = uni(rng), b = uni(rng);
        if (std::fabs(b) < 1e-3) b += 1.0;
        BigFloat A(a, 4), B(b, 4);
        check_close(A + B, a + b, 1e-15);
        check_close(A - B, a - b, 1e-13);
        check_close(A * B, a * b, 1e-15);
        check_close(A / B, a / b, 1e-15);
    }
}

TEST_CASE("exact embedded integer arithmetic")
{
    BigFloat a = BigFloat::from_int64(123456789012345LL, 4);
    BigFloat b = BigFloat::from_int64(987654321LL, 4);
    BigFloat p = a * b;
    // 123456789012345 * 987654321 = 121932631124827861592745
    CHECK(p.to_decimal(27) == "1.21932631124827861592745000e23");
    CHECK((a - a).is_zero());
    CHECK(a.div_uint(5).mul_uint(5).cmp(a) == 0);
}

TEST_CASE("comparisons and rounding to integer")
{
    BigFloat half(0.5, 2), one(1.0, 2), mone(-1.0, 2);
    CHECK(half < one);
    CHECK(mone < half);
    CHECK(half.round_to_int64() == 1);
    CHECK(BigFloat(0.49, 2).round_to_int64() == 0);
    CHECK(BigFloat(-2.5001, 2).round_to_int64() == -3);
    CHECK(BigFloat(1234.4, 2).round_to_int64() == 1234);
    CHECK(BigFloat(1e15 + 0.75, 2).round_to_int64() == 1000000000000001LL);
}

TEST_CASE("pi and ln2 to 120 digits")
{
    // reference digits from standard tables
    const std::string pi_ref =
        "3.14159265358979323846264338327950288419716939937510"
        "582097494459230781640628620899862803482534211706798214808651328";
    const std::string ln2_ref =
        "6.93147180559945309417232121458176568075500134360255"
        "254120680009493393621969694715605863326996418687542001481021e-1";
    BigFloat pi = magsplit::const_pi(9);  // 576 bits ~ 173 digits
    BigFloat l2 = magsplit::const_ln2(9);
    CHECK(pi.to_decimal(110).substr(0, 100) == pi_ref.substr(0, 100));
    std::string l2s = l2.to_decimal(110);
    CHECK(l2s.substr(0, 95) == ln2_ref.substr(0, 95));
}

TEST_CASE("sqrt against identities at high precision")
{
    const int limbs = 10; // 640 bits
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> uni(0.01, 100.0);
    for (int i = 0; i < 20; ++i) {
        BigFloat x(uni(rng), limbs);
        BigFloat r = magsplit::sqrt(x);
        BigFloat err = r * r - x;
        if (!err.is_zero()) {
            CHECK(err.exponent2() - x.exponent2() < -64 * (limbs - 1) + 8);
        }
    }
    check_close(magsplit::sqrt(BigFloat(2.0, 4)), std::sqrt(2.0), 1e-15);
}

TEST_CASE("exp and log at high precision")
{
    // e to 60 digits
    BigFloat e = magsplit::exp(BigFloat(1.0, 8));
    CHECK(e.to_decimal(60).substr(0, 55) ==
          std::string("2.7182818284590452353602874713526624977572470936999595749")
              .substr(0, 55));
    // exp(log(x)) == x
    const int limbs = 8;
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> uni(0.001, 1000.0);
    for (int i = 0; i < 15; ++i) {
        BigFloat x(uni(rng), limbs);
        BigFloat y = magsplit::exp(magsplit::log(x));
        BigFloat err = y - x;
        if (!err.is_zero()) {
            CHECK(err.exponent2() - x.exponent2() < -64 * (limbs - 1) + 12);
        }
    }
    // exp(a+b) = exp(a)exp(b)
    BigFloat a(1.7, limbs), b(-2.9, limbs);
    BigFloat lhs = magsplit::exp(a + b);
    BigFloat rhs = magsplit::exp(a) * magsplit::exp(b);
    BigFloat err = lhs - rhs;
    if (!err.is_zero()) CHECK(err.exponent2() - lhs.exponent2() < -64 * (limbs - 1) + 12);
    // large negative exponent does not underflow
    BigFloat tiny = magsplit::exp(BigFloat(-5000.0, 4));
    CHECK(!tiny.is_zero());
    CHECK(tiny.log_abs() == doctest::Approx(-5000.0).epsilon(1e-12));
}

TEST_CASE("sincos identities, quadrants and huge-argument reduction")
{
    const int limbs = 8;
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> uni(-700.0, 700.0);
    BigFloat one(1.0, limbs);
    for (int i = 0; i < 25; ++i) {
        BigFloat x(uni(rng), limbs);
        BigFloat s, c;
        magsplit::sincos(x, s, c);
        BigFloat err = s * s + c * c - one;
        if (!err.is_zero()) CHECK(err.exponent2() < -64 * (limbs - 1) + 12);
        // cross-check against double in a relative-to-1 sense
        CHECK(std::fabs(s.to_double() - std::sin(x.to_double())) < 1e-10);
        CHECK(std::fabs(c.to_double() - std::cos(x.to_double())) < 1e-10);
    }
    // sin(pi/6) = 1/2 exactly to precision
    BigFloat pi6 = magsplit::const_pi(limbs).div_uint(6);
    BigFloat s = magsplit::sin(pi6);
    BigFloat err = s - BigFloat(0.5, limbs);
    if (!err.is_zero()) CHECK(err.exponent2() < -64 * (limbs - 1) + 8);
}

TEST_CASE("atan identities")
{
    const int limbs = 8;
    // atan(1) = pi/4
    BigFloat q = magsplit::atan(BigFloat(1.0, limbs));
    BigFloat ref = magsplit::const_pi(limbs).ldexp2(-2);
    BigFloat err = q - ref;
    if (!err.is_zero()) CHECK(err.exponent2() < -64 * (limbs - 1) + 8);
    // tan(atan(x)) = x over a range, including |x| > 1
    for (double x : {0.001, 0.3, 0.9, 1.0, 2.5, 17.0, -0.7, -4.0}) {
        BigFloat a = magsplit::atan(BigFloat(x, limbs));
        BigFloat s, c;
        magsplit::sincos(a, s, c);
        BigFloat t = s / c;
        BigFloat e2 = t - BigFloat(x, limbs);
        if (!e2.is_zero()) CHECK(e2.exponent2() - t.exponent2() < -64 * (limbs - 1) + 14);
    }
    CHECK(magsplit::atan2(BigFloat(1.0, 4), BigFloat(-1.0, 4)).to_double() ==
          doctest::Approx(3 * M_PI / 4).epsilon(1e-15));
}

TEST_CASE("wide exponent range survives scaling")
{
    BigFloat x(1.5, 3);
    BigFloat y = x.ldexp2(100000);
    BigFloat z = y * y;
    CHECK(z.exponent2() == doctest::Approx(200002).epsilon(1e-12));
    CHECK((z / y).log_abs() == doctest::Approx(y.log_abs()).epsilon(1e-12));
    BigFloat t = x.ldexp2(-2000000);
    CHECK(!(t * t).is_zero());
}

TEST_CASE("decimal rendering")
{
    CHECK(BigFloat(1.0, 3).to_decimal(5) == "1.0000e0");
    CHECK(BigFloat(-0.125, 3).to_decimal(4) == "-1.250e-1");
    CHECK(BigFloat(1234.5, 3).to_decimal(6) == "1.23450e3");
}
