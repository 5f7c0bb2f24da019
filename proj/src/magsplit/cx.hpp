#pragma once

#include "magsplit/bigfloat.hpp"

#include <cmath>

namespace magsplit {

/// Minimal complex type usable with double and BigFloat alike.
template <class T>
struct Cx {
    T re{};
    T im{};

    Cx() = default;
    Cx(T r, T i) : re(std::move(r)), im(std::move(i)) {}
    explicit Cx(T r) : re(std::move(r)), im(zero_like(r)) {}

    static T zero_like(const T& x);

    friend Cx operator+(const Cx& a, const Cx& b) { return {a.re + b.re, a.im + b.im}; }
    friend Cx operator-(const Cx& a, const Cx& b) { return {a.re - b.re, a.im - b.im}; }
    friend Cx operator*(const Cx& a, const Cx& b)
    {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend Cx operator/(const Cx& a, const Cx& b)
    {
        T d = b.re * b.re + b.im * b.im;
        return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
    }
    Cx operator-() const { return {-re, -im}; }
    Cx conj() const { return {re, -im}; }
    T abs2() const { return re * re + im * im; }
};

template <>
inline double Cx<double>::zero_like(const double&) { return 0.0; }

template <>
inline BigFloat Cx<BigFloat>::zero_like(const BigFloat& x) { return BigFloat(x.limbs()); }

inline Cx<double> cx_exp(const Cx<double>& z)
{
    double m = std::exp(z.re);
    return {m * std::cos(z.im), m * std::sin(z.im)};
}

inline Cx<BigFloat> cx_exp(const Cx<BigFloat>& z)
{
    BigFloat m = exp(z.re), s, c;
    sincos(z.im, s, c);
    return {m * c, m * s};
}

/// Principal branch log; requires z != 0.
inline Cx<double> cx_log(const Cx<double>& z)
{
    return {0.5 * std::log(z.re * z.re + z.im * z.im), std::atan2(z.im, z.re)};
}

inline Cx<BigFloat> cx_log(const Cx<BigFloat>& z)
{
    BigFloat m2 = z.re * z.re + z.im * z.im;
    return {log(m2).ldexp2(-1), atan2(z.im, z.re)};
}

} // namespace magsplit
