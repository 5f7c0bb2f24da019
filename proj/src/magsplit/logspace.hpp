#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>

namespace magsplit {

/// Signed real number carried as sign * exp(log_mag): immune to under/overflow.
struct LogReal {
    double log_mag = -std::numeric_limits<double>::infinity();
    int sgn = 0;

    LogReal() = default;
    LogReal(double lm, int s) : log_mag(lm), sgn(s) {}

    static LogReal from_value(double v)
    {
        if (v == 0.0) return {};
        return {std::log(std::fabs(v)), v < 0 ? -1 : 1};
    }
    double value() const { return sgn == 0 ? 0.0 : sgn * std::exp(log_mag); }
    double log10() const { return log_mag / 2.302585092994045684; }
    bool is_zero() const { return sgn == 0; }

    friend LogReal operator*(const LogReal& a, const LogReal& b)
    {
        if (a.sgn == 0 || b.sgn == 0) return {};
        return {a.log_mag + b.log_mag, a.sgn * b.sgn};
    }
    friend LogReal operator/(const LogReal& a, const LogReal& b)
    {
        if (b.sgn == 0) throw std::domain_error("LogReal division by zero");
        if (a.sgn == 0) return {};
        return {a.log_mag - b.log_mag, a.sgn * b.sgn};
    }
    friend LogReal operator+(const LogReal& a, const LogReal& b)
    {
        if (a.sgn == 0) return b;
        if (b.sgn == 0) return a;
        double m = std::max(a.log_mag, b.log_mag);
        double s = a.sgn * std::exp(a.log_mag - m) + b.sgn * std::exp(b.log_mag - m);
        if (s == 0.0) return {};
        return {m + std::log(std::fabs(s)), s < 0 ? -1 : 1};
    }
    friend LogReal operator-(const LogReal& a, const LogReal& b)
    {
        return a + LogReal{b.log_mag, -b.sgn};
    }
    /// ratio a/b as a plain double (requires compatible magnitudes)
    double ratio_to(const LogReal& b) const
    {
        if (b.sgn == 0) throw std::domain_error("LogReal ratio to zero");
        if (sgn == 0) return 0.0;
        return sgn * b.sgn * std::exp(log_mag - b.log_mag);
    }
};

/// Complex number as exp(log_mag) * phase with |phase| = 1.
struct LogComplex {
    double log_mag = -std::numeric_limits<double>::infinity();
    std::complex<double> phase{0.0, 0.0};

    LogComplex() = default;
    LogComplex(double lm, std::complex<double> ph) : log_mag(lm), phase(ph) {}

    static LogComplex from_value(std::complex<double> v)
    {
        double a = std::abs(v);
        if (a == 0.0) return {};
        return {std::log(a), v / a};
    }
    static LogComplex from_log_real(const LogReal& r)
    {
        if (r.sgn == 0) return {};
        return {r.log_mag, {static_cast<double>(r.sgn), 0.0}};
    }
    bool is_zero() const { return phase == std::complex<double>(0.0, 0.0); }
    std::complex<double> value() const
    {
        return is_zero() ? std::complex<double>(0, 0) : std::exp(log_mag) * phase;
    }
    double log10_mag() const { return log_mag / 2.302585092994045684; }

    friend LogComplex operator*(const LogComplex& a, const LogComplex& b)
    {
        if (a.is_zero() || b.is_zero()) return {};
        return {a.log_mag + b.log_mag, a.phase * b.phase};
    }
    friend LogComplex operator/(const LogComplex& a, const LogComplex& b)
    {
        if (b.is_zero()) throw std::domain_error("LogComplex division by zero");
        if (a.is_zero()) return {};
        return {a.log_mag - b.log_mag, a.phase / b.phase};
    }
    std::complex<double> ratio_to(const LogComplex& b) const
    {
        if (b.is_zero()) throw std::domain_error("LogComplex ratio to zero");
        if (is_zero()) return {0, 0};
        return std::exp(log_mag - b.log_mag) * (phase / b.phase);
    }
};

/// Rescaling accumulator for sums of LogComplex terms (fixed insertion order).
class LogComplexSum {
public:
    void add(double log_mag, std::complex<double> phase)
    {
        if (phase == std::complex<double>(0.0, 0.0)) return;
        if (log_mag == -std::numeric_limits<double>::infinity()) return;
        if (empty_) {
            shift_ = log_mag;
            acc_ = phase;
            empty_ = false;
            return;
        }
        if (log_mag > shift_ + 40.0) {
            // rescale accumulated sum down to the new dominant term
            acc_ *= std::exp(shift_ - log_mag);
            shift_ = log_mag;
            acc_ += phase;
        } else {
            acc_ += phase * std::exp(log_mag - shift_);
        }
    }
    void add(const LogComplex& t) { add(t.log_mag, t.phase); }

    LogComplex result() const
    {
        if (empty_) return {};
        double a = std::abs(acc_);
        if (a == 0.0) return {};
        return {shift_ + std::log(a), acc_ / a};
    }

private:
    bool empty_ = true;
    double shift_ = 0.0;
    std::complex<double> acc_{0.0, 0.0};
};

} // namespace magsplit
