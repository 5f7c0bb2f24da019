#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace magsplit {

/// Fixed-precision binary floating point number.
///
/// A nonzero value is sign * (m / 2^(64*n)) * 2^e where m is the n-limb
/// little-endian mantissa with the top bit of the highest limb set, so
/// |x| lies in [2^(e-1), 2^e). The limb count is chosen per value;
/// binary operations work at the larger operand precision. The exponent
/// is a plain int64, wide enough that quantities like exp(-S/h) never
/// underflow for any parameter range this project touches.
class BigFloat {
public:
    BigFloat() = default;
    explicit BigFloat(int limbs) : m_(limbs, 0) {}
    BigFloat(double x, int limbs);

    static BigFloat zero(int limbs) { return BigFloat(limbs); }
    static BigFloat from_int64(long long v, int limbs);

    int limbs() const { return static_cast<int>(m_.size()); }
    bool is_zero() const { return sign_ == 0; }
    bool is_negative() const { return sign_ < 0; }
    int sign() const { return sign_; }
    long long exponent2() const { return exp_; }

    /// Nearest double; overflows to +-inf, underflows to (+-)0.
    double to_double() const;
    /// |x| = f * 2^e with f in [0.5, 1); requires x != 0.
    void frexp(double& f, long long& e) const;
    /// log|x| evaluated in double; requires x != 0.
    double log_abs() const;
    /// Decimal rendering with the given number of significant digits.
    std::string to_decimal(int digits) const;

    BigFloat operator-() const;
    BigFloat& negate() { sign_ = -sign_; return *this; }

    friend BigFloat operator+(const BigFloat& a, const BigFloat& b);
    friend BigFloat operator-(const BigFloat& a, const BigFloat& b);
    friend BigFloat operator*(const BigFloat& a, const BigFloat& b);
    friend BigFloat operator/(const BigFloat& a, const BigFloat& b);
    BigFloat& operator+=(const BigFloat& b) { *this = *this + b; return *this; }
    BigFloat& operator-=(const BigFloat& b) { *this = *this - b; return *this; }
    BigFloat& operator*=(const BigFloat& b) { *this = *this * b; return *this; }
    BigFloat& operator/=(const BigFloat& b) { *this = *this / b; return *this; }

    /// Exact scaling by 2^k.
    BigFloat ldexp2(long long k) const;
    /// Exact division by a small positive integer.
    BigFloat div_uint(std::uint64_t d) const;
    BigFloat mul_uint(std::uint64_t f) const;

    /// Comparison of values (total order; -0 == +0 == 0).
    int cmp(const BigFloat& b) const;
    int cmp_abs(const BigFloat& b) const;
    friend bool operator<(const BigFloat& a, const BigFloat& b) { return a.cmp(b) < 0; }
    friend bool operator>(const BigFloat& a, const BigFloat& b) { return a.cmp(b) > 0; }
    friend bool operator<=(const BigFloat& a, const BigFloat& b) { return a.cmp(b) <= 0; }
    friend bool operator>=(const BigFloat& a, const BigFloat& b) { return a.cmp(b) >= 0; }

    /// Round to the nearest integer (ties away from zero); result exact
    /// when it fits the precision. Also returns the value as int64 when
    /// |x| < 2^62, otherwise throws.
    long long round_to_int64() const;

    BigFloat with_limbs(int limbs) const;

private:
    int sign_ = 0;
    long long exp_ = 0;
    std::vector<std::uint64_t> m_;

    void normalize_from(std::vector<std::uint64_t>& buf, long long scale_pow2,
                        int sign, int limbs, bool sticky_in);

    friend BigFloat sqrt(const BigFloat& x);
};

BigFloat abs(const BigFloat& x);
BigFloat sqrt(const BigFloat& x);
BigFloat exp(const BigFloat& x);
BigFloat log(const BigFloat& x);
BigFloat sin(const BigFloat& x);
BigFloat cos(const BigFloat& x);
void sincos(const BigFloat& x, BigFloat& s, BigFloat& c);
BigFloat atan(const BigFloat& x);
BigFloat atan2(const BigFloat& y, const BigFloat& x);

/// Cached constants at the requested precision.
BigFloat const_pi(int limbs);
BigFloat const_ln2(int limbs);

inline bool isfinite(const BigFloat&) { return true; }

/// Number of limbs giving at least `bits` mantissa bits.
inline int limbs_for_bits(int bits) { return (bits + 63) / 64 + 1; }

} // namespace magsplit
