#include "magsplit/bigfloat.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace magsplit {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

int highest_bit(u64 w) { return 63 - __builtin_clzll(w); }

// index of the highest set bit over the vector, or -1 if zero
long long top_bit(const std::vector<u64>& v)
{
    for (int i = static_cast<int>(v.size()) - 1; i >= 0; --i)
        if (v[i]) return 64LL * i + highest_bit(v[i]);
    return -1;
}

// v >>= bits (size kept); returns true when a nonzero bit fell off the end
bool shift_right_sticky(std::vector<u64>& v, long long bits)
{
    const int n = static_cast<int>(v.size());
    if (bits <= 0) return false;
    bool sticky = false;
    if (bits >= 64LL * n) {
        for (u64 w : v) sticky |= (w != 0);
        std::fill(v.begin(), v.end(), 0);
        return sticky;
    }
    const int limb_shift = static_cast<int>(bits / 64);
    const int bit_shift = static_cast<int>(bits % 64);
    if (limb_shift > 0) {
        for (int i = 0; i < limb_shift; ++i) sticky |= (v[i] != 0);
        for (int i = 0; i + limb_shift < n; ++i) v[i] = v[i + limb_shift];
        for (int i = n - limb_shift; i < n; ++i) v[i] = 0;
    }
    if (bit_shift > 0) {
        u64 carry = 0;
        for (int i = n - 1; i >= 0; --i) {
            u64 w = v[i];
            v[i] = (w >> bit_shift) | carry;
            carry = w << (64 - bit_shift);
        }
        sticky |= (carry != 0);
    }
    return sticky;
}

void shift_left_vec(std::vector<u64>& v, long long bits)
{
    const int n = static_cast<int>(v.size());
    if (bits <= 0) return;
    if (bits >= 64LL * n) {
        std::fill(v.begin(), v.end(), 0);
        return;
    }
    const int limb_shift = static_cast<int>(bits / 64);
    const int bit_shift = static_cast<int>(bits % 64);
    if (limb_shift > 0) {
        for (int i = n - 1; i >= limb_shift; --i) v[i] = v[i - limb_shift];
        for (int i = 0; i < limb_shift; ++i) v[i] = 0;
    }
    if (bit_shift > 0) {
        u64 carry = 0;
        for (int i = 0; i < n; ++i) {
            u64 w = v[i];
            v[i] = (w << bit_shift) | carry;
            carry = w >> (64 - bit_shift);
        }
    }
}

u64 add_vec(std::vector<u64>& a, const std::vector<u64>& b)
{
    u64 carry = 0;
    for (size_t i = 0; i < a.size(); ++i) {
        u128 s = u128(a[i]) + (i < b.size() ? b[i] : 0) + carry;
        a[i] = static_cast<u64>(s);
        carry = static_cast<u64>(s >> 64);
    }
    return carry;
}

// a -= b (caller guarantees a >= b as integers)
void sub_vec(std::vector<u64>& a, const std::vector<u64>& b)
{
    u64 borrow = 0;
    for (size_t i = 0; i < a.size(); ++i) {
        u128 rhs = u128(i < b.size() ? b[i] : 0) + borrow;
        u128 lhs = u128(a[i]);
        if (lhs >= rhs) {
            a[i] = static_cast<u64>(lhs - rhs);
            borrow = 0;
        } else {
            a[i] = static_cast<u64>((u128(1) << 64) + lhs - rhs);
            borrow = 1;
        }
    }
}

int cmp_vec(const std::vector<u64>& a, const std::vector<u64>& b)
{
    for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i) {
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    }
    return 0;
}

} // namespace

// ---------------------------------------------------------------------------
// construction / conversion

BigFloat::BigFloat(double x, int limbs)
{
    m_.assign(limbs, 0);
    if (x == 0.0) return;
    if (!std::isfinite(x)) throw std::domain_error("BigFloat: non-finite double");
    sign_ = x < 0 ? -1 : 1;
    int e = 0;
    double f = std::frexp(std::fabs(x), &e); // f in [0.5, 1)
    exp_ = e;
    // f * 2^64 is exact for a 53-bit mantissa and has its top bit set
    m_[limbs - 1] = static_cast<u64>(std::ldexp(f, 64));
}

BigFloat BigFloat::from_int64(long long v, int limbs)
{
    BigFloat r(limbs);
    if (v == 0) return r;
    r.sign_ = v < 0 ? -1 : 1;
    u64 a = v < 0 ? (~static_cast<u64>(v) + 1) : static_cast<u64>(v);
    int hb = highest_bit(a);
    r.exp_ = hb + 1;
    r.m_[limbs - 1] = hb == 63 ? a : (a << (63 - hb));
    return r;
}

double BigFloat::to_double() const
{
    if (sign_ == 0) return 0.0;
    const int n = limbs();
    double f = std::ldexp(static_cast<double>(m_[n - 1]), -64);
    if (n >= 2) f += std::ldexp(static_cast<double>(m_[n - 2]), -128);
    if (exp_ > 1023) return sign_ * HUGE_VAL;
    if (exp_ < -1073) return sign_ * 0.0;
    return sign_ * std::ldexp(f, static_cast<int>(exp_));
}

void BigFloat::frexp(double& f, long long& e) const
{
    if (sign_ == 0) throw std::domain_error("BigFloat::frexp of zero");
    const int n = limbs();
    f = std::ldexp(static_cast<double>(m_[n - 1]), -64);
    if (n >= 2) f += std::ldexp(static_cast<double>(m_[n - 2]), -128);
    f *= sign_;
    e = exp_;
}

double BigFloat::log_abs() const
{
    if (sign_ == 0) throw std::domain_error("BigFloat::log_abs of zero");
    double f;
    long long e;
    frexp(f, e);
    return std::log(std::fabs(f)) + 0.69314718055994530942 * static_cast<double>(e);
}

BigFloat BigFloat::with_limbs(int limbs) const
{
    if (limbs == this->limbs()) return *this;
    BigFloat r(limbs);
    r.sign_ = sign_;
    r.exp_ = exp_;
    const int n = this->limbs();
    for (int i = 0; i < limbs; ++i) {
        int j = n - limbs + i;
        r.m_[i] = (j >= 0 && j < n) ? m_[j] : 0;
    }
    if (r.sign_ != 0 && top_bit(r.m_) < 0) r = BigFloat(limbs); // fully truncated
    return r;
}

// ---------------------------------------------------------------------------
// normalization: *this <- round(sign * buf * 2^scale_pow2) at `limbs` limbs

void BigFloat::normalize_from(std::vector<std::uint64_t>& buf, long long scale_pow2,
                              int sign, int limbs, bool sticky_in)
{
    long long tb = top_bit(buf);
    if (tb < 0 || sign == 0) {
        sign_ = 0;
        exp_ = 0;
        m_.assign(limbs, 0);
        return;
    }
    long long expv = scale_pow2 + tb + 1; // |value| in [2^(expv-1), 2^expv)
    long long lo = tb - 64LL * limbs + 1; // lowest kept bit index
    bool round_bit = false;
    bool sticky = sticky_in;
    if (lo > 0) {
        long long rb = lo - 1;
        round_bit = (buf[rb / 64] >> (rb % 64)) & 1;
        for (long long i = 0; i < rb / 64; ++i) sticky |= (buf[i] != 0);
        if (rb % 64) sticky |= (buf[rb / 64] & ((u64(1) << (rb % 64)) - 1)) != 0;
        shift_right_sticky(buf, lo);
    } else if (lo < 0) {
        shift_left_vec(buf, -lo);
    }
    m_.assign(limbs, 0);
    for (int i = 0; i < limbs; ++i) m_[i] = buf[i];
    sign_ = sign;
    exp_ = expv;
    (void)sticky;
    if (round_bit) {
        // round to nearest, ties away from zero
        u64 carry = 1;
        for (int i = 0; i < limbs && carry; ++i) {
            u64 prev = m_[i];
            m_[i] = prev + carry;
            carry = (m_[i] == 0) ? 1 : 0;
        }
        if (carry) {
            m_.assign(limbs, 0);
            m_[limbs - 1] = u64(1) << 63;
            exp_ += 1;
        }
    }
}

// ---------------------------------------------------------------------------
// core arithmetic

BigFloat BigFloat::operator-() const
{
    BigFloat r = *this;
    r.sign_ = -r.sign_;
    return r;
}

BigFloat abs(const BigFloat& x)
{
    BigFloat r = x;
    if (r.is_negative()) r.negate();
    return r;
}

int BigFloat::cmp_abs(const BigFloat& b) const
{
    if (sign_ == 0) return b.sign_ == 0 ? 0 : -1;
    if (b.sign_ == 0) return 1;
    if (exp_ != b.exp_) return exp_ < b.exp_ ? -1 : 1;
    if (limbs() == b.limbs()) return cmp_vec(m_, b.m_);
    const int n = std::max(limbs(), b.limbs());
    return cmp_vec(with_limbs(n).m_, b.with_limbs(n).m_);
}

int BigFloat::cmp(const BigFloat& b) const
{
    if (sign_ != b.sign_) return sign_ < b.sign_ ? -1 : 1;
    if (sign_ == 0) return 0;
    int c = cmp_abs(b);
    return sign_ > 0 ? c : -c;
}

BigFloat operator+(const BigFloat& a, const BigFloat& b)
{
    const int n = std::max(a.limbs(), b.limbs());
    if (a.sign_ == 0) return b.with_limbs(n);
    if (b.sign_ == 0) return a.with_limbs(n);

    const BigFloat* hi = &a;
    const BigFloat* lo = &b;
    if (a.cmp_abs(b) < 0) std::swap(hi, lo);

    BigFloat H = hi->with_limbs(n);
    BigFloat L = lo->with_limbs(n);

    // (n+2)-limb buffers: limb 0 is a 64-bit guard, limb n+1 absorbs carries;
    // mantissas sit in limbs 1..n, so value = buf * 2^(hi.exp - 64(n+1))
    std::vector<u64> Hb(n + 2, 0), Lb(n + 2, 0);
    for (int i = 0; i < n; ++i) Hb[i + 1] = H.m_[i];
    for (int i = 0; i < n; ++i) Lb[i + 1] = L.m_[i];
    bool sticky = shift_right_sticky(Lb, H.exp_ - L.exp_);

    BigFloat r(n);
    const long long scale = H.exp_ - 64LL * (n + 1);
    if (hi->sign_ == lo->sign_) {
        add_vec(Hb, Lb); // cannot overflow limb n+1
        r.normalize_from(Hb, scale, hi->sign_, n, sticky);
    } else {
        sub_vec(Hb, Lb);
        r.normalize_from(Hb, scale, hi->sign_, n, sticky);
    }
    return r;
}

BigFloat operator-(const BigFloat& a, const BigFloat& b) { return a + (-b); }

BigFloat operator*(const BigFloat& a, const BigFloat& b)
{
    const int n = std::max(a.limbs(), b.limbs());
    if (a.sign_ == 0 || b.sign_ == 0) return BigFloat(n);
    BigFloat A = a.with_limbs(n), B = b.with_limbs(n);
    std::vector<u64> prod(2 * n, 0);
    for (int i = 0; i < n; ++i) {
        u64 ai = A.m_[i];
        if (!ai) continue;
        u64 carry = 0;
        for (int j = 0; j < n; ++j) {
            u128 cur = u128(ai) * B.m_[j] + prod[i + j] + carry;
            prod[i + j] = static_cast<u64>(cur);
            carry = static_cast<u64>(cur >> 64);
        }
        prod[i + n] += carry;
    }
    // integers: A.m * B.m = prod, so value = prod * 2^(ea+eb-128n)
    BigFloat out(n);
    out.normalize_from(prod, A.exp_ + B.exp_ - 128LL * n, a.sign_ * b.sign_, n, false);
    return out;
}

BigFloat BigFloat::ldexp2(long long k) const
{
    BigFloat r = *this;
    if (r.sign_ != 0) r.exp_ += k;
    return r;
}

BigFloat BigFloat::div_uint(u64 d) const
{
    if (d == 0) throw std::domain_error("BigFloat::div_uint by zero");
    if (sign_ == 0) return *this;
    const int n = limbs();
    // quotient of (mant << 64) / d, one guard limb
    std::vector<u64> q(n + 1, 0);
    u128 rem = 0;
    for (int i = n - 1; i >= 0; --i) {
        u128 cur = (rem << 64) | m_[i];
        q[i + 1] = static_cast<u64>(cur / d);
        rem = cur % d;
    }
    u128 cur = rem << 64;
    q[0] = static_cast<u64>(cur / d);
    bool sticky = (cur % d) != 0;
    BigFloat out(n);
    out.normalize_from(q, exp_ - 64LL * (n + 1), sign_, n, sticky);
    return out;
}

BigFloat BigFloat::mul_uint(u64 f) const
{
    const int n = limbs();
    if (f == 0 || sign_ == 0) return BigFloat(n);
    std::vector<u64> buf(n + 1, 0);
    u64 carry = 0;
    for (int i = 0; i < n; ++i) {
        u128 cur = u128(m_[i]) * f + carry;
        buf[i] = static_cast<u64>(cur);
        carry = static_cast<u64>(cur >> 64);
    }
    buf[n] = carry;
    BigFloat out(n);
    out.normalize_from(buf, exp_ - 64LL * n, sign_, n, false);
    return out;
}

BigFloat operator/(const BigFloat& a, const BigFloat& b)
{
    if (b.sign_ == 0) throw std::domain_error("BigFloat: division by zero");
    const int n = std::max(a.limbs(), b.limbs());
    if (a.sign_ == 0) return BigFloat(n);
    // Newton reciprocal of |b| scaled into [0.5, 1)
    BigFloat m = abs(b).with_limbs(n);
    long long be = m.exp_;
    m.exp_ = 0;
    BigFloat r(1.0 / m.to_double(), n);
    BigFloat two(2.0, n);
    int iters = 1;
    for (long long bits = 50; bits < 64LL * n + 64; bits *= 2) ++iters;
    for (int i = 0; i < iters; ++i) r = r * (two - m * r);
    BigFloat q = abs(a).with_limbs(n) * r;
    q.exp_ -= be;
    q.sign_ = a.sign_ * b.sign_;
    return q;
}

long long BigFloat::round_to_int64() const
{
    if (sign_ == 0) return 0;
    if (exp_ > 62) throw std::domain_error("BigFloat::round_to_int64 overflow");
    if (exp_ <= 0) return exp_ == 0 ? sign_ : 0; // |x| < 1
    const int n = limbs();
    u64 ip = m_[n - 1] >> (64 - exp_);
    u64 frac_top = (m_[n - 1] >> (63 - exp_)) & 1;
    if (frac_top) ip += 1;
    return sign_ * static_cast<long long>(ip);
}

// ---------------------------------------------------------------------------
// transcendental functions

namespace {

std::mutex g_const_mutex;
std::map<int, BigFloat> g_pi_cache;
std::map<int, BigFloat> g_ln2_cache;

// atan(1/k) by Taylor series (k >= 2), for the Machin formula
BigFloat atan_inv_uint(u64 k, int limbs)
{
    BigFloat x = BigFloat(1.0, limbs).div_uint(k);
    BigFloat x2 = x * x;
    BigFloat term = x;
    BigFloat sum = x;
    const long long minexp = x.exponent2() - 64LL * limbs - 8;
    for (u64 j = 3;; j += 2) {
        term = term * x2;
        BigFloat t = term.div_uint(j);
        if ((j / 2) % 2 == 1) sum -= t;
        else sum += t;
        if (t.is_zero() || t.exponent2() < minexp) break;
    }
    return sum;
}

} // namespace

BigFloat const_pi(int limbs)
{
    {
        std::lock_guard<std::mutex> lock(g_const_mutex);
        auto it = g_pi_cache.find(limbs);
        if (it != g_pi_cache.end()) return it->second;
    }
    const int wl = limbs + 1;
    BigFloat p = atan_inv_uint(5, wl).mul_uint(16) - atan_inv_uint(239, wl).mul_uint(4);
    BigFloat out = p.with_limbs(limbs);
    std::lock_guard<std::mutex> lock(g_const_mutex);
    g_pi_cache.emplace(limbs, out);
    return out;
}

BigFloat const_ln2(int limbs)
{
    {
        std::lock_guard<std::mutex> lock(g_const_mutex);
        auto it = g_ln2_cache.find(limbs);
        if (it != g_ln2_cache.end()) return it->second;
    }
    // ln 2 = 2 atanh(1/3)
    const int wl = limbs + 1;
    BigFloat x = BigFloat(1.0, wl).div_uint(3);
    BigFloat x2 = x * x;
    BigFloat term = x;
    BigFloat sum = x;
    const long long minexp = -64LL * wl - 8;
    for (u64 j = 3;; j += 2) {
        term = term * x2;
        BigFloat t = term.div_uint(j);
        sum += t;
        if (t.is_zero() || t.exponent2() < minexp) break;
    }
    BigFloat out = sum.ldexp2(1).with_limbs(limbs);
    std::lock_guard<std::mutex> lock(g_const_mutex);
    g_ln2_cache.emplace(limbs, out);
    return out;
}

BigFloat sqrt(const BigFloat& x)
{
    if (x.is_zero()) return x;
    if (x.is_negative()) throw std::domain_error("BigFloat sqrt of negative");
    const int n = x.limbs();
    BigFloat m = x;
    const long long e = m.exp_;
    const long long half = e >= 0 ? e / 2 : (e - 1) / 2; // floor(e/2)
    m.exp_ = e - 2 * half; // in {0,1}: m in [0.25, 2)
    // Newton for 1/sqrt(m): y <- y (3 - m y^2) / 2
    BigFloat y(1.0 / std::sqrt(m.to_double()), n);
    BigFloat three(3.0, n);
    int iters = 2;
    for (long long bits = 50; bits < 64LL * n + 64; bits *= 2) ++iters;
    for (int i = 0; i < iters; ++i) y = (y * (three - m * y * y)).ldexp2(-1);
    BigFloat r = m * y;
    r.exp_ += half;
    return r;
}

BigFloat exp(const BigFloat& x)
{
    const int n = x.limbs();
    if (x.is_zero()) return BigFloat(1.0, n);
    const int wl = n + 1;
    BigFloat xw = x.with_limbs(wl);
    BigFloat l2 = const_ln2(wl);
    const long long k = (xw / l2).round_to_int64();
    BigFloat r = xw - BigFloat::from_int64(k, wl) * l2; // |r| <= ln2/2 + eps
    const int m = 8 + static_cast<int>(std::sqrt(64.0 * n));
    r = r.ldexp2(-m);
    BigFloat term(1.0, wl);
    BigFloat sum(1.0, wl);
    const long long minexp = -64LL * wl - 8;
    for (u64 j = 1;; ++j) {
        term = (term * r).div_uint(j);
        sum += term;
        if (term.is_zero() || term.exponent2() < minexp) break;
    }
    for (int i = 0; i < m; ++i) sum = sum * sum;
    return sum.ldexp2(k).with_limbs(n);
}

BigFloat log(const BigFloat& x)
{
    if (x.is_zero() || x.is_negative())
        throw std::domain_error("BigFloat log of non-positive");
    const int n = x.limbs();
    const int wl = n + 1;
    BigFloat xw = x.with_limbs(wl);
    double f;
    long long e;
    x.frexp(f, e);
    BigFloat y = BigFloat(std::log(f), wl) + BigFloat::from_int64(e, wl) * const_ln2(wl);
    BigFloat one(1.0, wl);
    int iters = 2;
    for (long long bits = 48; bits < 64LL * wl + 32; bits *= 2) ++iters;
    for (int i = 0; i < iters; ++i) y = y + (xw * exp(-y) - one);
    return y.with_limbs(n);
}

void sincos(const BigFloat& x, BigFloat& s, BigFloat& c)
{
    const int n = x.limbs();
    if (x.is_zero()) {
        s = BigFloat(n);
        c = BigFloat(1.0, n);
        return;
    }
    const int wl = n + 2;
    BigFloat xw = x.with_limbs(wl);
    BigFloat pi2 = const_pi(wl).ldexp2(-1);
    const long long q = (xw / pi2).round_to_int64();
    BigFloat r = xw - BigFloat::from_int64(q, wl) * pi2; // |r| <= pi/4 + eps
    BigFloat r2 = r * r;
    BigFloat st = r, ssum = r;
    BigFloat ct(1.0, wl), csum(1.0, wl);
    const long long minexp = -64LL * wl - 8;
    for (u64 j = 1;; ++j) {
        st = (st * r2).div_uint(2 * j).div_uint(2 * j + 1);
        ct = (ct * r2).div_uint(2 * j - 1).div_uint(2 * j);
        if (j % 2 == 1) {
            ssum -= st;
            csum -= ct;
        } else {
            ssum += st;
            csum += ct;
        }
        const bool sdone = st.is_zero() || st.exponent2() < minexp;
        const bool cdone = ct.is_zero() || ct.exponent2() < minexp;
        if (sdone && cdone) break;
    }
    BigFloat S, C;
    switch (((q % 4) + 4) % 4) {
        case 0: S = ssum; C = csum; break;
        case 1: S = csum; C = -ssum; break;
        case 2: S = -ssum; C = -csum; break;
        default: S = -csum; C = ssum; break;
    }
    s = S.with_limbs(n);
    c = C.with_limbs(n);
}

BigFloat sin(const BigFloat& x)
{
    BigFloat s, c;
    sincos(x, s, c);
    return s;
}

BigFloat cos(const BigFloat& x)
{
    BigFloat s, c;
    sincos(x, s, c);
    return c;
}

BigFloat atan(const BigFloat& x)
{
    const int n = x.limbs();
    if (x.is_zero()) return BigFloat(n);
    if (x.is_negative()) return -atan(-x);
    const int wl = n + 1;
    BigFloat t = x.with_limbs(wl);
    BigFloat one(1.0, wl);
    bool inverted = false;
    if (t.exponent2() > 0) { // |t| >= 1: atan(t) = pi/2 - atan(1/t)
        t = one / t;
        inverted = true;
    }
    int halvings = 0;
    while (!t.is_zero() && t.exponent2() > -5) {
        t = t / (one + sqrt(one + t * t));
        ++halvings;
    }
    BigFloat sum = t;
    if (!t.is_zero()) {
        BigFloat t2 = t * t;
        BigFloat term = t;
        const long long minexp = t.exponent2() - 64LL * wl - 8;
        for (u64 j = 3;; j += 2) {
            term = term * t2;
            BigFloat u = term.div_uint(j);
            if ((j / 2) % 2 == 1) sum -= u;
            else sum += u;
            if (u.is_zero() || u.exponent2() < minexp) break;
        }
    }
    BigFloat r = sum.ldexp2(halvings);
    if (inverted) r = const_pi(wl).ldexp2(-1) - r;
    return r.with_limbs(n);
}

BigFloat atan2(const BigFloat& y, const BigFloat& x)
{
    const int n = std::max(y.limbs(), x.limbs());
    if (x.is_zero() && y.is_zero()) throw std::domain_error("BigFloat atan2(0,0)");
    if (x.is_zero()) {
        BigFloat h = const_pi(n).ldexp2(-1);
        return y.is_negative() ? -h : h;
    }
    BigFloat base = atan(y.with_limbs(n) / x.with_limbs(n));
    if (!x.is_negative()) return base;
    return y.is_negative() ? base - const_pi(n) : base + const_pi(n);
}

std::string BigFloat::to_decimal(int digits) const
{
    if (sign_ == 0) return "0";
    long long d10 = static_cast<long long>(std::floor(log_abs() / 2.30258509299404568402));
    const int wl = limbs() + 2;
    BigFloat ten(10.0, wl);
    // scale = 10^(digits-1-d10) by binary exponentiation
    long long p = digits - 1 - d10;
    BigFloat scale(1.0, wl);
    BigFloat acc = ten;
    long long ap = p < 0 ? -p : p;
    while (ap > 0) {
        if (ap & 1) scale = scale * acc;
        acc = acc * acc;
        ap >>= 1;
    }
    BigFloat v = abs(*this).with_limbs(wl);
    v = (p >= 0) ? v * scale : v / scale;
    // normalize drift so v in [10^(digits-1), 10^digits)
    BigFloat upper(1.0, wl);
    for (int i = 0; i < digits; ++i) upper = upper * ten;
    BigFloat lower = upper / ten;
    while (v.cmp(upper) >= 0) {
        v = v / ten;
        ++d10;
    }
    while (v.cmp(lower) < 0) {
        v = v * ten;
        --d10;
    }
    std::string out;
    BigFloat cur = v;
    BigFloat place = lower;
    for (int i = 0; i < digits; ++i) {
        int dig = 0;
        while (cur.cmp(place) >= 0 && dig < 9) {
            cur -= place;
            ++dig;
        }
        out.push_back(static_cast<char>('0' + dig));
        place = place / ten;
    }
    std::string res;
    if (sign_ < 0) res += "-";
    res += out.substr(0, 1);
    res += ".";
    res += out.substr(1);
    res += "e";
    res += std::to_string(d10);
    return res;
}

} // namespace magsplit
