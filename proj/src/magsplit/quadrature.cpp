#include "magsplit/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <queue>
#include <stdexcept>

namespace magsplit {

namespace {

// QUADPACK dqk15 abscissae/weights (positive half)
const double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
const double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
const double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct Interval {
    double a, b, value, error;
    bool operator<(const Interval& o) const { return error < o.error; }
};

Interval gk15(const std::function<double(double)>& f, double a, double b)
{
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double fc = f(c);
    double resg = fc * kWg[3];
    double resk = fc * kWgk[7];
    for (int j = 0; j < 7; ++j) {
        double x = h * kXgk[j];
        double f1 = f(c - x), f2 = f(c + x);
        resk += kWgk[j] * (f1 + f2);
        if (j % 2 == 1) resg += kWg[j / 2] * (f1 + f2);
    }
    Interval out;
    out.a = a;
    out.b = b;
    out.value = resk * h;
    out.error = std::fabs((resk - resg) * h);
    return out;
}

} // namespace

QuadResult integrate_gk(const std::function<double(double)>& f, double a, double b,
                        double abs_tol, double rel_tol, int max_intervals)
{
    QuadResult res;
    if (a == b) return res;
    std::priority_queue<Interval> heap;
    Interval whole = gk15(f, a, b);
    res.evaluations = 15;
    double total = whole.value;
    double total_err = whole.error;
    heap.push(whole);
    while (static_cast<int>(heap.size()) < max_intervals) {
        double tol = std::max(abs_tol, rel_tol * std::fabs(total));
        if (total_err <= tol) break;
        Interval worst = heap.top();
        heap.pop();
        double mid = 0.5 * (worst.a + worst.b);
        Interval left = gk15(f, worst.a, mid);
        Interval right = gk15(f, mid, worst.b);
        res.evaluations += 30;
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
    }
    res.value = total;
    res.error = total_err;
    return res;
}

// ---------------------------------------------------------------------------
// Gauss-Legendre

namespace {

std::mutex g_rule_mutex;
std::map<int, GLRule> g_gl_cache;
std::map<std::pair<int, int>, GLRuleBig> g_gl_big_cache;

GLRule make_gl(int n)
{
    GLRule r;
    r.x.resize(n);
    r.w.resize(n);
    for (int i = 0; i < n; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            pp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / pp;
            x -= dx;
            if (std::fabs(dx) < 1e-15) break;
        }
        r.x[n - 1 - i] = x;
        r.w[n - 1 - i] = 2.0 / ((1.0 - x * x) * pp * pp);
    }
    return r;
}

GLRuleBig make_gl_big(int n, int limbs)
{
    const GLRule& d = gl_rule(n);
    GLRuleBig r;
    r.x.reserve(n);
    r.w.reserve(n);
    BigFloat one(1.0, limbs), two(2.0, limbs);
    for (int i = 0; i < n; ++i) {
        BigFloat x(d.x[i], limbs);
        BigFloat pp(limbs);
        int newton = 2;
        for (long long bits = 48; bits < 64LL * limbs + 16; bits *= 2) ++newton;
        for (int it = 0; it < newton; ++it) {
            BigFloat p0 = one, p1 = x;
            for (int k = 2; k <= n; ++k) {
                BigFloat p2 = ((x * p1).mul_uint(2 * k - 1) - p0.mul_uint(k - 1)).div_uint(k);
                p0 = p1;
                p1 = p2;
            }
            pp = (x * p1 - p0).mul_uint(n) / (x * x - one);
            x -= p1 / pp;
        }
        r.x.push_back(x);
        r.w.push_back(two / ((one - x * x) * pp * pp));
    }
    return r;
}

} // namespace

const GLRule& gl_rule(int n)
{
    {
        std::lock_guard<std::mutex> lock(g_rule_mutex);
        auto it = g_gl_cache.find(n);
        if (it != g_gl_cache.end()) return it->second;
    }
    GLRule r = make_gl(n);
    std::lock_guard<std::mutex> lock(g_rule_mutex);
    return g_gl_cache.emplace(n, std::move(r)).first->second;
}

const GLRuleBig& gl_rule_big(int n, int limbs)
{
    const auto key = std::make_pair(n, limbs);
    {
        std::lock_guard<std::mutex> lock(g_rule_mutex);
        auto it = g_gl_big_cache.find(key);
        if (it != g_gl_big_cache.end()) return it->second;
    }
    GLRuleBig r = make_gl_big(n, limbs);
    std::lock_guard<std::mutex> lock(g_rule_mutex);
    return g_gl_big_cache.emplace(key, std::move(r)).first->second;
}

// ---------------------------------------------------------------------------
// symmetric tridiagonal QL with first-component accumulation (EISPACK imtql2
// specialised to the Golub-Welsch use)

void tridiag_eigen_first_components(std::vector<double>& d, std::vector<double>& e,
                                    std::vector<double>& z)
{
    const int n = static_cast<int>(d.size());
    z.assign(n, 0.0);
    if (n == 0) return;
    z[0] = 1.0;
    if (n == 1) return;
    e.resize(n);
    e[n - 1] = 0.0;

    for (int l = 0; l < n; ++l) {
        int iter = 0;
        while (true) {
            int m = l;
            for (; m < n - 1; ++m) {
                double dd = std::fabs(d[m]) + std::fabs(d[m + 1]);
                if (std::fabs(e[m]) <= 1e-300 + 2.3e-16 * dd) break;
            }
            if (m == l) break;
            if (++iter > 60) throw std::runtime_error("tridiag eigen: no convergence");
            double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            double r = std::hypot(g, 1.0);
            g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
            double s = 1.0, c = 1.0, p = 0.0;
            bool underflow = false;
            for (int i = m - 1; i >= l; --i) {
                double f = s * e[i];
                double b = c * e[i];
                r = std::hypot(f, g);
                e[i + 1] = r;
                if (r == 0.0) {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                f = z[i + 1];
                z[i + 1] = s * z[i] + c * f;
                z[i] = c * z[i] - s * f;
            }
            if (underflow) continue;
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    // sort ascending, carrying z
    std::vector<int> idx(n);
    for (int i = 0; i < n; ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](int a, int b) { return d[a] < d[b]; });
    std::vector<double> ds(n), zs(n);
    for (int i = 0; i < n; ++i) {
        ds[i] = d[idx[i]];
        zs[i] = z[idx[i]];
    }
    d = std::move(ds);
    z = std::move(zs);
}

JacobiRule gauss_jacobi01(int n, double delta)
{
    if (!(delta > 0.0)) throw std::domain_error("gauss_jacobi01: delta must be positive");
    const double beta = delta - 1.0;
    std::vector<double> d(n), e(n, 0.0), z;
    d[0] = beta / (beta + 2.0);
    for (int k = 1; k < n; ++k) {
        d[k] = beta * beta / ((2.0 * k + beta) * (2.0 * k + beta + 2.0));
        double ek;
        if (k == 1) {
            ek = std::sqrt(4.0 * (1.0 + beta) / ((2.0 + beta) * (2.0 + beta) * (3.0 + beta)));
        } else {
            double kk = k;
            ek = 2.0 * kk * (kk + beta) /
                 ((2.0 * kk + beta) * std::sqrt((2.0 * kk + beta + 1.0) * (2.0 * kk + beta - 1.0)));
        }
        e[k - 1] = ek;
    }
    tridiag_eigen_first_components(d, e, z);
    // mu0 for weight (1+x)^beta on [-1,1] is 2^(beta+1)/(beta+1) = 2^delta/delta,
    // and the map t=(1+x)/2 contributes 2^-delta
    JacobiRule rule;
    rule.t.resize(n);
    rule.w.resize(n);
    for (int i = 0; i < n; ++i) {
        rule.t[i] = 0.5 * (1.0 + d[i]);
        rule.w[i] = (z[i] * z[i]) / delta;
    }
    return rule;
}

} // namespace magsplit
