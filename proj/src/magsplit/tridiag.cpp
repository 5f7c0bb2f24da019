#include "magsplit/tridiag.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace magsplit {

int sturm_count(const Tridiag& T, double lambda)
{
    const int n = T.n();
    int count = 0;
    double q = 1.0;
    for (int i = 0; i < n; ++i) {
        double off2 = i > 0 ? T.off[i - 1] * T.off[i - 1] : 0.0;
        q = T.diag[i] - lambda - (i > 0 ? off2 / q : 0.0);
        if (q == 0.0) q = -1e-300;
        if (q < 0.0) ++count;
    }
    return count;
}

double bisect_eigenvalue(const Tridiag& T, int k, double rel_tol)
{
    const int n = T.n();
    // Gershgorin bounds
    double lo = T.diag[0], hi = T.diag[0];
    for (int i = 0; i < n; ++i) {
        double r = (i > 0 ? std::fabs(T.off[i - 1]) : 0.0) +
                   (i < n - 1 ? std::fabs(T.off[i]) : 0.0);
        lo = std::min(lo, T.diag[i] - r);
        hi = std::max(hi, T.diag[i] + r);
    }
    const double scale = std::max(std::fabs(lo), std::fabs(hi));
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        if (sturm_count(T, mid) > k) hi = mid;
        else lo = mid;
        if (hi - lo <= rel_tol * scale) break;
    }
    return 0.5 * (lo + hi);
}

void solve_shifted(const Tridiag& T, double sigma, std::vector<double>& b)
{
    const int n = T.n();
    if (n == 1) {
        double dd = T.diag[0] - sigma;
        if (dd == 0.0) dd = 1e-300;
        b[0] /= dd;
        return;
    }
    // gttrf/gtts2-style tridiagonal LU with partial pivoting
    std::vector<double> dl(n - 1), d(n), du(n - 1), du2(std::max(0, n - 2), 0.0);
    std::vector<char> piv(n - 1, 0);
    for (int i = 0; i < n; ++i) d[i] = T.diag[i] - sigma;
    for (int i = 0; i + 1 < n; ++i) dl[i] = du[i] = T.off[i];

    for (int i = 0; i + 1 < n; ++i) {
        if (std::fabs(d[i]) >= std::fabs(dl[i])) {
            piv[i] = 0;
            double pivot = d[i] == 0.0 ? 1e-300 : d[i];
            double fact = dl[i] / pivot;
            dl[i] = fact;
            d[i + 1] -= fact * du[i];
            if (i + 2 < n) du2[i] = 0.0;
        } else {
            piv[i] = 1;
            double fact = d[i] / dl[i];
            d[i] = dl[i];
            dl[i] = fact;
            double temp = du[i];
            du[i] = d[i + 1];
            d[i + 1] = temp - fact * d[i + 1];
            if (i + 2 < n) {
                du2[i] = du[i + 1];
                du[i + 1] = -fact * du[i + 1];
            }
        }
    }
    // forward substitution with the recorded pivoting
    for (int i = 0; i + 1 < n; ++i) {
        if (!piv[i]) {
            b[i + 1] -= dl[i] * b[i];
        } else {
            double temp = b[i];
            b[i] = b[i + 1];
            b[i + 1] = temp - dl[i] * b[i];
        }
    }
    // back substitution
    double dn = d[n - 1] == 0.0 ? 1e-300 : d[n - 1];
    b[n - 1] /= dn;
    if (n >= 2) {
        double dm = d[n - 2] == 0.0 ? 1e-300 : d[n - 2];
        b[n - 2] = (b[n - 2] - du[n - 2] * b[n - 1]) / dm;
    }
    for (int i = n - 3; i >= 0; --i) {
        double dd = d[i] == 0.0 ? 1e-300 : d[i];
        b[i] = (b[i] - du[i] * b[i + 1] - du2[i] * b[i + 2]) / dd;
    }
}

double inverse_iteration(const Tridiag& T, double sigma, std::vector<double>& v, int sweeps)
{
    const int n = T.n();
    if (static_cast<int>(v.size()) != n) throw std::invalid_argument("inverse_iteration: bad start vector");
    double rayleigh = sigma;
    for (int s = 0; s < sweeps; ++s) {
        solve_shifted(T, sigma, v);
        double norm = 0.0;
        for (double x : v) norm += x * x;
        norm = std::sqrt(norm);
        if (!(norm > 0.0) || !std::isfinite(norm))
            throw std::runtime_error("inverse_iteration: breakdown");
        for (double& x : v) x /= norm;
        // Rayleigh quotient
        double num = 0.0;
        for (int i = 0; i < n; ++i) {
            double hv = T.diag[i] * v[i];
            if (i > 0) hv += T.off[i - 1] * v[i - 1];
            if (i + 1 < n) hv += T.off[i] * v[i + 1];
            num += v[i] * hv;
        }
        rayleigh = num;
    }
    return rayleigh;
}

} // namespace magsplit
