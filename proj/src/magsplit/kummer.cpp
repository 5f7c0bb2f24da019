#include "magsplit/kummer.hpp"

#include "magsplit/specfun.hpp"
#include "magsplit/wkb.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace magsplit {

KummerParams KummerParams::make(double h, double b1, double M, double mu)
{
    KummerParams kp;
    kp.h = h;
    kp.b1 = b1;
    kp.gamma = std::fabs(M) / h;
    kp.delta = (b1 * h - mu) / (2.0 * h * b1);
    if (!(kp.delta > 0.0))
        throw std::domain_error("KummerParams: delta must be positive (mu >= b1 h?)");
    return kp;
}

namespace {

// log integrand of the tail in s, t = e^s
double tail_log(const KummerParams& kp, double rho, double s)
{
    double t = std::exp(s);
    return -rho * t + kp.delta * s + (kp.gamma - kp.delta) * std::log1p(t);
}

struct SplitIntegrals {
    double log0; // log int m e^-rho t
    double log1; // log int t m e^-rho t
};

SplitIntegrals kummer_split(const KummerParams& kp, double rho, int order)
{
    if (!(rho > 0.0)) throw std::domain_error("kummer integral: rho must be positive");
    const double ge = kp.gamma - kp.delta;

    // (0, 1): Gauss-Jacobi with the t^(delta-1) weight inside the rule
    JacobiRule rule = gauss_jacobi01(order, kp.delta);
    double peak = -1e300;
    std::vector<double> lg(order);
    for (int i = 0; i < order; ++i) {
        lg[i] = -rho * rule.t[i] + ge * std::log1p(rule.t[i]) + std::log(rule.w[i]);
        peak = std::max(peak, lg[i]);
    }
    double s0 = 0, s1 = 0;
    for (int i = 0; i < order; ++i) {
        double e = std::exp(lg[i] - peak);
        s0 += e;
        s1 += e * rule.t[i];
    }
    if (!(s0 > 0.0)) throw std::runtime_error("kummer integral: left quadrature vanished");
    double left0 = peak + std::log(s0);
    double left1 = peak + std::log(s1);

    // (1, inf): t = e^s, truncated where the integrand drops 1e-18 below t = 1
    const double f0 = tail_log(kp, rho, 0.0);
    double s_end = 0.5;
    while (tail_log(kp, rho, s_end) > f0 - 45.0) {
        s_end += 0.5;
        if (s_end > 700.0) throw std::runtime_error("kummer integral tail does not decay");
    }
    auto q0 = integrate_gk([&](double s) { return std::exp(tail_log(kp, rho, s) - f0); }, 0.0,
                           s_end, 1e-15, 1e-13);
    auto q1 = integrate_gk(
        [&](double s) { return std::exp(tail_log(kp, rho, s) - f0 + s); }, 0.0, s_end, 1e-15,
        1e-13);
    if (!(q0.value >= 0.0) || !(q1.value >= 0.0))
        throw std::runtime_error("kummer integral: negative tail");

    SplitIntegrals out;
    auto logsum = [](double la, double lb) {
        if (lb > la) std::swap(la, lb);
        return la + std::log1p(std::exp(lb - la));
    };
    double right0 = q0.value > 0 ? f0 + std::log(q0.value) : -1e300;
    double right1 = q1.value > 0 ? f0 + std::log(q1.value) : -1e300;
    out.log0 = logsum(left0, right0);
    out.log1 = logsum(left1, right1);
    return out;
}

} // namespace

double log_kummer_integral(const KummerParams& kp, double rho, int jacobi_order)
{
    return kummer_split(kp, rho, jacobi_order).log0;
}

std::pair<double, double> log_kummer_integrals01(const KummerParams& kp, double rho,
                                                 int jacobi_order)
{
    SplitIntegrals s = kummer_split(kp, rho, jacobi_order);
    return {s.log0, s.log1};
}

ExteriorSolution::ExteriorSolution(KummerParams kp, double L, LogReal phi_mid, int jacobi_order)
    : kp_(kp), L_(L), order_(jacobi_order)
{
    if (phi_mid.sgn <= 0) throw std::domain_error("ExteriorSolution: phi at midpoint must be positive");
    const double half = 0.5 * L;
    const double rho0 = kp.b1 * half * half / (2.0 * kp.h);
    const double logK = log_kummer_integral(kp, rho0, order_);
    logC_ = phi_mid.log_mag - (kp.gamma * std::log(half) - kp.b1 * half * half / (4.0 * kp.h) + logK);
}

std::pair<LogReal, LogReal> ExteriorSolution::value(double r, double a) const
{
    if (r < a)
        throw std::domain_error("ExteriorSolution: representation invalid inside the well");
    const double rho = kp_.b1 * r * r / (2.0 * kp_.h);
    auto [k0, k1] = log_kummer_integrals01(kp_, rho, order_);
    const double logphi = logC_ + kp_.gamma * std::log(r) - kp_.b1 * r * r / (4.0 * kp_.h) + k0;
    // phi' = phi * [gamma/r - (b1 r / 2h)(1 + 2 K1/K0)]
    const double ratio = std::exp(k1 - k0);
    const double d = kp_.gamma / r - (kp_.b1 * r / (2.0 * kp_.h)) * (1.0 + 2.0 * ratio);
    LogReal phi{logphi, 1};
    LogReal dphi = phi * LogReal::from_value(d);
    return {phi, dphi};
}

double ExteriorSolution::ode_residual(double r, double M, double mu) const
{
    const double h = kp_.h;
    auto dfun = [&](double rr) {
        const double rho = kp_.b1 * rr * rr / (2.0 * h);
        auto [k0, k1] = log_kummer_integrals01(kp_, rho, order_);
        const double ratio = std::exp(k1 - k0);
        return kp_.gamma / rr - (kp_.b1 * rr / (2.0 * h)) * (1.0 + 2.0 * ratio);
    };
    const double step = 5e-3;
    const double d0 = dfun(r);
    const double dp = (dfun(r - 2 * step) - 8 * dfun(r - step) + 8 * dfun(r + step) -
                       dfun(r + 2 * step)) /
                      (12 * step);
    const double ar = (M + 0.5 * kp_.b1 * r * r) / r;
    const double R = -h * h * (dp + d0 * d0 + d0 / r) + ar * ar - mu;
    const double denom = ar * ar + h * h * d0 * d0 + std::fabs(mu);
    return std::fabs(R) / denom;
}

double log_C_asymptotic(double h, double a0_mid, double phi0, const MagneticProfile& p,
                        const WellGeometry& g)
{
    const double b1 = p.b1();
    const double L = g.L;
    const double absM = std::fabs(p.flux_deficit());
    const double delta0 = (b1 - p.b0()) / (2.0 * b1);
    const double arg = b1 * L * L / 8.0 - absM;
    if (!(arg > 0.0)) throw std::domain_error("log_C_asymptotic: b1 L^2/8 - |M| must be positive");
    return -0.5 * std::log(h) + std::log(a0_mid) - phi0 / h + b1 * L * L / (16.0 * h) -
           log_gamma(delta0) - delta0 * std::log(h) - (absM / h) * std::log(0.5 * L) +
           delta0 * std::log(arg);
}

} // namespace magsplit
