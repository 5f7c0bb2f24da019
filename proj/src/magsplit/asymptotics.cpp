#include "magsplit/asymptotics.hpp"

#include "magsplit/quadrature.hpp"
#include "magsplit/specfun.hpp"
#include "magsplit/wkb.hpp"

#include <cmath>
#include <stdexcept>

namespace magsplit {

PhaseData make_phase_data(const MagneticProfile& p, const WellGeometry& g)
{
    FluxData f = relative_flux(p, g);
    PhaseData d;
    d.b1 = p.b1();
    d.L = g.L;
    d.N = f.N;
    d.absM = std::fabs(f.M);
    d.delta0 = f.delta0;
    return d;
}

double z_minus(double s1, double s2, double N)
{
    if (!(N > 0.0 && N < 1.0)) throw std::domain_error("z_minus: N must lie in (0,1)");
    if (s1 < 0 || s2 < 0) throw std::domain_error("z_minus: s must be non-negative");
    const double c = 1.0 + s1 + s2;
    const double b = (c - 1.0) / c;
    return 0.5 * b - 0.5 * std::sqrt(b * b + 4.0 * (1.0 - N) / c);
}

double dz_minus(double s1, double s2, double N)
{
    const double c = 1.0 + s1 + s2;
    const double z = z_minus(s1, s2, N);
    // implicit differentiation of P = z^2 - ((c-1)/c) z + (N-1)/c:
    // dP/dc = -(z + N - 1)/c^2, dP/dz = 2z - (c-1)/c, dz/dc = -dP/dc / dP/dz
    return (z + N - 1.0) / (c * c * (2.0 * z - (c - 1.0) / c));
}

double dz_minus_at_zero(double N)
{
    if (!(N > 0.0 && N < 1.0)) throw std::domain_error("dz_minus_at_zero: N must lie in (0,1)");
    return 0.5 * (1.0 + std::sqrt(1.0 - N));
}

std::complex<double> psi(double s1, double s2, std::complex<double> y, const PhaseData& d)
{
    const std::complex<double> one_piy = 1.0 + std::complex<double>(0, 1) * y;
    if (one_piy.real() <= 0.0 && one_piy.imag() == 0.0)
        throw std::domain_error("psi: log branch cut hit");
    const double A = d.b1L2_over_8();
    return A * d.c(s1, s2) * (1.0 + y * y) +
           std::complex<double>(0, 2.0 * A) * y - 2.0 * d.absM * std::log(one_piy);
}

std::complex<double> d2psi_dy2(double s1, double s2, std::complex<double> y, const PhaseData& d)
{
    const std::complex<double> one_piy = 1.0 + std::complex<double>(0, 1) * y;
    return 2.0 * d.b1L2_over_8() * (d.c(s1, s2) - d.N / (one_piy * one_piy));
}

std::complex<double> omega(double s1, double s2, std::complex<double> y, const PhaseData& d)
{
    (void)s2;
    const std::complex<double> y2p1 = 1.0 + y * y;
    if (std::abs(y2p1) < 1e-14) throw std::domain_error("omega: pole at y = +-i");
    return (d.N / y2p1 - 1.0) * (1.0 - std::complex<double>(0, 1) * y) - 2.0 * s1;
}

double F(double s1, double s2, const PhaseData& d)
{
    if (s1 < 0 || s2 < 0) throw std::domain_error("F: s must be non-negative");
    const double z = z_minus(s1, s2, d.N);
    std::complex<double> val = psi(s1, s2, std::complex<double>(0, z), d) -
                               d.absM * std::log((1.0 + s1) * (1.0 + s2));
    if (std::fabs(val.imag()) > 1e-13 * std::max(1.0, std::fabs(val.real())))
        throw std::runtime_error("F: nonreal value at the critical point");
    return val.real();
}

std::array<double, 2> grad_F(double s1, double s2, const PhaseData& d)
{
    const double z = z_minus(s1, s2, d.N);
    const double common = d.b1L2_over_8() * (1.0 - z * z);
    return {common - d.absM / (1.0 + s1), common - d.absM / (1.0 + s2)};
}

std::array<std::array<double, 2>, 2> hess_F(double s1, double s2, const PhaseData& d)
{
    const double z = z_minus(s1, s2, d.N);
    const double zp = dz_minus(s1, s2, d.N);
    const double off = -2.0 * d.b1L2_over_8() * z * zp;
    std::array<std::array<double, 2>, 2> H;
    H[0][0] = off + d.absM / ((1.0 + s1) * (1.0 + s1));
    H[1][1] = off + d.absM / ((1.0 + s2) * (1.0 + s2));
    H[0][1] = H[1][0] = off;
    return H;
}

double F_at_zero(const PhaseData& d)
{
    const double root = std::sqrt(1.0 - d.N);
    return 2.0 * d.b1L2_over_8() *
           (0.5 * d.N + root - d.N * std::log1p(root));
}

ConstantI constant_I(const MagneticProfile& p, const WellGeometry& g, const PhaseData& d)
{
    ConstantI out;
    const double root = std::sqrt(1.0 - d.N);
    out.closed = 2.0 * d.b1L2_over_8() *
                 (0.5 * (d.N - 1.0) + root - d.N * std::log1p(root));
    const double lo = g.L * g.L / 8.0;
    const double hi = lo * (1.0 + root) * (1.0 + root);
    auto q = integrate_gk([&](double v) { return p.cumulative_beta(v) / v; }, lo, hi, 1e-12,
                          1e-12);
    out.integral_form = q.value - 2.0 * p.cumulative_beta(lo);
    if (std::fabs(out.closed - out.integral_form) > 1e-9 * std::max(1.0, std::fabs(out.closed)))
        throw std::runtime_error("constant_I: closed form and integral form disagree");
    return out;
}

double constant_c0(const PhaseData& d)
{
    // Corner Gaussian moment evaluated in closed form. With r = sqrt(1-N) the
    // substitution u = s1 s2, v = s2 - s1 factorizes the quadrant integral into
    // sqrt(2 pi / H11) Gamma(delta0) (2 H12 + |M|)^-delta0 times (1 + r), and
    // H11 = A8 (1+r), 2 H12 + |M| = A8 (1+r)^2, Re d2psi = 4 A8 r/(1+r).
    const double root = std::sqrt(1.0 - d.N);
    return -(1.0 + root) * 8.0 * M_PI * gamma_fn(d.delta0) / (d.b1 * d.L * d.L) *
           std::pow(1.0 - d.N, -0.25) * std::pow(d.b1L2_over_8(), -d.delta0) *
           std::pow(1.0 + root, -2.0 * d.delta0);
}

double constant_c(const PhaseData& d)
{
    const double root = std::sqrt(1.0 - d.N);
    return (1.0 + root) * 2.0 / gamma_fn(d.delta0) * std::pow(d.b1L2_over_8(), d.delta0) *
           std::pow((1.0 - d.N) / (1.0 + root), 2.0 * d.delta0) * std::pow(1.0 - d.N, -0.25);
}

PredictionConstants compute_constants(const MagneticProfile& p, const WellGeometry& g)
{
    PredictionConstants k;
    PhaseData d = make_phase_data(p, g);
    k.M = -d.absM;
    k.N = d.N;
    k.delta0 = d.delta0;
    k.b0 = p.b0();
    k.b1 = p.b1();
    k.L = g.L;
    k.a = p.a();
    ConstantI ci = constant_I(p, g, d);
    k.I = ci.closed;
    AgmonData ag = exponent_S(p, g, k.I, d.N);
    k.phi0 = ag.phi0;
    k.S0 = ag.S0;
    k.S = ag.S;
    k.hypothesis = ag.hypothesis;
    k.inequality_ok = ag.inequality_ok;
    k.F0 = F_at_zero(d);
    k.c0 = constant_c0(d);
    k.c = constant_c(d);
    return k;
}

namespace {

void check_exponent_identity(const PredictionConstants& k)
{
    const double lhs = 1.0 - k.delta0;
    const double rhs = 0.5 + k.b0 / (2.0 * k.b1);
    if (std::fabs(lhs - rhs) > 1e-14)
        throw std::runtime_error("gap exponent identity 1-delta0 = 1/2 + b0/(2 b1) violated");
}

} // namespace

LogReal gap_prediction(double h, const PredictionConstants& k)
{
    check_exponent_identity(k);
    const double expo = 0.5 + k.b0 / (2.0 * k.b1);
    return LogReal{std::log(k.c) - k.S / h + expo * std::log(h), 1};
}

LogReal wh_prediction(double h, const PredictionConstants& k)
{
    check_exponent_identity(k);
    return LogReal{std::log(0.5 * k.c) - k.S / h + (1.0 - k.delta0) * std::log(h), -1};
}

} // namespace magsplit
