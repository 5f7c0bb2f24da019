#include "magsplit/wkb.hpp"

#include "magsplit/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace magsplit {

double phi_from_u(const MagneticProfile& p, double u)
{
    if (u < 0) throw std::domain_error("phi_from_u: negative argument");
    if (u == 0) return 0.0;
    const double ua = p.u_a();
    auto integrand = [&](double v) { return p.cumulative_beta(v) / v; };
    if (u <= ua) {
        auto r = integrate_gk(integrand, 0.0, u, 1e-13, 1e-13);
        return 0.5 * r.value;
    }
    // analytic continuation past u_a where int_0^v beta = M + b1 v
    auto r = integrate_gk(integrand, 0.0, ua, 1e-13, 1e-13);
    const double M = p.flux_deficit();
    return 0.5 * (r.value + p.b1() * (u - ua) + M * std::log(u / ua));
}

double phi_ell(const MagneticProfile& p, double r)
{
    if (r < 0) throw std::domain_error("phi_ell: negative radius");
    return phi_from_u(p, 0.5 * r * r);
}

double agmon_S0(const MagneticProfile& p, const WellGeometry& g)
{
    const double d = g.L - p.a();
    return phi_from_u(p, 0.5 * d * d);
}

AgmonData exponent_S(const MagneticProfile& p, const WellGeometry& g, double I, double N)
{
    AgmonData out;
    out.phi0 = phi_from_u(p, g.L * g.L / 8.0);
    out.S0 = agmon_S0(p, g);
    out.S = 2.0 * out.phi0 + I;
    // averaged-flux form: int_0^{L/2} (pi r^2)^-1 (int_{D(x_l,r)} B) r dr + I
    // with the disc flux 2 pi int_0^{r^2/2} beta
    auto res = integrate_gk(
        [&](double r) { return 2.0 * p.cumulative_beta(0.5 * r * r) / r; }, 0.0, 0.5 * g.L,
        1e-12, 1e-12);
    out.S_flux_form = res.value + I;
    if (std::fabs(out.S_flux_form - out.S) > 1e-9 * std::max(1.0, std::fabs(out.S)))
        throw std::runtime_error("exponent_S: flux form and radial form disagree");
    out.hypothesis = g.theorem_hypothesis(p.a());
    out.inequality_ok = separation_inequality(p, g, N);
    return out;
}

bool separation_inequality(const MagneticProfile& p, const WellGeometry& g, double N)
{
    const double lo = 0.5 * (g.L - p.a()) * (g.L - p.a());
    const double root = 1.0 + std::sqrt(1.0 - N);
    const double hi = g.L * g.L / 8.0 * root * root;
    if (hi <= lo) return true; // empty range
    auto lhs = integrate_gk([&](double v) { return p.cumulative_beta(v) / v; }, lo, hi,
                            1e-12, 1e-12);
    const double rhs = 2.0 * p.cumulative_beta(g.L * g.L / 8.0);
    return lhs.value < rhs;
}

A0Estimate extract_a0(const MagneticProfile& p, const WellGeometry& g,
                      const std::vector<RadialGroundState>& states)
{
    if (states.size() < 3)
        throw std::invalid_argument("extract_a0: need at least three states");
    A0Estimate est;
    const double phi0 = phi_from_u(p, g.L * g.L / 8.0);
    for (const auto& st : states) {
        LogReal v = st.log_phi(0.5 * g.L);
        double log_a0 = 0.5 * std::log(st.h) + v.log_mag + phi0 / st.h;
        est.h.push_back(st.h);
        est.a0.push_back(std::exp(log_a0));
    }
    // sort by decreasing h
    std::vector<size_t> idx(est.h.size());
    for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](size_t a, size_t b) { return est.h[a] > est.h[b]; });
    std::vector<double> hs, as;
    for (size_t i : idx) {
        hs.push_back(est.h[i]);
        as.push_back(est.a0[i]);
    }
    est.h = hs;
    est.a0 = as;
    // Neville extrapolation of the polynomial through (h_i, a0_i) to h = 0
    std::vector<double> tab = as;
    const size_t n = tab.size();
    for (size_t lvl = 1; lvl < n; ++lvl) {
        for (size_t i = 0; i + lvl < n; ++i) {
            tab[i] = (hs[i + lvl] * tab[i] - hs[i] * tab[i + 1]) / (hs[i + lvl] - hs[i]);
        }
    }
    est.extrapolated = tab[0];
    est.monotone = true;
    for (size_t i = 2; i < n; ++i) {
        if (std::fabs(as[i] - as[i - 1]) > std::fabs(as[i - 1] - as[i - 2]))
            est.monotone = false;
    }
    for (double a : as)
        if (!(a > 0)) throw std::runtime_error("extract_a0: non-positive amplitude");
    return est;
}

} // namespace magsplit
