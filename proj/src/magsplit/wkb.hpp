#pragma once

#include "magsplit/profile.hpp"
#include "magsplit/radial.hpp"

#include <vector>

namespace magsplit {

/// WKB phase of the one-well ground state as a function of u = r^2/2:
/// Phi(u) = (1/2) int_0^u (1/v) (int_0^v beta) dv, with the integrand
/// continued by its limit b0 at v = 0.
double phi_from_u(const MagneticProfile& p, double u);

/// Phi_l(r) = phi_from_u(r^2 / 2).
double phi_ell(const MagneticProfile& p, double r);

/// Agmon distance from the left well to the border of the right one:
/// S0 = phi_from_u((L-a)^2 / 2).
double agmon_S0(const MagneticProfile& p, const WellGeometry& g);

struct AgmonData {
    double phi0 = 0;        // Phi_l at the midpoint (r = L/2)
    double S0 = 0;          // one-well Agmon distance
    double S = 0;           // tunneling exponent 2 phi0 + I
    double S_flux_form = 0; // same S from the averaged-flux integral in r
    bool hypothesis = false;
    bool inequality_ok = false; // the weaker separation inequality
};

/// Assembles S = 2 Phi_l(0) + I, evaluating the averaged-flux form as an
/// independent route; a mismatch beyond 1e-9 relative is an internal error.
AgmonData exponent_S(const MagneticProfile& p, const WellGeometry& g, double I, double N);

/// Checks the weaker separation inequality
/// int_{(L-a)^2/2}^{(L^2/8)(1+sqrt(1-N))^2} v^-1 (int_0^v beta) dv < 2 int_0^{L^2/8} beta du.
bool separation_inequality(const MagneticProfile& p, const WellGeometry& g, double N);

/// Leading WKB amplitude at the midpoint extracted from solved ground states:
/// a0_est(h) = sqrt(h) phi(L/2) exp(Phi_l(0)/h), Richardson-extrapolated in h.
struct A0Estimate {
    std::vector<double> h;
    std::vector<double> a0;
    double extrapolated = 0;
    bool monotone = true; // successive increments shrink; warning flag when false
};
A0Estimate extract_a0(const MagneticProfile& p, const WellGeometry& g,
                      const std::vector<RadialGroundState>& states);

} // namespace magsplit
