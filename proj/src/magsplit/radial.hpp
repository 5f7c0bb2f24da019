#pragma once

#include "magsplit/bigfloat.hpp"
#include "magsplit/logspace.hpp"
#include "magsplit/profile.hpp"

#include <utility>
#include <vector>

namespace magsplit {

struct RadialSolverConfig {
    double r_max = 0.0;   // 0: default L + 3
    int n = 40000;        // fine-grid size
    double eig_tol = 1e-12;
    bool refine_tail = true; // build the ODE-refined exterior table
};

/// Ground state of the one-well radial operator
///   -h^2 r^-1 (r phi')' + (alpha(r)/r)^2 phi = mu phi
/// discretized by the cell-centered flux scheme (no-flux at r = 0, Dirichlet
/// at r_max) and planar-normalized: 2 pi int phi^2 r dr = 1.
///
/// The eigenvector carries the O(dx^2) dispersion of the three-point scheme
/// in its far tail, so the state also stores an ODE-refined exterior table
/// (log phi and phi'/phi from a stable inward Riccati march at the converged
/// eigenvalue, anchored to the Richardson-extrapolated eigenvector at r = a);
/// axis evaluation uses that table.
struct RadialGroundState {
    double h = 0;
    double mu = 0;        // Richardson-extrapolated ground eigenvalue
    double mu_grid = 0;   // fine-grid eigenvalue
    double mu2 = 0;       // fine-grid second eigenvalue
    double r_max = 0;
    double dx = 0;

    std::vector<double> r_grid;
    std::vector<double> phi;  // planar-normalized, positive
    std::vector<double> dphi;

    double anchor_r = 0;      // = a
    double log_phi_anchor = 0; // log of the (Richardson) normalized value at r = a

    // exterior table on [a, r_max]: g = log(phi/phi(a)), d = phi'/phi
    std::vector<double> tab_r, tab_g, tab_d;

    double grid_residual = 0; // ||(C - mu_grid) chi|| / ||C chi||

    /// phi(r) in log space for any r in [a, r_max] (exterior table).
    LogReal log_phi(double r) const;
    /// phi'(r)/phi(r) from the exterior table.
    double log_derivative(double r) const;

    /// (phi_l(0, x2), d1 phi_l(0, x2)) in log space; the derivative uses the
    /// chain rule d1 phi_l(0,x2) = (L/2)/r * phi'(r), r = sqrt(L^2/4 + x2^2).
    std::pair<LogReal, LogReal> axis_value(const WellGeometry& g, double x2) const;
    /// Same, as plain doubles (valid while exp(log phi) is representable).
    std::pair<double, double> evaluate_on_axis(const WellGeometry& g, double x2) const;
};

RadialGroundState ground_state(double h, const MagneticProfile& p, const WellGeometry& g,
                               const RadialSolverConfig& cfg);

/// Harmonic-approximation constants of the well: d0 = sqrt(det H)/b0 and
/// d1 = (tr sqrt(H))^2/(2 b0) with H = (1/2) Hess B at the minimum, i.e.
/// d0 = beta'(0)/(2 b0) and d1 = beta'(0)/b0 for a radial profile.
///
/// The ground state obeys mu(h) = b0 h + d1 h^2 + o(h^2); d0 sets the h^2
/// spacing scale of the low two-dimensional spectrum. (The radial sector's
/// own second eigenvalue sits near 3 b0 h, one Landau step up.)
struct EigenvalueExpansion {
    double d0 = 0;
    double d1 = 0;
    double mu1_coeff() const { return d1; }
};
EigenvalueExpansion eigenvalue_expansion(const MagneticProfile& p);

/// Inward Riccati march of the radial ODE at eigenvalue mu:
/// d = phi'/phi and g = log phi (relative to the start), from r_hi down to
/// r_lo, seeded with the decaying WKB branch at r_hi. Rows ascending in r.
struct RiccatiTable {
    std::vector<double> r, g, d;
};
RiccatiTable riccati_march(const MagneticProfile& p, double mu, double h, double r_lo,
                           double r_hi, double base_step);

/// Extended-precision Taylor-series march of the exterior ODE
///   -h^2 (r^2 phi'' + r phi') + (M^2 + (M b1 - mu) r^2 + (b1^2/4) r^4) phi = 0
/// through the given radii (strictly descending, all >= a), seeded with the
/// decaying branch at radii.front(). Returns phi and phi' at every radius;
/// the overall scale is arbitrary (seed phi = 1).
struct ExteriorMarch {
    std::vector<BigFloat> phi, dphi;
};
ExteriorMarch taylor_march_exterior(const BigFloat& M, double b1, double mu, double h,
                                    const std::vector<BigFloat>& radii, int limbs);

} // namespace magsplit
