#pragma once

#include "magsplit/logspace.hpp"
#include "magsplit/profile.hpp"
#include "magsplit/quadrature.hpp"

#include <utility>

namespace magsplit {

/// Parameters of the exterior (constant-field) representation
///   phi(r) = C(h) r^gamma int_0^inf e^{-(b1/4h)(1+2t) r^2} m(t) dt,
///   m(t) = t^(delta-1) (1+t)^(gamma-delta)
struct KummerParams {
    double gamma = 0; // |M| / h
    double delta = 0; // (b1 h - mu) / (2 h b1)
    double h = 0;
    double b1 = 0;

    static KummerParams make(double h, double b1, double M, double mu);
};

/// log of int_0^inf e^(-rho t) t^(delta-1) (1+t)^(gamma-delta) dt, rho > 0.
/// Split at t = 1: Gauss-Jacobi with the t^(delta-1) endpoint weight on
/// (0,1), exponential substitution with drop-off truncation beyond.
double log_kummer_integral(const KummerParams& kp, double rho, int jacobi_order = 128);

/// Same integral together with its first moment int t e^(-rho t) m(t) dt.
std::pair<double, double> log_kummer_integrals01(const KummerParams& kp, double rho,
                                                 int jacobi_order = 128);

/// Exterior solution pinned to the radial value at the midpoint r = L/2.
class ExteriorSolution {
public:
    ExteriorSolution(KummerParams kp, double L, LogReal phi_mid, int jacobi_order = 128);

    double logC() const { return logC_; }
    const KummerParams& params() const { return kp_; }

    /// (phi(r), phi'(r)) in log space; r < a is a domain error.
    std::pair<LogReal, LogReal> value(double r, double a) const;

    /// Relative ODE residual at r: plug the representation into the radial
    /// equation with alpha = M + b1 r^2/2 (log-derivative form, so the check
    /// is immune to the exponential scale).
    double ode_residual(double r, double M, double mu) const;

private:
    KummerParams kp_;
    double L_;
    double logC_;
    int order_;
};

/// log C(h) predicted by the Laplace asymptotics of the matching integral,
/// given the midpoint WKB amplitude a0.
double log_C_asymptotic(double h, double a0_mid, double phi0, const MagneticProfile& p,
                        const WellGeometry& g);

} // namespace magsplit
