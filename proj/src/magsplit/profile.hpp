#pragma once

#include "magsplit/bigfloat.hpp"

#include <string>
#include <utility>
#include <vector>

namespace magsplit {

struct Vec2 {
    double x = 0;
    double y = 0;
};

/// Radial profile beta(u) of the magnetic well, u = |x - center|^2 / 2.
///
/// The built-in family is
///   beta(u) = b1 - (b1 - b0) * exp(-kappa u / (u_a - u))   for u < u_a = a^2/2
///   beta(u) = b1                                            for u >= u_a
/// which is smooth, non-decreasing and attains both bounds. A tabulated
/// profile (monotone cubic through user samples) is accepted as well; its
/// invariants are checked at load.
class MagneticProfile {
public:
    enum class Kind { builtin, tabulated };

    static MagneticProfile builtin(double b0, double b1, double a, double kappa);
    static MagneticProfile tabulated(double b0, double b1, double a,
                                     std::vector<std::pair<double, double>> samples);

    double b0() const { return b0_; }
    double b1() const { return b1_; }
    double a() const { return a_; }
    double kappa() const { return kappa_; }
    Kind kind() const { return kind_; }
    double u_a() const { return 0.5 * a_ * a_; }

    /// beta(u); exactly b1 for u >= u_a. Negative u is a domain error.
    double beta(double u) const;
    /// beta'(0) > 0
    double beta_prime0() const;

    /// A(u) = int_0^u beta, evaluated from a per-cell Gauss prefix table for
    /// u <= u_a and in closed form beyond.
    double cumulative_beta(double u) const;

    /// alpha(r) = int_0^{r^2/2} beta = flux through D(center, r) / (2 pi r) * r...
    /// for r >= a this is exactly M + b1 r^2 / 2.
    double alpha(double r) const;

    /// M = int_0^inf (beta - b1) du <= 0 by adaptive quadrature.
    double flux_deficit() const { return flux_m_; }
    /// The same quantity from its planar definition, as a redundant check:
    /// (1/2pi) int_{R^2} (B_left - b1) dx by 2D quadrature.
    double flux_deficit_2d() const;

    /// M at extended precision (built-in family re-integrated; tabulated
    /// profiles promote the double value, which keeps pipelines consistent).
    BigFloat flux_deficit_big(int limbs) const;

private:
    Kind kind_ = Kind::builtin;
    double b0_ = 0, b1_ = 0, a_ = 0, kappa_ = 1;
    double flux_m_ = 0;

    // tabulated profile: PCHIP data
    std::vector<double> tab_u_, tab_b_, tab_d_;

    // prefix table of int beta over [0, u_a]
    std::vector<double> cell_prefix_;
    int cells_ = 0;

    void validate_and_finish();
    double beta_unchecked(double u) const;
};

/// Double-well layout: centers (-L/2, 0) and (L/2, 0).
struct WellGeometry {
    double L = 0;
    Vec2 x_left() const { return {-0.5 * L, 0.0}; }
    Vec2 x_right() const { return {0.5 * L, 0.0}; }
    /// Separation hypothesis of the gap estimate.
    bool theorem_hypothesis(double a) const;
};

WellGeometry make_geometry(const MagneticProfile& p, double L);

struct FluxData {
    double M = 0;      // flux difference, <= 0
    double N = 0;      // relative flux in (0, 1)
    double delta0 = 0; // (b1 - b0) / (2 b1)
};

/// N = 8|M| / (b1 L^2); throws when outside [0, a^2/(L/2)^2).
FluxData relative_flux(const MagneticProfile& p, const WellGeometry& g);

/// Interaction gauge phase on the symmetry axis, odd in x2 by construction:
/// theta(0, x2) = b1 L x2 / 2 + 2 M atan(2 x2 / L).
double theta_on_axis(const MagneticProfile& p, const WellGeometry& g, double x2);
BigFloat theta_on_axis_big(const BigFloat& M, double b1, double L, const BigFloat& x2);

/// k(0, x2) = b1 x2 + 2 M x2 / (L^2/4 + x2^2), odd in x2.
double k_on_axis(const MagneticProfile& p, const WellGeometry& g, double x2);
BigFloat k_on_axis_big(const BigFloat& M, double b1, double L, const BigFloat& x2);

/// Full planar field: wells of radius a glued into the constant b1 background.
double field_2d(const MagneticProfile& p, const WellGeometry& g, Vec2 x);

/// Left-well vector potential A_l(x) = int_0^1 B_l(x_l + t(x-x_l)) t (x-x_l)^perp dt
/// by quadrature; used to cross-check k on the axis.
Vec2 vector_potential_left(const MagneticProfile& p, const WellGeometry& g, Vec2 x);

} // namespace magsplit
