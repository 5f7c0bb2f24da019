#pragma once

#include "magsplit/logspace.hpp"
#include "magsplit/profile.hpp"

#include <array>
#include <complex>

namespace magsplit {

/// Snapshot of the geometry/flux data the reduced phase depends on.
struct PhaseData {
    double b1 = 0;
    double L = 0;
    double N = 0;      // relative flux in (0, 1)
    double absM = 0;   // |M| = N b1 L^2 / 8
    double delta0 = 0; // (b1 - b0)/(2 b1)

    double b1L2_over_8() const { return b1 * L * L / 8.0; }
    double c(double s1, double s2) const { return 1.0 + s1 + s2; }
};

PhaseData make_phase_data(const MagneticProfile& p, const WellGeometry& g);

/// Lower root of z^2 - ((c-1)/c) z + (N-1)/c with c = 1 + s1 + s2;
/// lies in (-1/c, 0) for N in (0,1).
double z_minus(double s1, double s2, double N);
/// d z_-/d s_j (equal for j = 1,2).
double dz_minus(double s1, double s2, double N);
/// Closed form (1 + sqrt(1-N))/2 at s = 0.
double dz_minus_at_zero(double N);

/// Complex phase psi(s, y) = (b1 L^2/8) c <y>^2 + i (b1 L^2/4) y - 2|M| Log(1+iy).
std::complex<double> psi(double s1, double s2, std::complex<double> y, const PhaseData& d);
std::complex<double> d2psi_dy2(double s1, double s2, std::complex<double> y,
                               const PhaseData& d);

/// omega(s, y) = (N/<y>^2 - 1)(1 - i y) - 2 s1.
std::complex<double> omega(double s1, double s2, std::complex<double> y, const PhaseData& d);

/// Reduced real phase F(s) = psi(s, i z_-(s)) - |M| ln[(1+s1)(1+s2)]; complex
/// evaluation with the imaginary residue asserted below 1e-13.
double F(double s1, double s2, const PhaseData& d);
std::array<double, 2> grad_F(double s1, double s2, const PhaseData& d);
std::array<std::array<double, 2>, 2> hess_F(double s1, double s2, const PhaseData& d);

/// Closed form F(0) = (b1 L^2/4)(N/2 + sqrt(1-N) - N ln(1+sqrt(1-N))).
double F_at_zero(const PhaseData& d);

/// I = (b1 L^2/4)((N-1)/2 + sqrt(1-N) - N ln(1+sqrt(1-N))) and, as an
/// independent route, the Agmon-integral form; a mismatch beyond 1e-9
/// relative is an internal error.
struct ConstantI {
    double closed = 0;
    double integral_form = 0;
};
ConstantI constant_I(const MagneticProfile& p, const WellGeometry& g, const PhaseData& d);

/// c0 = -(8 pi Gamma(delta0)/(b1 L^2)) (1-N)^(-1/4) (b1 L^2/8)^(-delta0)
///      (1+sqrt(1-N))^(-2 delta0)  (always negative).
double constant_c0(const PhaseData& d);

/// Prefactor of the gap estimate: c = 2/Gamma(delta0) (b1 L^2/8)^delta0
/// ((1-N)/(1+sqrt(1-N)))^(2 delta0) (1-N)^(-1/4).
double constant_c(const PhaseData& d);

/// Everything needed for the closed-form gap.
struct PredictionConstants {
    double M = 0, N = 0, delta0 = 0;
    double phi0 = 0, S0 = 0, S = 0, I = 0;
    double F0 = 0, c0 = 0, c = 0;
    double b0 = 0, b1 = 0, L = 0, a = 0;
    bool hypothesis = false;
    bool inequality_ok = false;
};
PredictionConstants compute_constants(const MagneticProfile& p, const WellGeometry& g);

/// Predicted gap c e^(-S/h) h^(1/2 + b0/(2 b1)) and the signed interaction
/// coefficient -(c/2) e^(-S/h) h^(1-delta0); the exponent identity
/// 1 - delta0 = 1/2 + b0/(2 b1) is asserted.
LogReal gap_prediction(double h, const PredictionConstants& k);
LogReal wh_prediction(double h, const PredictionConstants& k);

} // namespace magsplit
