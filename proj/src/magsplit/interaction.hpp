#pragma once

#include "magsplit/asymptotics.hpp"
#include "magsplit/cx.hpp"
#include "magsplit/kummer.hpp"
#include "magsplit/logspace.hpp"
#include "magsplit/radial.hpp"

#include <complex>
#include <string>

namespace magsplit {

struct QuadratureConfig {
    double x2_halfwidth = 0;    // 0: from the decay-based truncation rule
    int points_per_period = 12; // oscillation panels per period
    int panel_order = 8;        // Gauss-Legendre points per panel
    double s_max = 0;           // 0: automatic
    double y_max = 0;           // 0: automatic
    int jacobi_order = 128;     // s-quadrature nodes after the sigma substitution
    int extra_digits = 25;      // precision margin on top of the cancellation depth
};

/// Direct quadrature of the interaction integral on the symmetry axis,
///   w_h = h^2 int (2 d1phi phi + i (k/h) phi^2) e^{-i theta/h} dx2,
/// folded to x2 >= 0 (the integrand pairs into a real even part). The axis
/// values come from a Taylor-series march of the exterior equation at the
/// state's eigenvalue, anchored to the eigenvector at r = a; everything runs
/// at a precision set by the cancellation depth e^{I/h}.
struct WhDirectResult {
    LogComplex w;     // real negative in exact arithmetic; phase carries sign
    LogReal phi_mid;  // marched phi(L/2) on the normalized scale
    double X = 0;     // axis truncation
    double r_seed = 0;
    int nodes = 0;
    int limbs = 0;
    double fold_check = -1; // |folded-unfolded|/|w| when requested
    double tail_fraction = 0; // |last panel| / |total|
};
WhDirectResult wh_direct(double h, const RadialGroundState& st, const MagneticProfile& p,
                         const WellGeometry& g, const QuadratureConfig& q,
                         bool with_fold_check = false);

enum class WhContour {
    shifted_fixed, // y-line through i z_-(0); double precision
    shifted_per_s, // y-line through i z_-(s) for each s; double precision
    real_axis      // oscillatory real-line quadrature at extended precision
};

/// Brute-force quadrature of W_h = int omega m(s1) m(s2) e^{-psi/h} ds dy.
/// The two s-integrals factor through the same exponential once y is fixed,
/// which the evaluation exploits; no asymptotics enter anywhere.
LogComplex Wh_numeric(double h, const KummerParams& kp, const PhaseData& d,
                      const QuadratureConfig& q, WhContour contour = WhContour::shifted_fixed);

/// w_h = h C(h)^2 (L/2)^(2 gamma) (b1 L^2/4) W_h, assembled in log space.
LogComplex wh_from_Wh(double h, double logC, const KummerParams& kp, const PhaseData& d,
                      const LogComplex& Wh);

/// Both sides of the contour-shift identity for the y-integral at fixed s,
/// evaluated at a precision deep enough to resolve the unshifted cancellation.
struct ContourCheckResult {
    LogComplex unshifted;
    LogComplex shifted;
    double rel_diff = 0;
    int limbs = 0;
};
ContourCheckResult contour_check(double s1, double s2, double h, const PhaseData& d,
                                 const QuadratureConfig& q);

/// Leading complex-Laplace term of the shifted y-integral:
/// sqrt(2 pi h / Re d2psi(s, i z_-)) * omega(s, i z_-).
std::complex<double> laplace_y(double s1, double s2, double h, const PhaseData& d);

/// Shifted y-integral of e^{-(psi(s,y+iz)-psi(s,iz))/h} omega(s,y+iz), the
/// quantity laplace_y approximates (double precision; no cancellation).
std::complex<double> laplace_y_quadrature(double s1, double s2, double h, const PhaseData& d,
                                          const QuadratureConfig& q);

/// Closed-form leading value W_h ~ c0 h^(1+delta0) e^(-F(0)/h).
LogReal Wh_laplace(double h, const PhaseData& d);

/// Per-h record of the three pipelines and their mutual ratios.
struct SplittingReport {
    double h = 0;
    double log10_w_direct = 0;
    double log10_w_from_W = 0;
    double log10_W_numeric = 0;
    double log10_W_laplace = 0;
    double log10_gap_direct = 0; // 2 |w_direct|
    double log10_gap_pred = 0;   // theorem closed form
    double ratio_gap = 0;        // 2|w_direct| / gap_pred
    double wh_routes_dev = 0;    // |w_direct/w_from_W - 1|
    double laplace_dev = 0;      // |W_numeric/W_laplace - 1|
    double w_direct_phase = 0;   // arg of the direct value (0 or pi)
    double a0_extrapolated = 0;  // midpoint WKB amplitude, when available
    double ratio_gap_a0 = 0;     // ratio_gap / (2 pi a0^2)
    bool hypothesis = false;
    bool inequality_ok = false;
    bool a0_consistent = false;  // ratio_gap_a0 within 2 percent of 1
    double axis_truncation = 0;
    double mu = 0;

    std::string to_json() const;
    static SplittingReport from_json(const std::string& s);
};

SplittingReport splitting_report(double h, const MagneticProfile& p, const WellGeometry& g,
                                 const RadialGroundState& st, const QuadratureConfig& q,
                                 const PredictionConstants& k, double a0_extrapolated = 0.0);

} // namespace magsplit
