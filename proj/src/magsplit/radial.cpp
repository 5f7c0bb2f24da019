#include "magsplit/radial.hpp"

#include "magsplit/tridiag.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace magsplit {

namespace {

// symmetrized cell-centered flux discretization: chi = sqrt(r dx) phi
Tridiag assemble(double h, const MagneticProfile& p, double r_max, int n)
{
    Tridiag T;
    T.diag.resize(n);
    T.off.resize(n - 1);
    const double dx = r_max / n;
    const double h2 = h * h;
    for (int i = 0; i < n; ++i) {
        const double r = (i + 0.5) * dx;
        const double f_lo = i * dx;       // inner face (0 at i=0: no flux through r=0)
        const double f_hi = (i + 1) * dx; // outer face (Dirichlet ghost beyond r_max)
        const double a_over_r = p.alpha(r) / r;
        T.diag[i] = h2 * (f_lo + f_hi) / (dx * dx * r) + a_over_r * a_over_r;
        if (i + 1 < n) {
            const double rn = (i + 1.5) * dx;
            T.off[i] = -h2 * f_hi / (dx * dx * std::sqrt(r * rn));
        }
    }
    return T;
}

struct GridSolve {
    double mu1 = 0, mu2 = 0;
    std::vector<double> phi; // planar-normalized, positive
    double residual = 0;
};

GridSolve solve_grid(double h, const MagneticProfile& p, double r_max, int n, double eig_tol)
{
    Tridiag T = assemble(h, p, r_max, n);
    if (sturm_count(T, 0.0) != 0)
        throw std::runtime_error("radial operator indefinite: assembly bug");
    GridSolve out;
    double mu1 = bisect_eigenvalue(T, 0, 1e-14);
    out.mu2 = bisect_eigenvalue(T, 1, 1e-13);
    const double dx = r_max / n;

    // inverse iteration for the ground vector, deterministic Gaussian start
    std::vector<double> chi(n);
    for (int i = 0; i < n; ++i) {
        double r = (i + 0.5) * dx;
        chi[i] = std::sqrt(r) * std::exp(-0.25 * p.b0() * r * r / h);
    }
    double gap = out.mu2 - mu1;
    double sigma = mu1 - std::max(1e-3 * gap, eig_tol * std::fabs(mu1));
    double rayleigh = inverse_iteration(T, sigma, chi, 3);
    rayleigh = inverse_iteration(T, rayleigh - 1e-6 * gap, chi, 1);
    out.mu1 = rayleigh;

    // residual in the grid norm
    double rnum = 0, rden = 0;
    for (int i = 0; i < n; ++i) {
        double hv = T.diag[i] * chi[i];
        if (i > 0) hv += T.off[i - 1] * chi[i - 1];
        if (i + 1 < n) hv += T.off[i] * chi[i + 1];
        rnum += (hv - out.mu1 * chi[i]) * (hv - out.mu1 * chi[i]);
        rden += hv * hv;
    }
    out.residual = std::sqrt(rnum / rden);

    // phi = chi / sqrt(r dx) with positive sign, planar normalization
    out.phi.resize(n);
    double sgn = 0;
    for (int i = 0; i < n && sgn == 0; ++i)
        if (chi[i] != 0) sgn = chi[i] > 0 ? 1 : -1;
    for (int i = 0; i < n; ++i) {
        double r = (i + 0.5) * dx;
        out.phi[i] = sgn * chi[i] / std::sqrt(r * dx);
    }
    // midpoint rule plus the Euler-Maclaurin boundary term (g' (0) = phi(0)^2)
    double s = 0;
    for (int i = 0; i < n; ++i) s += out.phi[i] * out.phi[i] * (i + 0.5) * dx;
    double phi0 = (9.0 * out.phi[0] - out.phi[1]) / 8.0;
    double integral = dx * s - dx * dx / 24.0 * phi0 * phi0;
    double nrm = std::sqrt(2.0 * M_PI * integral);
    for (double& v : out.phi) v /= nrm;
    return out;
}

double interp_value(const std::vector<double>& phi, double dx, double r)
{
    // cubic Lagrange on cell centers
    const int n = static_cast<int>(phi.size());
    double t = r / dx - 0.5;
    int i1 = std::clamp(static_cast<int>(std::floor(t)), 1, n - 3);
    double u = t - i1;
    double ym1 = phi[i1 - 1], y0 = phi[i1], y1 = phi[i1 + 1], y2 = phi[i1 + 2];
    return ym1 * (-u * (u - 1) * (u - 2) / 6.0) + y0 * ((u * u - 1) * (u - 2) / 2.0) +
           y1 * (-u * (u + 1) * (u - 2) / 2.0) + y2 * (u * (u * u - 1) / 6.0);
}

} // namespace

RiccatiTable riccati_march(const MagneticProfile& p, double mu, double h, double r_lo,
                           double r_hi, double base_step)
{
    const double h2 = h * h;
    auto rhs = [&](double r, double d) {
        double ar = p.alpha(r) / r;
        return (ar * ar - mu) / h2 - d / r - d * d;
    };
    // decaying-branch seed
    auto kfun = [&](double r) {
        double ar = p.alpha(r) / r;
        return std::sqrt(std::max(ar * ar - mu, 1e-30)) / h;
    };
    double r = r_hi;
    double k = kfun(r);
    double dk = (kfun(r) - kfun(r - 1e-5)) / 1e-5;
    double d = -k - 0.5 / r - dk / (2.0 * k);
    double g = 0.0;

    RiccatiTable tab;
    tab.r.push_back(r);
    tab.g.push_back(g);
    tab.d.push_back(d);
    while (r > r_lo + 1e-14) {
        double speed = std::max(std::fabs(d), 1.0);
        double step = std::min(base_step, 0.02 / speed);
        step = std::min(step, r - r_lo);
        // RK4 on (g, d) marching inward (negative direction)
        double s = -step;
        double k1d = rhs(r, d);
        double k1g = d;
        double k2d = rhs(r + 0.5 * s, d + 0.5 * s * k1d);
        double k2g = d + 0.5 * s * k1d;
        double k3d = rhs(r + 0.5 * s, d + 0.5 * s * k2d);
        double k3g = d + 0.5 * s * k2d;
        double k4d = rhs(r + s, d + s * k3d);
        double k4g = d + s * k3d;
        d += s / 6.0 * (k1d + 2 * k2d + 2 * k3d + k4d);
        g += s / 6.0 * (k1g + 2 * k2g + 2 * k3g + k4g);
        r += s;
        tab.r.push_back(r);
        tab.g.push_back(g);
        tab.d.push_back(d);
    }
    std::reverse(tab.r.begin(), tab.r.end());
    std::reverse(tab.g.begin(), tab.g.end());
    std::reverse(tab.d.begin(), tab.d.end());
    return tab;
}

RadialGroundState ground_state(double h, const MagneticProfile& p, const WellGeometry& g,
                               const RadialSolverConfig& cfg)
{
    if (!(h > 0)) throw std::domain_error("ground_state: h must be positive");
    RadialGroundState st;
    st.h = h;
    st.r_max = cfg.r_max > 0 ? cfg.r_max : g.L + 3.0;
    const int n = cfg.n;
    if (n < 2000) throw std::invalid_argument("radial grid too coarse (n < 2000)");
    st.dx = st.r_max / n;

    GridSolve fine = solve_grid(h, p, st.r_max, n, cfg.eig_tol);
    GridSolve half = solve_grid(h, p, st.r_max, n / 2, cfg.eig_tol);
    st.mu_grid = fine.mu1;
    st.mu2 = fine.mu2;
    st.mu = (4.0 * fine.mu1 - half.mu1) / 3.0;
    st.grid_residual = fine.residual;

    st.r_grid.resize(n);
    for (int i = 0; i < n; ++i) st.r_grid[i] = (i + 0.5) * st.dx;
    st.phi = std::move(fine.phi);

    // derivative: centered difference with the ODE-based third-derivative
    // correction (interior), one-sided at the ends
    st.dphi.resize(n);
    const double h2 = h * h;
    for (int i = 0; i < n; ++i) {
        if (i == 0 || i == n - 1) {
            int j = std::clamp(i, 1, n - 2);
            st.dphi[i] = (st.phi[j + 1] - st.phi[j - 1]) / (2 * st.dx);
            continue;
        }
        double r = st.r_grid[i];
        double cd = (st.phi[i + 1] - st.phi[i - 1]) / (2 * st.dx);
        double ar = p.alpha(r) / r;
        double V = ar * ar;
        double Vp = 2.0 * ar * (p.beta(0.5 * r * r) - ar / r); // (alpha/r)' = beta - alpha/r^2
        // phi'' from the ODE, phi''' by differentiating it
        double ppp = (V - st.mu_grid) / h2 * st.phi[i] - cd / r;
        double p3 = (V - st.mu_grid) / h2 * cd + Vp / h2 * st.phi[i] - ppp / r + cd / (r * r);
        st.dphi[i] = cd - st.dx * st.dx / 6.0 * p3;
    }

    // anchor value at r = a via Richardson of the two grids
    st.anchor_r = p.a();
    double va_f = interp_value(st.phi, st.dx, st.anchor_r);
    double va_h = interp_value(half.phi, st.r_max / (n / 2), st.anchor_r);
    double va = (4.0 * va_f - va_h) / 3.0;
    st.log_phi_anchor = std::log(va);

    if (cfg.refine_tail) {
        RiccatiTable tab = riccati_march(p, st.mu, h, p.a(), st.r_max, st.dx);
        // rebase so g(a) = 0
        double g0 = tab.g.front();
        for (double& x : tab.g) x -= g0;
        st.tab_r = std::move(tab.r);
        st.tab_g = std::move(tab.g);
        st.tab_d = std::move(tab.d);
    }
    return st;
}

namespace {

// cubic Hermite on an ascending table with derivative column
double hermite(const std::vector<double>& xs, const std::vector<double>& ys,
               const std::vector<double>& ds, double x)
{
    auto it = std::upper_bound(xs.begin(), xs.end(), x);
    size_t i = (it == xs.begin()) ? 0 : static_cast<size_t>(it - xs.begin()) - 1;
    i = std::min(i, xs.size() - 2);
    double hl = xs[i + 1] - xs[i];
    double t = (x - xs[i]) / hl;
    double h00 = (1 + 2 * t) * (1 - t) * (1 - t);
    double h10 = t * (1 - t) * (1 - t);
    double h01 = t * t * (3 - 2 * t);
    double h11 = t * t * (t - 1);
    return h00 * ys[i] + h10 * hl * ds[i] + h01 * ys[i + 1] + h11 * hl * ds[i + 1];
}

} // namespace

LogReal RadialGroundState::log_phi(double r) const
{
    if (tab_r.empty()) throw std::runtime_error("log_phi: exterior table not built");
    if (r < tab_r.front() - 1e-12 || r > tab_r.back() + 1e-12)
        throw std::out_of_range("log_phi: radius outside exterior table");
    double gg = hermite(tab_r, tab_g, tab_d, r);
    return LogReal{log_phi_anchor + gg, 1};
}

double RadialGroundState::log_derivative(double r) const
{
    if (tab_r.empty()) throw std::runtime_error("log_derivative: exterior table not built");
    // derivative column of d is d' = (V - mu)/h^2 - d/r - d^2; reuse hermite on d
    // with numeric slopes from neighbouring entries
    auto it = std::upper_bound(tab_r.begin(), tab_r.end(), r);
    size_t i = (it == tab_r.begin()) ? 0 : static_cast<size_t>(it - tab_r.begin()) - 1;
    i = std::min(i, tab_r.size() - 2);
    // local cubic through four points
    size_t i0 = i == 0 ? 0 : i - 1;
    size_t i3 = std::min(i0 + 3, tab_r.size() - 1);
    i0 = i3 - 3;
    // Lagrange cubic
    double x0 = tab_r[i0], x1 = tab_r[i0 + 1], x2 = tab_r[i0 + 2], x3 = tab_r[i0 + 3];
    double y0 = tab_d[i0], y1 = tab_d[i0 + 1], y2 = tab_d[i0 + 2], y3 = tab_d[i0 + 3];
    double L0 = (r - x1) * (r - x2) * (r - x3) / ((x0 - x1) * (x0 - x2) * (x0 - x3));
    double L1 = (r - x0) * (r - x2) * (r - x3) / ((x1 - x0) * (x1 - x2) * (x1 - x3));
    double L2 = (r - x0) * (r - x1) * (r - x3) / ((x2 - x0) * (x2 - x1) * (x2 - x3));
    double L3 = (r - x0) * (r - x1) * (r - x2) / ((x3 - x0) * (x3 - x1) * (x3 - x2));
    return y0 * L0 + y1 * L1 + y2 * L2 + y3 * L3;
}

std::pair<LogReal, LogReal> RadialGroundState::axis_value(const WellGeometry& g, double x2) const
{
    const double r = std::sqrt(0.25 * g.L * g.L + x2 * x2);
    LogReal val = log_phi(r);
    double d = log_derivative(r);
    double factor = (0.5 * g.L / r) * d;
    LogReal der = val * LogReal::from_value(factor);
    return {val, der};
}

std::pair<double, double> RadialGroundState::evaluate_on_axis(const WellGeometry& g,
                                                              double x2) const
{
    auto [v, d] = axis_value(g, x2);
    return {v.value(), d.value()};
}

EigenvalueExpansion eigenvalue_expansion(const MagneticProfile& p)
{
    // H = (beta'(0)/2) Id: d0 = sqrt(det H)/b0, d1 = (tr sqrt(H))^2 / (2 b0)
    EigenvalueExpansion e;
    const double bp = p.beta_prime0();
    e.d0 = 0.5 * bp / p.b0();
    e.d1 = bp / p.b0();
    return e;
}

// ---------------------------------------------------------------------------
// Taylor-series march of the exterior equation at extended precision

ExteriorMarch taylor_march_exterior(const BigFloat& M, double b1, double mu, double h,
                                    const std::vector<BigFloat>& radii, int limbs)
{
    if (radii.size() < 2) throw std::invalid_argument("taylor_march_exterior: need >= 2 radii");
    for (size_t i = 0; i + 1 < radii.size(); ++i)
        if (!(radii[i + 1] < radii[i]))
            throw std::invalid_argument("taylor_march_exterior: radii must descend");

    const BigFloat h2(h * h, limbs);
    const BigFloat Mw = M.with_limbs(limbs);
    const BigFloat M2 = Mw * Mw;
    const BigFloat c2 = Mw * BigFloat(b1, limbs) - BigFloat(mu, limbs); // (M b1 - mu)
    const BigFloat c4(0.25 * b1 * b1, limbs);
    const BigFloat one(1.0, limbs);

    // decaying-branch seed at radii.front(), double precision suffices (the
    // admixture of the other branch dies off within the first trust region)
    const double r0d = radii.front().to_double();
    const double Md = Mw.to_double();
    auto kfun = [&](double r) {
        double ar = Md / r + 0.5 * b1 * r;
        return std::sqrt(std::max(ar * ar - mu, 1e-30)) / h;
    };
    const double kk = kfun(r0d);
    const double dk = (kfun(r0d) - kfun(r0d - 1e-6)) / 1e-6;
    BigFloat phi = one;
    BigFloat dphi(-kk - 0.5 / r0d - dk / (2.0 * kk), limbs);

    ExteriorMarch out;
    out.phi.reserve(radii.size());
    out.dphi.reserve(radii.size());
    out.phi.push_back(phi);
    out.dphi.push_back(dphi);

    const int target_bits = 64 * limbs;
    const int max_order = 2000;
    std::vector<BigFloat> c;
    c.reserve(max_order + 2);

    BigFloat rcur = radii.front();
    for (size_t node = 1; node < radii.size(); ++node) {
        BigFloat rtarget = radii[node];
        while (true) {
            double rd = rcur.to_double();
            double klocal = std::max(kfun(rd), 1.0);
            double max_step = std::min(0.12 / klocal, 0.35 * rd);
            BigFloat gap = rcur - rtarget; // positive
            bool final_step = gap.to_double() <= max_step;
            BigFloat x = final_step ? (rtarget - rcur) : BigFloat(-max_step, limbs);

            // series coefficients about rcur
            const BigFloat& r0 = rcur;
            BigFloat r0_2 = r0 * r0;
            BigFloat r0_3 = r0_2 * r0;
            BigFloat r0_4 = r0_2 * r0_2;
            BigFloat inv_h2r02 = one / (h2 * r0_2);
            c.assign(2, one);
            c[0] = phi;
            c[1] = dphi;
            // residual-driven order selection: grow until terms negligible
            BigFloat xp = x;            // x^1
            BigFloat sum_phi = c[0] + c[1] * x;
            BigFloat sum_dphi = c[1];
            long long ref_exp = sum_phi.is_zero() ? 0 : sum_phi.exponent2();
            int m = 0;
            int below = 0;
            while (true) {
                // recurrence for c[m+2]
                const BigFloat& cm1 = c[m + 1];
                const BigFloat& cm = c[m];
                BigFloat acc(limbs);
                // -h^2 [ 2 r0 (m+1) m + r0 (m+1) ] c_{m+1}
                acc -= h2 * r0 * cm1.mul_uint(static_cast<std::uint64_t>(m + 1) * (2 * m + 1));
                // -h^2 [ m(m-1) + m ] c_m = -h^2 m^2 c_m
                if (m >= 1) acc -= h2 * cm.mul_uint(static_cast<std::uint64_t>(m) * m);
                // + M^2 c_m
                acc += M2 * cm;
                // + c2 (r0^2 c_m + 2 r0 c_{m-1} + c_{m-2})
                acc += c2 * (r0_2 * cm);
                if (m >= 1) acc += c2 * (r0 * c[m - 1]).ldexp2(1);
                if (m >= 2) acc += c2 * c[m - 2];
                // + c4 (r0^4 c_m + 4 r0^3 c_{m-1} + 6 r0^2 c_{m-2} + 4 r0 c_{m-3} + c_{m-4})
                acc += c4 * (r0_4 * cm);
                if (m >= 1) acc += c4 * (r0_3 * c[m - 1]).mul_uint(4);
                if (m >= 2) acc += c4 * (r0_2 * c[m - 2]).mul_uint(6);
                if (m >= 3) acc += c4 * (r0 * c[m - 3]).mul_uint(4);
                if (m >= 4) acc += c4 * c[m - 4];
                BigFloat cnew = (acc * inv_h2r02)
                                    .div_uint(static_cast<std::uint64_t>(m + 2) * (m + 1));
                c.push_back(cnew);

                // advance partial sums
                BigFloat term_d = cnew * xp; // contributes (m+2) c_{m+2} x^{m+1} to phi'
                sum_dphi += term_d.mul_uint(m + 2);
                xp = xp * x; // x^{m+2}
                BigFloat term = cnew * xp;
                sum_phi += term;
                ++m;
                if (!sum_phi.is_zero()) ref_exp = sum_phi.exponent2();
                const bool small = term.is_zero() || (term.exponent2() < ref_exp - target_bits - 8);
                below = small ? below + 1 : 0;
                if (below >= 3) break;
                if (m + 2 > max_order)
                    throw std::runtime_error("taylor_march_exterior: series order overflow");
            }
            phi = sum_phi;
            dphi = sum_dphi;
            rcur = final_step ? rtarget : rcur + x;
            if (final_step) break;
        }
        out.phi.push_back(phi);
        out.dphi.push_back(dphi);
    }
    return out;
}

} // namespace magsplit
