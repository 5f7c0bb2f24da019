#include "magsplit/verify.hpp"

#include "magsplit/asymptotics.hpp"
#include "magsplit/quadrature.hpp"
#include "magsplit/specfun.hpp"
#include "magsplit/wkb.hpp"

#include <cmath>
#include <sstream>

namespace magsplit {

namespace {

std::string num(double v)
{
    std::ostringstream ss;
    ss.precision(3);
    ss << v;
    return ss.str();
}

} // namespace

std::vector<VerifyCheck> run_verify_suite(const MagneticProfile& p, const WellGeometry& g)
{
    std::vector<VerifyCheck> out;
    auto add = [&](const std::string& name, bool ok, const std::string& detail) {
        out.push_back({name, ok, detail});
    };

    PhaseData d = make_phase_data(p, g);

    // I: closed form vs Agmon-integral form
    {
        ConstantI ci = constant_I(p, g, d);
        double rel = std::fabs(ci.closed - ci.integral_form) / std::fabs(ci.closed);
        add("I closed form vs integral form", rel <= 1e-9, "rel " + num(rel));
    }

    ConstantI ci = constant_I(p, g, d);
    AgmonData ag = exponent_S(p, g, ci.closed, d.N);

    // S - I as the averaged-log flux integral
    {
        auto r5 = integrate_gk(
            [&](double r) {
                return -2.0 * p.beta(0.5 * r * r) * std::log(2.0 * r / g.L) * r;
            },
            0.0, 0.5 * g.L, 1e-12, 1e-12);
        double rel = std::fabs(r5.value - (ag.S - ci.closed)) / std::fabs(ag.S);
        add("S - I vs averaged-log flux integral", rel <= 1e-9, "rel " + num(rel));
    }

    add("2 S0 > S", 2.0 * ag.S0 > ag.S,
        "2 S0 - S = " + num(2.0 * ag.S0 - ag.S));
    add("separation integral inequality", ag.inequality_ok, "");

    // gap exponent identity
    {
        double lhs = 1.0 - d.delta0;
        double rhs = 0.5 + p.b0() / (2.0 * p.b1());
        add("exponent identity 1 - delta0 = 1/2 + b0/(2 b1)", std::fabs(lhs - rhs) <= 1e-14,
            "diff " + num(lhs - rhs));
    }

    // flux window and redundant 2D definition
    {
        FluxData f = relative_flux(p, g);
        double upper = p.a() * p.a() / (0.25 * g.L * g.L);
        add("relative flux window 0 < N < a^2/(L/2)^2", f.N > 0 && f.N < upper,
            "N = " + num(f.N));
        double m2 = p.flux_deficit_2d();
        add("flux deficit: 1D vs planar quadrature",
            std::fabs(m2 - f.M) <= 1e-10 * std::max(1.0, std::fabs(f.M)),
            "diff " + num(m2 - f.M));
        add("flux deficit non-positive", f.M <= 0.0, "M = " + num(f.M));
    }

    // alpha closed form beyond the well
    {
        double worst = 0;
        for (double r : {p.a(), 0.5 * (p.a() + 0.5 * g.L), 0.5 * g.L, g.L}) {
            auto ref = integrate_gk([&](double u) { return p.beta(u); }, 0.0, 0.5 * r * r,
                                    1e-14, 1e-14);
            worst = std::max(worst,
                             std::fabs(p.alpha(r) - ref.value) / std::max(1.0, ref.value));
        }
        add("alpha quadrature vs closed form", worst <= 1e-12, "worst rel " + num(worst));
    }

    // exact oddness and the vector-potential route for k
    {
        bool odd = true;
        for (double x : {0.3, 1.7, 4.2}) {
            odd = odd && (theta_on_axis(p, g, -x) == -theta_on_axis(p, g, x));
            odd = odd && (k_on_axis(p, g, -x) == -k_on_axis(p, g, x));
        }
        add("theta, k exactly odd on the axis", odd, "");
        double worst = 0;
        for (double x2 : {0.4, 1.1, 2.8}) {
            Vec2 A = vector_potential_left(p, g, {0.0, x2});
            worst = std::max(worst, std::fabs(k_on_axis(p, g, x2) + 2.0 * A.x));
        }
        add("k equals -2 A_l1 (quadrature route)", worst <= 1e-10, "worst " + num(worst));
    }

    // reduced-phase structure
    {
        double z0 = z_minus(0, 0, d.N);
        bool ok = std::fabs(z0 + std::sqrt(1.0 - d.N)) <= 1e-14;
        auto g0 = grad_F(0, 0, d);
        ok = ok && std::fabs(g0[0]) <= 1e-12 && std::fabs(g0[1]) <= 1e-12;
        ok = ok && F_at_zero(d) >= d.b1L2_over_8();
        ok = ok && constant_c0(d) < 0.0;
        add("critical point structure (z_-, grad F, F(0), c0)", ok, "");
    }

    add("gamma function sanity", std::fabs(gamma_fn(0.5) - std::sqrt(M_PI)) < 1e-13, "");

    add("separation hypothesis L > (2+sqrt 6) a", true,
        g.theorem_hypothesis(p.a()) ? "holds" : "violated (weaker inequality used)");

    return out;
}

bool all_ok(const std::vector<VerifyCheck>& checks)
{
    for (const auto& c : checks)
        if (!c.ok) return false;
    return true;
}

} // namespace magsplit
