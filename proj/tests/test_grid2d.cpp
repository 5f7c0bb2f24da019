#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "magsplit/grid2d.hpp"
#include "magsplit/radial.hpp"

#include <cmath>

using namespace magsplit;

namespace {

MagneticProfile cfg_a() { return MagneticProfile::builtin(1.0, 2.0, 1.0, 1.0); }

} // namespace

TEST_CASE("near-zero field: Dirichlet box modes")
{
    // a barely-there well in a weak background approximates the free box
    MagneticProfile p = MagneticProfile::builtin(1e-8, 2e-8, 0.4, 1.0);
    WellGeometry g = make_geometry(p, 2.0);
    Grid2DParams par;
    par.box_half = 2.0;
    par.dx = 0.05;
    par.n_eig = 3;
    Lattice lat(1.0, p, g, par);
    EigenResult res = lowest_eigenpairs(lat, par);
    const double W = 2.0;
    auto mode = [&](int mx, int my) {
        return M_PI * M_PI * (mx * mx + my * my) / (4.0 * W * W);
    };
    CHECK(res.lambda[0] == doctest::Approx(mode(1, 1)).epsilon(2e-3));
    CHECK(res.lambda[1] == doctest::Approx(mode(2, 1)).epsilon(2e-3));
    CHECK(res.lambda[2] == doctest::Approx(mode(1, 2)).epsilon(2e-3));
    for (double r : res.residual) CHECK(r < par.tol * 10);
}

TEST_CASE("near-constant field: lowest level approaches b h")
{
    MagneticProfile p = MagneticProfile::builtin(2.0 - 1e-9, 2.0, 1.0, 1.0);
    WellGeometry g = make_geometry(p, 5.0);
    Grid2DParams par;
    par.box_half = 6.0;
    par.dx = 0.06;
    par.n_eig = 3;
    const double h = 0.8;
    Lattice lat(h, p, g, par);
    EigenResult res = lowest_eigenpairs(lat, par);
    CHECK(res.lambda[0] == doctest::Approx(2.0 * h).epsilon(5e-3));
    CHECK(res.lambda[1] == doctest::Approx(2.0 * h).epsilon(5e-3)); // flat band
}

TEST_CASE("plaquette fluxes telescope to the box flux")
{
    MagneticProfile p = cfg_a();
    WellGeometry g = make_geometry(p, 5.0);
    Grid2DParams par;
    par.box_half = 6.0;
    par.dx = 0.12;
    Lattice lat(0.8, p, g, par);
    CHECK(lat.plaquette_flux_sum() ==
          doctest::Approx(lat.box_flux()).epsilon(1e-10));
}

TEST_CASE("phase bound refusal names the required spacing")
{
    MagneticProfile p = cfg_a();
    WellGeometry g = make_geometry(p, 5.0);
    Grid2DParams par;
    par.dx = 0.2;
    CHECK_THROWS_AS(Lattice(0.05, p, g, par), std::invalid_argument);
}

TEST_CASE("double-well diagnostics at h = 0.5 on a coarse box")
{
    MagneticProfile p = cfg_a();
    WellGeometry g = make_geometry(p, 5.0);
    Grid2DParams par;
    par.box_half = 5.6;
    par.dx = 0.05;
    par.n_eig = 3;
    const double h = 0.5;
    Lattice lat(h, p, g, par);
    EigenResult res = lowest_eigenpairs(lat, par);

    // two-level structure far below the third state
    CHECK(res.lambda[1] - res.lambda[0] < 1e-3 * (res.lambda[2] - res.lambda[0]));

    // lowest level against the one-well radial eigenvalue
    RadialSolverConfig rc;
    rc.n = 20000;
    RadialGroundState st = ground_state(h, p, g, rc);
    CHECK(res.lambda[0] == doctest::Approx(st.mu).epsilon(0.01));

    // the h^2 spacing scale of the third level
    EigenvalueExpansion e = eigenvalue_expansion(p);
    CHECK(res.lambda[2] - res.lambda[0] > 0.5 * e.d0 * h * h);

    // gauge transformation leaves the spectrum unchanged
    Lattice lat2(h, p, g, par);
    lat2.gauge_transform(12345);
    EigenResult res2 = lowest_eigenpairs(lat2, par);
    for (int i = 0; i < 3; ++i)
        CHECK(std::fabs(res2.lambda[i] - res.lambda[i]) < 1e-12 * lat.spectral_bound());
}
