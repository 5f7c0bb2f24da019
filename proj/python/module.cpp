#include "magsplit/asymptotics.hpp"
#include "magsplit/config.hpp"
#include "magsplit/grid2d.hpp"
#include "magsplit/interaction.hpp"
#include "magsplit/verify.hpp"
#include "magsplit/wkb.hpp"

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace magsplit;

namespace {

py::dict constants_dict(const PredictionConstants& k)
{
    py::dict d;
    d["M"] = k.M;
    d["N"] = k.N;
    d["delta0"] = k.delta0;
    d["Phi0"] = k.phi0;
    d["S0"] = k.S0;
    d["S"] = k.S;
    d["I"] = k.I;
    d["F0"] = k.F0;
    d["c0"] = k.c0;
    d["c"] = k.c;
    d["hypothesis"] = k.hypothesis;
    d["inequality_ok"] = k.inequality_ok;
    return d;
}

py::dict state_dict(const RadialGroundState& st)
{
    py::dict d;
    d["h"] = st.h;
    d["mu"] = st.mu;
    d["mu2"] = st.mu2;
    d["r"] = st.r_grid;
    d["phi"] = st.phi;
    d["dphi"] = st.dphi;
    d["grid_residual"] = st.grid_residual;
    return d;
}

py::dict report_dict(const SplittingReport& r)
{
    py::dict d;
    d["h"] = r.h;
    d["log10_w_direct"] = r.log10_w_direct;
    d["log10_w_from_W"] = r.log10_w_from_W;
    d["log10_W_numeric"] = r.log10_W_numeric;
    d["log10_W_laplace"] = r.log10_W_laplace;
    d["log10_gap_direct"] = r.log10_gap_direct;
    d["log10_gap_pred"] = r.log10_gap_pred;
    d["ratio_gap"] = r.ratio_gap;
    d["wh_routes_dev"] = r.wh_routes_dev;
    d["laplace_dev"] = r.laplace_dev;
    d["ratio_gap_a0"] = r.ratio_gap_a0;
    d["a0_extrapolated"] = r.a0_extrapolated;
    d["hypothesis"] = r.hypothesis;
    d["inequality_ok"] = r.inequality_ok;
    d["a0_consistent"] = r.a0_consistent;
    d["mu"] = r.mu;
    return d;
}

} // namespace

PYBIND11_MODULE(magsplitpy, m)
{
    m.doc() = "two-well magnetic tunneling laboratory";

    py::class_<MagneticProfile>(m, "MagneticProfile")
        .def_static("builtin", &MagneticProfile::builtin, py::arg("b0"), py::arg("b1"),
                    py::arg("a"), py::arg("kappa") = 1.0)
        .def_static("tabulated", &MagneticProfile::tabulated)
        .def("beta", &MagneticProfile::beta)
        .def("alpha", &MagneticProfile::alpha)
        .def("beta_prime0", &MagneticProfile::beta_prime0)
        .def("flux_deficit", &MagneticProfile::flux_deficit)
        .def("flux_deficit_2d", &MagneticProfile::flux_deficit_2d)
        .def_property_readonly("b0", &MagneticProfile::b0)
        .def_property_readonly("b1", &MagneticProfile::b1)
        .def_property_readonly("a", &MagneticProfile::a);

    py::class_<WellGeometry>(m, "WellGeometry")
        .def_readonly("L", &WellGeometry::L)
        .def("theorem_hypothesis", &WellGeometry::theorem_hypothesis);

    m.def("make_geometry", &make_geometry);
    m.def("theta_on_axis", &theta_on_axis);
    m.def("k_on_axis", &k_on_axis);
    m.def("field_2d", [](const MagneticProfile& p, const WellGeometry& g, double x,
                         double y) { return field_2d(p, g, {x, y}); });

    m.def("phi_ell", &phi_ell);
    m.def("agmon_S0", &agmon_S0);

    m.def("constants", [](const MagneticProfile& p, const WellGeometry& g) {
        return constants_dict(compute_constants(p, g));
    });

    m.def("z_minus", &z_minus);
    m.def("dz_minus_at_zero", &dz_minus_at_zero);
    m.def(
        "F",
        [](double s1, double s2, const MagneticProfile& p, const WellGeometry& g) {
            return F(s1, s2, make_phase_data(p, g));
        },
        "reduced real phase of the interaction integral");
    m.def("gap_prediction_log10",
          [](double h, const MagneticProfile& p, const WellGeometry& g) {
              return gap_prediction(h, compute_constants(p, g)).log10();
          });

    m.def(
        "ground_state",
        [](double h, const MagneticProfile& p, const WellGeometry& g, int n) {
            RadialSolverConfig cfg;
            cfg.n = n;
            return state_dict(ground_state(h, p, g, cfg));
        },
        py::arg("h"), py::arg("profile"), py::arg("geometry"), py::arg("n") = 20000);

    m.def(
        "splitting_report",
        [](double h, const MagneticProfile& p, const WellGeometry& g, int n) {
            RadialSolverConfig rc;
            rc.n = n;
            QuadratureConfig q;
            PredictionConstants k = compute_constants(p, g);
            RadialGroundState st = ground_state(h, p, g, rc);
            return report_dict(splitting_report(h, p, g, st, q, k));
        },
        py::arg("h"), py::arg("profile"), py::arg("geometry"), py::arg("n") = 20000);

    m.def(
        "grid2d_eigen",
        [](double h, const MagneticProfile& p, const WellGeometry& g, double box,
           double dx, int n_eig) {
            Grid2DParams par;
            par.box_half = box;
            par.dx = dx;
            par.n_eig = n_eig;
            Lattice lat(h, p, g, par);
            EigenResult res = lowest_eigenpairs(lat, par);
            py::dict d;
            d["lambda"] = res.lambda;
            d["residual"] = res.residual;
            d["plaquette_flux_sum"] = lat.plaquette_flux_sum();
            d["box_flux"] = lat.box_flux();
            return d;
        },
        py::arg("h"), py::arg("profile"), py::arg("geometry"), py::arg("box") = 6.0,
        py::arg("dx") = 0.05, py::arg("n_eig") = 3);

    m.def("verify", [](const MagneticProfile& p, const WellGeometry& g) {
        py::list out;
        for (const auto& c : run_verify_suite(p, g))
            out.append(py::make_tuple(c.name, c.ok, c.detail));
        return out;
    });
}
