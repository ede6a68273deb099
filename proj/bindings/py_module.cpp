#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "znwedge/smatrix.hpp"
#include "znwedge/weaklocality.hpp"

namespace py = pybind11;
using namespace znwedge;

namespace {

py::dict report_dict(const DefectReport& rep) {
    py::dict d;
    d["phi_commutator"] = rep.phi_commutator;
    d["chi_commutator"] = rep.chi_commutator;
    d["residue_formula"] = rep.residue_formula;
    d["total"] = rep.total;
    d["scale"] = rep.scale;
    d["refine_level"] = rep.refine_level;
    d["pass_total"] = rep.pass_total;
    d["pass_agreement"] = rep.pass_agreement;
    d["passed"] = rep.passed;
    d["incomplete"] = rep.incomplete;
    d["message"] = rep.message;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Z(N)-Ising factorizing S-matrix and weak wedge-locality checks";

    py::register_exception<Error>(m, "ZnwedgeError");

    m.def("antiparticle", &antiparticle, py::arg("N"), py::arg("alpha"),
          "Charge conjugate type N - alpha.");
    m.def("s11", &s11, py::arg("N"), py::arg("zeta"),
          "Seed amplitude sinh((z + 2 pi i/N)/2) / sinh((z - 2 pi i/N)/2).");
    m.def(
        "fusion_angles",
        [](double ma, double mb, double mc) {
            FusionAngles a = solve_fusion_angles(ma, mb, mc);
            return py::make_tuple(a.theta_ab, a.theta_ba, a.theta_sum);
        },
        py::arg("m_a"), py::arg("m_b"), py::arg("m_c"),
        "Rotation angles solving m_a e^{ia} + m_b e^{-ib} = m_c.");

    py::class_<SMatrixModel>(m, "Model")
        .def(py::init([](int N, double m1) { return build_zn_model(N, m1); }),
             py::arg("N"), py::arg("m1") = 1.0)
        .def_property_readonly("N", [](const SMatrixModel& s) { return s.N; })
        .def("masses",
             [](const SMatrixModel& s) {
                 std::vector<double> out;
                 for (int t = 1; t <= s.N - 1; ++t) out.push_back(s.spectrum.mass(t));
                 return out;
             })
        .def(
            "s_eval",
            [](const SMatrixModel& s, int a, int b, Complex z) {
                return s.component(a, b)(z);
            },
            py::arg("a"), py::arg("b"), py::arg("zeta"))
        .def(
            "poles",
            [](const SMatrixModel& s, int a, int b) {
                std::vector<Complex> out;
                for (const StripPole& p : s.component(a, b).poles())
                    out.push_back(p.location);
                return out;
            },
            py::arg("a"), py::arg("b"))
        .def(
            "residue",
            [](const SMatrixModel& s, int a, int b, Complex pole) {
                return residue_at(s.component(a, b), pole);
            },
            py::arg("a"), py::arg("b"), py::arg("pole"))
        .def(
            "check_unitarity",
            [](const SMatrixModel& s, int a, int b, int points) {
                std::vector<double> grid;
                for (int i = 0; i < points; ++i)
                    grid.push_back(-5.0 + 10.0 * i / std::max(1, points - 1));
                CheckReport rep = check_unitarity(s.component(a, b), grid);
                return py::make_tuple(rep.max_deviation, rep.pass);
            },
            py::arg("a"), py::arg("b"), py::arg("points") = 100)
        .def(
            "check_crossing",
            [](const SMatrixModel& s, int a, int b) {
                std::vector<Complex> grid;
                for (double x : {-3.0, -1.2, 0.1, 1.4, 2.8})
                    for (double y : {0.3, 1.1, 1.9, 2.7}) grid.push_back(Complex(x, y));
                CheckReport rep = check_crossing(s, a, b, grid);
                return py::make_tuple(rep.max_deviation, rep.pass);
            },
            py::arg("a"), py::arg("b"))
        .def("fusion_processes",
             [](const SMatrixModel& s) {
                 py::list out;
                 for (const auto& [ab, p] : s.table.processes) {
                     if (p.alpha > p.beta) continue;  // one entry per unordered pair
                     py::dict d;
                     d["alpha"] = p.alpha;
                     d["beta"] = p.beta;
                     d["gamma"] = p.gamma;
                     d["theta_sum"] = p.angles.theta_sum;
                     d["s_pole"] = p.s_pole;
                     d["residue"] = p.residue;
                     d["eta"] = p.eta;
                     out.append(d);
                 }
                 return out;
             })
        .def(
            "calibrate_eta",
            [](SMatrixModel& s, int refine_level) {
                EtaCalibration cal = calibrate_eta(s, refine_level);
                py::dict d;
                d["fitted_eta_sq"] = cal.fitted_eta_sq;
                d["predicted_eta_sq"] = cal.predicted_eta_sq;
                d["fit_rel_residual"] = cal.fit_rel_residual;
                d["holdout_rel_residual"] = cal.holdout_rel_residual;
                d["proportionality"] = cal.proportionality;
                return d;
            },
            py::arg("refine_level") = 2)
        .def(
            "weak_locality_report",
            [](const SMatrixModel& s, int pair_index, int refine_level) {
                return report_dict(weak_locality_report(
                    s, standard_request(pair_index), {.refine_level = refine_level}));
            },
            py::arg("pair_index") = 0, py::arg("refine_level") = 3)
        .def("vacuum_commutator", [](const SMatrixModel& s) {
            VacuumCommutator v = vacuum_commutator_element(s, standard_f(0), standard_g(0));
            return py::make_tuple(v.value, v.scale);
        });
}
