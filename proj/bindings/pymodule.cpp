#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "metasurf/config.hpp"
#include "metasurf/green.hpp"
#include "metasurf/sweep.hpp"
#include "metasurf/verify.hpp"

namespace py = pybind11;
using namespace metasurf;

namespace {

CellPoint to_point(std::pair<double, double> p) { return {p.first, p.second}; }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Effective impedance of a periodic plasmonic monolayer on a "
            "perfectly conducting plate";

  py::register_exception<ConfigError>(m, "ConfigError");
  py::register_exception<GeometryError>(m, "GeometryError");
  py::register_exception<NumericalError>(m, "NumericalError");

  // green
  m.def("g_periodic",
        [](double x1, double x2) { return g_periodic({x1, x2}); }, py::arg("x1"),
        py::arg("x2"));
  m.def("g_periodic_fourier",
        [](double x1, double x2, int n_terms) {
          return g_periodic_fourier({x1, x2}, n_terms);
        },
        py::arg("x1"), py::arg("x2"), py::arg("n_terms") = 200);
  m.def("grad_g_periodic",
        [](double x1, double x2) -> Eigen::Vector2d { return grad_g_periodic({x1, x2}); });
  m.def("g_halfspace",
        [](std::pair<double, double> t, std::pair<double, double> s) {
          return g_halfspace(to_point(t), to_point(s));
        });
  m.def("kernel_split", [](double x1, double x2) {
    const KernelSplit ks = kernel_split({x1, x2});
    return std::make_pair(ks.log_part, ks.remainder);
  });

  // geometry
  py::class_<ParticleBoundary>(m, "ParticleBoundary")
      .def_property_readonly("points",
                             [](const ParticleBoundary& b) { return b.points; })
      .def_property_readonly("normals",
                             [](const ParticleBoundary& b) { return b.normals; })
      .def_readonly("curvature", &ParticleBoundary::curvature)
      .def_readonly("weight", &ParticleBoundary::weight)
      .def_property_readonly("n_components", &ParticleBoundary::n_components)
      .def("perimeter", &ParticleBoundary::perimeter)
      .def("area", &ParticleBoundary::area)
      .def("__len__", &ParticleBoundary::size);
  m.def("make_disk",
        [](std::pair<double, double> c, double r, int n) {
          return make_disk(to_point(c), r, n);
        },
        py::arg("center"), py::arg("radius"), py::arg("n_nodes") = 128);
  m.def("make_star",
        [](std::pair<double, double> c, double base, double amp, int lobes, int n) {
          return make_star(to_point(c), base, amp, lobes, n);
        },
        py::arg("center"), py::arg("base_radius"), py::arg("amplitude"),
        py::arg("lobes"), py::arg("n_nodes") = 128);
  m.def("make_multi", &make_multi);
  m.def("perturb",
        [](const ParticleBoundary& b, const Eigen::VectorXd& h, double eta) {
          return perturb(b, {h, eta});
        },
        py::arg("boundary"), py::arg("h"), py::arg("eta"));

  // operators
  py::class_<PeriodicOperators>(m, "PeriodicOperators")
      .def_readonly("S", &PeriodicOperators::S)
      .def_readonly("K", &PeriodicOperators::K)
      .def_readonly("weights", &PeriodicOperators::w)
      .def_readonly("gram", &PeriodicOperators::gram);
  py::class_<SpectralDecomposition>(m, "SpectralDecomposition")
      .def_readonly("eigenvalues", &SpectralDecomposition::lambda)
      .def_readonly("eigenvectors", &SpectralDecomposition::phi)
      .def_readonly("coupling_nu2", &SpectralDecomposition::coupling_nu2)
      .def_readonly("pairing_y2", &SpectralDecomposition::pairing_y2);
  m.def("assemble", &assemble);
  m.def("assemble_single_layer", &assemble_single_layer);
  m.def("assemble_np", &assemble_np);
  m.def("eigendecompose", &eigendecompose);

  // impedance
  py::class_<DrudeParams>(m, "DrudeParams")
      .def(py::init<>())
      .def(py::init([](double wp, double g) {
             return DrudeParams{wp, g};
           }),
           py::arg("plasma_energy_ev"), py::arg("damping_energy_ev"))
      .def_readwrite("plasma_energy_ev", &DrudeParams::plasma_energy_ev)
      .def_readwrite("damping_energy_ev", &DrudeParams::damping_energy_ev);
  py::class_<MaterialState>(m, "MaterialState")
      .def_readonly("wavelength", &MaterialState::wavelength)
      .def_readonly("omega", &MaterialState::omega)
      .def_readonly("mu_c", &MaterialState::mu_c)
      .def_readonly("eps_c", &MaterialState::eps_c)
      .def_readonly("mu_m", &MaterialState::mu_m)
      .def_readonly("eps_m", &MaterialState::eps_m)
      .def_readonly("k_m", &MaterialState::k_m)
      .def_readonly("k_c", &MaterialState::k_c)
      .def_readonly("lambda_mu", &MaterialState::lambda_mu)
      .def_readonly("mu_ratio", &MaterialState::mu_ratio);
  m.def("drude_gold", &drude_gold, py::arg("wavelength_m"),
        py::arg("params") = DrudeParams{});
  py::class_<ModeContribution>(m, "ModeContribution")
      .def_readonly("lambda_j", &ModeContribution::lambda_j)
      .def_readonly("term", &ModeContribution::term);
  py::class_<ImpedanceResult>(m, "ImpedanceResult")
      .def_readonly("alpha_inf", &ImpedanceResult::alpha_inf)
      .def_readonly("impedance_z", &ImpedanceResult::impedance_z)
      .def_readonly("modes", &ImpedanceResult::modes)
      .def_readonly("dominant_mode", &ImpedanceResult::dominant_mode)
      .def_readonly("dominant_lambda", &ImpedanceResult::dominant_lambda)
      .def_readonly("resolvent_distance", &ImpedanceResult::resolvent_distance);
  py::class_<CorrectorSolution>(m, "CorrectorSolution")
      .def_readonly("density", &CorrectorSolution::density)
      .def_readonly("alpha_inf", &CorrectorSolution::alpha_inf);
  m.def("solve_corrector", &solve_corrector);
  m.def("alpha_inf_direct",
        [](const PeriodicOperators& ops, const ParticleBoundary& b, Cplx lm) {
          return alpha_inf_direct(ops, b, lm);
        });
  m.def("alpha_inf_spectral", &alpha_inf_spectral);
  m.def("corrector_field",
        [](const ParticleBoundary& b, const CorrectorSolution& sol,
           std::pair<double, double> x) {
          const CorrectorValue v = corrector_field(b, sol, to_point(x));
          return std::make_pair(v.value, v.near_boundary_warning);
        });
  m.def("corrector_far_deviation",
        [](const ParticleBoundary& b, const CorrectorSolution& sol,
           std::pair<double, double> x) {
          return corrector_far_deviation(b, sol, to_point(x));
        });
  m.def("reflection_coefficient",
        [](Cplx z, double k_m, std::pair<double, double> d, double delta) {
          return reflection_coefficient(z, k_m, {d.first, d.second}, delta);
        },
        py::arg("z"), py::arg("k_m"), py::arg("incidence"), py::arg("delta"));

  // shape optimization
  py::class_<AuxiliaryFields>(m, "AuxiliaryFields")
      .def_readonly("density", &AuxiliaryFields::density)
      .def_readonly("trace", &AuxiliaryFields::trace)
      .def_readonly("dn_minus", &AuxiliaryFields::dn_minus)
      .def_readonly("dt_minus", &AuxiliaryFields::dt_minus);
  py::class_<ShapeGradient>(m, "ShapeGradient")
      .def_readonly("density", &ShapeGradient::density)
      .def_readonly("j_gradient", &ShapeGradient::j_gradient);
  m.def("solve_auxiliary_v", &solve_auxiliary_v);
  m.def("solve_auxiliary_w", &solve_auxiliary_w);
  m.def("shape_derivative", &shape_derivative, py::arg("v"), py::arg("w"),
        py::arg("mu_m"), py::arg("mu_c"), py::arg("alpha_inf"));
  py::class_<AscentRow>(m, "AscentRow")
      .def_readonly("iteration", &AscentRow::iteration)
      .def_readonly("j_value", &AscentRow::j_value)
      .def_readonly("grad_norm", &AscentRow::grad_norm)
      .def_readonly("step", &AscentRow::step);
  py::class_<AscentResult>(m, "AscentResult")
      .def_readonly("trajectory", &AscentResult::trajectory)
      .def_readonly("boundary", &AscentResult::boundary)
      .def_readonly("status", &AscentResult::status);
  py::class_<AscentOptions>(m, "AscentOptions")
      .def(py::init<>())
      .def_readwrite("steps", &AscentOptions::steps)
      .def_readwrite("modes", &AscentOptions::modes)
      .def_readwrite("initial_move", &AscentOptions::initial_move);
  m.def("ascend_j", &ascend_j, py::arg("start"), py::arg("mu_ratio"),
        py::arg("options") = AscentOptions{});

  // sweep driver
  py::class_<SweepRow>(m, "SweepRow")
      .def_readonly("wavelength_nm", &SweepRow::wavelength_nm)
      .def_readonly("alpha", &SweepRow::alpha)
      .def_readonly("z", &SweepRow::z)
      .def_readonly("dominant_mode", &SweepRow::dominant_mode)
      .def_readonly("ok", &SweepRow::ok);
  py::class_<Peak>(m, "Peak")
      .def_readonly("index", &Peak::index)
      .def_readonly("wavelength_nm", &Peak::wavelength_nm)
      .def_readonly("abs_alpha", &Peak::abs_alpha)
      .def_readonly("prominence", &Peak::prominence);
  py::class_<SweepResult>(m, "SweepResult")
      .def_readonly("rows", &SweepResult::rows)
      .def_readonly("peaks", &SweepResult::peaks)
      .def_readonly("failures", &SweepResult::failures);
  m.def("run_sweep_json",
        [](const std::string& json_text) {
          return run_sweep(parse_config(json_text));
        },
        "Run a sweep from a JSON config string (no files written)");

  m.attr("__version__") = "0.1.0";
}
