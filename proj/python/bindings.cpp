#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cavitylab/atlas.hpp"
#include "cavitylab/config.hpp"
#include "cavitylab/effective.hpp"
#include "cavitylab/entanglement.hpp"
#include "cavitylab/errors.hpp"
#include "cavitylab/full_dynamics.hpp"
#include "cavitylab/gates.hpp"
#include "cavitylab/params.hpp"

namespace py = pybind11;
using namespace cavitylab;

namespace {

py::array_t<double> grid_array(const Grid& g) {
  py::array_t<double> out({g.v_over_K.size(), g.ell_over_w.size()});
  std::copy(g.values.begin(), g.values.end(), out.mutable_data());
  return out;
}

py::dict grid_dict(const Grid& g) {
  py::dict d;
  d["v_over_K"] = py::array_t<double>(g.v_over_K.size(), g.v_over_K.data());
  d["ell_over_w"] = py::array_t<double>(g.ell_over_w.size(), g.ell_over_w.data());
  d["values"] = grid_array(g);
  return d;
}

GridSpec make_spec(std::pair<double, double> v_range, std::pair<double, double> ell_range,
                   std::size_t nv, std::size_t nl) {
  GridSpec s;
  s.v_over_K = {v_range.first, v_range.second, nv};
  s.ell_over_w = {ell_range.first, ell_range.second, nl};
  return s;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Two-atom cavity exchange simulator";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<DomainError>(m, "DomainError", base.ptr());
  py::register_exception<ConfigError>(m, "ConfigError", base.ptr());
  py::register_exception<StiffnessError>(m, "StiffnessError", base.ptr());
  py::register_exception<QuadratureError>(m, "QuadratureError", base.ptr());

  py::enum_<LaserProfile>(m, "LaserProfile")
      .value("constant", LaserProfile::constant)
      .value("gaussian", LaserProfile::gaussian);

  py::class_<PhysicalParams>(m, "PhysicalParams")
      .def(py::init<>())
      .def_readwrite("delta", &PhysicalParams::delta)
      .def_readwrite("Delta", &PhysicalParams::Delta)
      .def_readwrite("g0", &PhysicalParams::g0)
      .def_readwrite("Omega0", &PhysicalParams::Omega0)
      .def_readwrite("w", &PhysicalParams::w)
      .def_readwrite("w_tilde", &PhysicalParams::w_tilde)
      .def_readwrite("laser", &PhysicalParams::laser);

  py::class_<Kinematics>(m, "Kinematics")
      .def(py::init<>())
      .def(py::init([](double v, double ell) {
             Kinematics k;
             k.v = v;
             k.ell = ell;
             return k;
           }),
           py::arg("v"), py::arg("ell") = 0.0)
      .def_readwrite("v", &Kinematics::v)
      .def_readwrite("ell", &Kinematics::ell)
      .def_readwrite("z_mid", &Kinematics::z_mid)
      .def_readwrite("window_sigma", &Kinematics::window_sigma);

  py::class_<DerivedScales>(m, "DerivedScales")
      .def_readonly("velocity_unit", &DerivedScales::velocity_unit)
      .def_readonly("distance_unit", &DerivedScales::distance_unit);

  py::class_<AdiabaticityCondition>(m, "AdiabaticityCondition")
      .def_readonly("name", &AdiabaticityCondition::name)
      .def_readonly("ratio", &AdiabaticityCondition::ratio)
      .def_readonly("passed", &AdiabaticityCondition::pass);

  py::class_<AdiabaticityReport>(m, "AdiabaticityReport")
      .def_readonly("margin", &AdiabaticityReport::margin)
      .def_readonly("conditions", &AdiabaticityReport::conditions)
      .def("all_pass", &AdiabaticityReport::all_pass);

  m.def("load_config", [](const std::string& path) {
    const auto cfg = load_config(path);
    return py::make_tuple(cfg.physical, cfg.kinematics);
  });
  m.def("parse_config", [](const std::string& text) {
    const auto cfg = parse_config(text);
    return py::make_tuple(cfg.physical, cfg.kinematics);
  });
  m.def("derive_scales", &derive_scales);
  m.def("check_adiabaticity", &check_adiabaticity, py::arg("p"),
        py::arg("margin") = kDefaultAdiabaticMargin);

  m.def("theta_closed_form", &theta_closed_form);
  m.def("theta_reduced", &theta_reduced, py::arg("v_over_K"), py::arg("ell_over_w"));
  m.def("xi_quadrature", &xi_quadrature, py::arg("p"), py::arg("k"),
        py::arg("t_end") = std::optional<double>{});

  m.def(
      "integrate",
      [](const PhysicalParams& p, const Kinematics& k, const std::string& channel,
         std::size_t samples, double rtol) {
        IntegrationOptions opt;
        opt.samples = samples;
        opt.solver.rtol = rtol;
        opt.solver.atol = rtol * 1e-3;
        Trajectory traj;
        {
          py::gil_scoped_release release;
          traj = integrate(initial_state(p, k, parse_channel(channel)), p, k, opt);
        }
        const std::size_t n = traj.samples.size();
        py::array_t<double> t(n);
        py::array_t<std::complex<double>> c({n, std::size_t{5}});
        auto tv = t.mutable_unchecked<1>();
        auto cv = c.mutable_unchecked<2>();
        for (std::size_t i = 0; i < n; ++i) {
          tv(i) = traj.samples[i].t;
          for (std::size_t j = 0; j < 5; ++j) cv(i, j) = traj.samples[i].c[j];
        }
        const auto angle = extract_full_angle(traj);
        py::dict d;
        d["t"] = t;
        d["c"] = c;
        d["theta"] = angle.theta;
        d["leakage"] = angle.leakage;
        d["max_norm_drift"] = traj.stats.max_norm_drift;
        d["steps"] = traj.stats.steps;
        return d;
      },
      py::arg("p"), py::arg("k"), py::arg("channel") = "a_1bar", py::arg("samples") = 1001,
      py::arg("rtol") = 1e-9);

  m.def("entropy_of_theta", &entropy_of_theta);
  m.def(
      "entropy_map",
      [](std::pair<double, double> v_range, std::pair<double, double> ell_range,
         std::size_t nv, std::size_t nl, unsigned threads) {
        Grid g;
        {
          py::gil_scoped_release release;
          g = entropy_map(make_spec(v_range, ell_range, nv, nl), threads);
        }
        return grid_dict(g);
      },
      py::arg("v_range") = std::pair{0.0, 1.2}, py::arg("ell_range") = std::pair{0.0, 3.0},
      py::arg("nv") = 200, py::arg("nl") = 200, py::arg("threads") = 1);

  m.def("gate_fidelity", [](const std::string& gate, double theta) {
    return gate_fidelity(parse_gate(gate), theta);
  });
  m.def(
      "fidelity_map",
      [](const std::string& gate, std::pair<double, double> v_range,
         std::pair<double, double> ell_range, std::size_t nv, std::size_t nl,
         unsigned threads) {
        const Gate g = parse_gate(gate);
        Grid out;
        {
          py::gil_scoped_release release;
          out = fidelity_map(g, make_spec(v_range, ell_range, nv, nl), threads);
        }
        return grid_dict(out);
      },
      py::arg("gate"), py::arg("v_range") = std::pair{0.0, 1.2},
      py::arg("ell_range") = std::pair{0.0, 3.0}, py::arg("nv") = 200, py::arg("nl") = 200,
      py::arg("threads") = 1);
  m.def("run_sequence", [](const std::string& diagram, double theta) {
    const auto r = run_sequence(parse_diagram(diagram), theta);
    py::dict d;
    d["matrix"] = Eigen::MatrixXcd(r.op.matrix);
    d["leakage"] = r.op.leakage_norm();
    d["global_phase"] = r.global_phase;
    d["fidelity"] = r.fidelity;
    return d;
  });

  m.def("solve_velocity", &solve_velocity, py::arg("theta_star"), py::arg("ell"), py::arg("p"));
  m.def("solve_velocity_reduced", &solve_velocity_reduced, py::arg("theta_star"),
        py::arg("ell_over_w"));
  m.def(
      "condition_curve",
      [](const std::string& kind, unsigned n, double ell_lo, double ell_hi, std::size_t samples,
         double theta) {
        ConditionQuery q;
        q.kind = parse_condition_kind(kind);
        q.n = n;
        q.ell_lo = ell_lo;
        q.ell_hi = ell_hi;
        q.samples = samples;
        q.custom_theta = theta;
        const auto c = condition_curve(q);
        py::array_t<double> ell(c.points.size()), v(c.points.size());
        for (std::size_t i = 0; i < c.points.size(); ++i) {
          ell.mutable_data()[i] = c.points[i].ell_over_w;
          v.mutable_data()[i] = c.points[i].v_over_K;
        }
        return py::make_tuple(c.theta_star, ell, v);
      },
      py::arg("kind") = "max-entanglement", py::arg("n") = 0, py::arg("ell_lo") = 0.0,
      py::arg("ell_hi") = 3.0, py::arg("samples") = 200, py::arg("theta") = 0.0);
}
