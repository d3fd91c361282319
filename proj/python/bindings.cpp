#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "hcr/analysis.hpp"
#include "hcr/runner.hpp"

namespace py = pybind11;
using namespace hcr;

namespace {

template <class State, class Fields>
py::dict path_dict(const Path<State>& path, Fields&& fields) {
  py::dict d;
  d["times"] = path.times;
  fields(d, path.states);
  d["absorption_time"] = path.absorption_time ? py::cast(*path.absorption_time) : py::none();
  return d;
}

py::dict radial_path(const Path<HRadial>& p) {
  return path_dict(p, [](py::dict& d, const std::vector<HRadial>& s) {
    std::vector<double> r, t;
    for (const auto& x : s) {
      r.push_back(x.r);
      t.push_back(x.t);
    }
    d["r"] = r;
    d["t"] = t;
  });
}

py::dict sphere_path(const Path<SCyl>& p) {
  return path_dict(p, [](py::dict& d, const std::vector<SCyl>& s) {
    std::vector<double> r, th;
    for (const auto& x : s) {
      r.push_back(x.r);
      th.push_back(x.theta);
    }
    d["r_s"] = r;
    d["theta"] = th;
  });
}

py::dict report_dict(const PushforwardReport& rep) {
  py::list points;
  for (const auto& p : rep.points) {
    py::dict d;
    d["u"] = p.u;
    py::dict ks;
    for (const auto& m : p.marginals) ks[py::str(m.name)] = py::make_tuple(m.ks.statistic, m.critical, m.pass);
    d["ks"] = ks;
    d["drop_mapped"] = p.drop_mapped.value;
    d["drop_direct"] = p.drop_direct.value;
    d["drop_pass"] = p.drop_pass;
    d["ks_pass"] = p.ks_pass;
    d["max_statistic"] = p.max_statistic;
    points.append(d);
  }
  py::dict out;
  out["paths"] = rep.paths;
  out["points"] = points;
  out["pass"] = rep.pass();
  return out;
}

int run_command(const std::string& kind, const std::string& target, const std::map<std::string, std::string>& settings) {
  RunConfig cfg;
  for (const auto& [k, v] : settings) cfg.set(k, v);
  std::ostringstream log;
  if (kind == "verify") return target == "geometry" ? cmd_verify_geometry(cfg, log) : cmd_verify_operators(cfg, log);
  if (kind == "experiment") return cmd_experiment(cfg, target, log);
  if (kind == "simulate") return cmd_simulate(cfg, target, log);
  throw std::invalid_argument("unknown command '" + kind + "'");
}

}  // namespace

PYBIND11_MODULE(_hcr, m) {
  m.doc() = "Heisenberg group and CR sphere: conformal maps, operators and conditioned diffusions";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

  py::class_<HRadial>(m, "HRadial")
      .def(py::init<double, double>(), py::arg("r"), py::arg("t"))
      .def_readwrite("r", &HRadial::r)
      .def_readwrite("t", &HRadial::t)
      .def("__repr__", [](const HRadial& p) {
        return "HRadial(r=" + std::to_string(p.r) + ", t=" + std::to_string(p.t) + ")";
      });

  py::class_<SCyl>(m, "SCyl")
      .def(py::init(&SCyl::make), py::arg("r"), py::arg("theta"))
      .def_readonly("r", &SCyl::r)
      .def_readonly("theta", &SCyl::theta)
      .def("__repr__", [](const SCyl& q) {
        return "SCyl(r=" + std::to_string(q.r) + ", theta=" + std::to_string(q.theta) + ")";
      });

  py::class_<HPoint>(m, "HPoint")
      .def(py::init<std::vector<cplx>, double>(), py::arg("z"), py::arg("t"))
      .def_readwrite("z", &HPoint::z)
      .def_readwrite("t", &HPoint::t);

  py::class_<SimConfig>(m, "SimConfig")
      .def(py::init<>())
      .def_readwrite("n", &SimConfig::n)
      .def_readwrite("step", &SimConfig::step)
      .def_readwrite("horizon", &SimConfig::horizon)
      .def_readwrite("seed", &SimConfig::seed)
      .def_readwrite("paths", &SimConfig::paths)
      .def_readwrite("pole_eps", &SimConfig::pole_eps)
      .def_readwrite("workers", &SimConfig::workers);

  py::class_<MCEstimate>(m, "MCEstimate")
      .def_readonly("value", &MCEstimate::value)
      .def_readonly("std_error", &MCEstimate::std_error)
      .def_readonly("paths", &MCEstimate::paths);

  // geometry
  m.def("group_mul", &group_mul);
  m.def("group_inv", &group_inv);
  m.def("koranyi", [](const HRadial& p) { return koranyi(p); });
  m.def("cayley", [](const HPoint& p) { return cayley(p).zeta; });
  m.def("cayley_chart", &cayley_chart);
  m.def("cayley_chart_inverse", &cayley_chart_inverse);
  m.def("kelvin", &kelvin);
  m.def("kelvin_radial", &kelvin_radial);
  m.def("south_weight", [](const SCyl& q) { return south_weight(q); });
  m.def("north_weight", [](const SCyl& q) { return north_weight(q); });
  m.def("cayley_factor", &cayley_factor);
  m.def("measure_jacobian_residual", &measure_jacobian_residual, py::arg("p"), py::arg("n"),
        py::arg("fd_step") = 1e-5);

  // operators
  m.def("sphere_harmonicity_residual", &sphere_harmonicity_residual);
  m.def("heisenberg_harmonicity_residual", &heisenberg_harmonicity_residual);
  m.def("h_process_drift", [](const SCyl& q, int n) {
    const DriftVec d = h_process_drift(q, n);
    return py::make_tuple(d.first, d.second);
  });
  m.def("n_process_drift", [](const HRadial& p, int n) {
    const DriftVec d = n_process_drift(p, n);
    return py::make_tuple(d.first, d.second);
  });

  // simulation
  m.def("simulate_radial_heisenberg", [](const HRadial& x0, const SimConfig& cfg, std::uint64_t path) {
    return radial_path(simulate_radial_heisenberg(x0, cfg, path));
  });
  m.def("simulate_n_process", [](const HRadial& x0, const SimConfig& cfg, std::uint64_t path) {
    return radial_path(simulate_n_process(x0, cfg, path));
  });
  m.def("simulate_radial_sphere", [](const SCyl& x0, const SimConfig& cfg, std::uint64_t path) {
    return sphere_path(simulate_radial_sphere(x0, cfg, path));
  });
  m.def("simulate_h_process", [](const SCyl& x0, const SimConfig& cfg, std::uint64_t path) {
    return sphere_path(simulate_h_process(x0, cfg, path));
  });
  m.def("absorption_times", &absorption_times);

  // analysis
  m.def("green_heisenberg_pole", &green_heisenberg_pole);
  m.def("green_sphere_pole", &green_sphere_pole);
  m.def("green_relation_ratio", &green_relation_ratio);
  m.def("killing_rate", &killing_rate);
  m.def("ks_two_sample", [](const std::vector<double>& a, const std::vector<double>& b) {
    const KsResult r = ks_two_sample(a, b);
    return py::make_tuple(r.statistic, r.p_value);
  });
  m.def("ks_critical_value", &ks_critical_value);
  m.def("survival_curve", [](const SCyl& x, const std::vector<double>& ts, const SimConfig& cfg) {
    const SurvivalCurve s = survival_curve(x, ts, cfg);
    return py::make_tuple(s.s_hat, s.se);
  });
  m.def(
      "pushforward_cayley",
      [](const HRadial& x0, const std::vector<double>& u, const SimConfig& cfg) {
        PushforwardReport r;
        {
          py::gil_scoped_release release;
          r = pushforward_cayley(x0, u, cfg);
        }
        return report_dict(r);
      },
      py::arg("x0"), py::arg("u_grid"), py::arg("cfg"));
  m.def(
      "pushforward_kelvin",
      [](const HRadial& x0, const std::vector<double>& u, const SimConfig& cfg, bool image) {
        PushforwardReport r;
        {
          py::gil_scoped_release release;
          r = pushforward_kelvin(x0, u, cfg, image ? ClockOrientation::image : ClockOrientation::preimage);
        }
        return report_dict(r);
      },
      py::arg("x0"), py::arg("u_grid"), py::arg("cfg"), py::arg("image") = true);

  m.def("run_command", &run_command, py::arg("kind"), py::arg("target"), py::arg("settings"),
        "Run a command of the hcr tool; returns its exit code.");
}
