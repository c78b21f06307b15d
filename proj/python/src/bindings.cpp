#include <pybind11/complex.h>
#include <pybind11/iostream.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <iostream>

#include "gkdv/cli/commands.hpp"
#include "gkdv/cli/config.hpp"
#include "gkdv/estimates/verify.hpp"
#include "gkdv/solver/conservation.hpp"
#include "gkdv/solver/data.hpp"
#include "gkdv/solver/reference.hpp"
#include "gkdv/spacetime/mixed_norm.hpp"
#include "gkdv/spacetime/pairs.hpp"
#include "gkdv/spectral/norms.hpp"

namespace py = pybind11;
using namespace gkdv;
using nlohmann::json;

namespace {

json parse_json(const std::string& text) { return text.empty() ? json::object() : json::parse(text); }

py::array_t<double> to_array(const std::vector<double>& v) { return py::array_t<double>(v.size(), v.data()); }

py::array_t<Complex> to_array(std::span<const Complex> v) { return py::array_t<Complex>(v.size(), v.data()); }

py::dict trace_dict(const TimeTrace& trace) {
  const std::size_t m = trace.size(), n = trace.grid().size();
  py::array_t<double> samples({m, n});
  auto view = samples.mutable_unchecked<2>();
  for (std::size_t i = 0; i < m; ++i) {
    const auto row = real_samples(trace[i]);
    for (std::size_t j = 0; j < n; ++j) view(i, j) = row[j];
  }
  py::dict d;
  d["times"] = to_array(std::vector<double>(trace.times().begin(), trace.times().end()));
  d["samples"] = samples;
  return d;
}

SolverConfig solver_config(double t_end, std::size_t time_samples, double delta, double tolerance) {
  SolverConfig cfg;
  cfg.t_end = t_end;
  cfg.time_samples = time_samples;
  cfg.delta = delta;
  cfg.tolerance = tolerance;
  return cfg;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Spectral laboratory for dispersive estimates and the generalized KdV equation";
  m.attr("__version__") = cli::version();

  py::class_<Grid1D>(m, "Grid1D")
      .def(py::init([](double half_length, std::int64_t points) { return make_grid(half_length, points); }),
           py::arg("half_length"), py::arg("points"))
      .def_property_readonly("half_length", &Grid1D::half_length)
      .def_property_readonly("size", &Grid1D::size)
      .def_property_readonly("dx", &Grid1D::dx)
      .def_property_readonly("dxi", &Grid1D::dxi)
      .def("positions", [](const Grid1D& g) { return to_array(g.positions()); })
      .def("frequencies", [](const Grid1D& g) { return to_array(g.frequencies()); });

  py::class_<SpectralField>(m, "SpectralField")
      .def_static(
          "from_samples",
          [](const Grid1D& grid, py::array_t<double, py::array::c_style | py::array::forcecast> samples) {
            if (samples.ndim() != 1 || static_cast<std::size_t>(samples.size()) != grid.size()) {
              throw std::invalid_argument("samples must be a 1-d array of grid.size values");
            }
            return forward_transform(std::span<const double>(samples.data(), grid.size()), grid);
          },
          py::arg("grid"), py::arg("samples"))
      .def_property_readonly("grid", &SpectralField::grid)
      .def_property_readonly("is_real", &SpectralField::is_real)
      .def("coeffs", [](const SpectralField& f) { return to_array(f.coeffs()); })
      .def("samples", [](const SpectralField& f) { return to_array(real_samples(f)); })
      .def("__add__", [](const SpectralField& a, const SpectralField& b) { return a + b; })
      .def("__sub__", [](const SpectralField& a, const SpectralField& b) { return a - b; })
      .def("__mul__", [](const SpectralField& a, double s) { return a * s; })
      .def("__rmul__", [](const SpectralField& a, double s) { return a * s; });

  m.def("airy_propagate", &airy_propagate, py::arg("field"), py::arg("t"));
  m.def("derivative", &derivative, py::arg("field"));
  m.def("lhat_norm", &lhat_norm, py::arg("field"), py::arg("r"));
  m.def("sobolev_norm", &sobolev_norm, py::arg("field"), py::arg("s"));
  m.def("besov_norm", &besov_norm, py::arg("field"), py::arg("s"), py::arg("q"));
  m.def("weighted_norm", &weighted_norm, py::arg("field"), py::arg("s"));
  m.def("lebesgue_norm", &lebesgue_norm, py::arg("field"), py::arg("p"));

  m.def(
      "classify_pair",
      [](double s, double r) {
        const auto c = classify_pair(s, r);
        py::dict d;
        d["s"] = c.s;
        d["r"] = c.r;
        d["acceptable"] = c.acceptable;
        d["conjugate_acceptable"] = c.conjugate_acceptable;
        d["endpoint"] = c.endpoint;
        d["violation"] = c.violation;
        if (c.exponents) d["pq"] = py::make_tuple(c.exponents->p(), c.exponents->q());
        return d;
      },
      py::arg("s"), py::arg("r"));

  m.def("gaussian_datum", &gaussian_datum, py::arg("grid"), py::arg("amp"), py::arg("center") = 0.0,
        py::arg("width") = 1.0);
  m.def("soliton_datum", &soliton_datum, py::arg("grid"), py::arg("alpha"), py::arg("speed"),
        py::arg("center") = 0.0);
  m.def(
      "mass", [](const SpectralField& u) { return mass(u); }, py::arg("u"));
  m.def(
      "energy",
      [](const SpectralField& u, double alpha, double mu) { return energy(u, NonlinearityG::power(alpha, mu)); },
      py::arg("u"), py::arg("alpha") = 5.0, py::arg("mu") = 1.0);
  m.def(
      "free_snorm",
      [](const SpectralField& u0, double t_end, std::size_t samples, double r) {
        return snorm(free_evolution(u0, uniform_times(0.0, t_end, samples + 1)), r);
      },
      py::arg("u0"), py::arg("t_end"), py::arg("samples"), py::arg("r"));

  m.def(
      "picard_solve",
      [](const SpectralField& u0, double alpha, double mu, double t_end, std::size_t time_samples, double delta,
         double tolerance) {
        const auto res = picard_solve(u0, 0.0, NonlinearityG::power(alpha, mu),
                                      solver_config(t_end, time_samples, delta, tolerance));
        py::dict d = res.trace ? trace_dict(*res.trace) : py::dict();
        d["converged"] = res.converged;
        d["status"] = res.status;
        d["iterations"] = res.iterations;
        d["epsilon"] = res.epsilon;
        d["contraction_factors"] = res.contraction_factors;
        d["mass_drift"] = res.diagnostics.mass_drift;
        d["energy_drift"] = res.diagnostics.energy_drift;
        return d;
      },
      py::arg("u0"), py::arg("alpha") = 5.0, py::arg("mu") = 1.0, py::arg("t_end") = 1.0,
      py::arg("time_samples") = 0, py::arg("delta") = kCalibratedDelta, py::arg("tolerance") = 1e-12);
  m.def(
      "reference_solve",
      [](const SpectralField& u0, double alpha, double mu, double t_end, std::size_t time_samples, double step) {
        auto cfg = solver_config(t_end, time_samples, kCalibratedDelta, 1e-12);
        cfg.reference_step = step;
        return trace_dict(reference_solve(u0, 0.0, NonlinearityG::power(alpha, mu), cfg));
      },
      py::arg("u0"), py::arg("alpha") = 5.0, py::arg("mu") = 1.0, py::arg("t_end") = 1.0,
      py::arg("time_samples") = 0, py::arg("step") = 1e-3);

  m.def(
      "estimate_ids", [] { return estimate_ids(); });
  m.def(
      "resolve_config_json",
      [](const std::string& command, const std::string& file, const std::string& flags) {
        return cli::resolve_config(command, parse_json(file), parse_json(flags)).dump();
      },
      py::arg("command"), py::arg("file") = "", py::arg("flags") = "");
  m.def(
      "execute_json",
      [](const std::string& command, const std::string& config) {
        py::gil_scoped_release release;
        const auto o = cli::execute(command, parse_json(config));
        return std::make_tuple(o.exit_code, o.report.dump(), o.csv);
      },
      py::arg("command"), py::arg("config"));
  m.def(
      "run_cli",
      [](std::vector<std::string> args) {
        args.insert(args.begin(), "gkdv_lab");
        std::vector<const char*> argv;
        for (const auto& a : args) argv.push_back(a.c_str());
        py::scoped_ostream_redirect out_redirect;
        return cli::run(static_cast<int>(argv.size()), argv.data(), std::cout, std::cerr);
      },
      py::arg("args"));

  py::register_exception<cli::ConfigError>(m, "ConfigError", PyExc_ValueError);
}
