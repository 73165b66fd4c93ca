#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "tnz/cli.hpp"
#include "tnz/errors.hpp"
#include "tnz/invariant.hpp"
#include "tnz/io.hpp"

namespace py = pybind11;
using namespace tnz;

namespace {

Triangulation load(const std::string& path) { return load_triangulation(path); }

std::map<int, Complex> poly_dict(const CPoly& p) {
  std::map<int, Complex> out;
  for (const auto& [e, c] : p.terms()) out[e] = c;
  return out;
}

py::tuple run_command(const std::string& command, const std::string& path, std::optional<std::vector<long long>> cocycle,
                      double tolerance, int n, const std::string& format, const std::string& curve,
                      std::optional<int> face) {
  RunConfig cfg{command, path, std::move(cocycle), tolerance, n, format, curve, face};
  std::ostringstream out, err;
  const int code = run(cfg, out, err);
  return py::make_tuple(code, out.str(), err.str());
}

}  // namespace

PYBIND11_MODULE(_tnz, m) {
  m.doc() = "Twisted Neumann-Zagier matrices and the twisted 1-loop invariant";

  auto input_error = py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<SolverError>(m, "SolverError", PyExc_RuntimeError);
  (void)input_error;

  m.def("run_command", &run_command, py::arg("command"), py::arg("path"), py::arg("cocycle") = py::none(),
        py::arg("tolerance") = 1e-12, py::arg("n") = 2, py::arg("format") = "json", py::arg("curve") = "longitude",
        py::arg("face") = py::none(),
        "Run one CLI subcommand; returns (exit_code, stdout, stderr).");

  m.def("parse", [](const std::string& path) { return triangulation_to_json(load(path)).dump(); }, py::arg("path"),
        "Normalized triangulation JSON.");

  m.def("gluing_matrices", [](const std::string& path) {
    const GluingMatrices g = gluing_matrices(load(path));
    json j{{"G", to_json(g.G)}, {"Gp", to_json(g.Gp)}, {"Gpp", to_json(g.Gpp)}};
    return j.dump();
  }, py::arg("path"));

  m.def("nz_matrices", [](const std::string& path) {
    const NZMatrices nz = nz_matrices(gluing_matrices(load(path)));
    return json{{"A", to_json(nz.A)}, {"B", to_json(nz.B)}}.dump();
  }, py::arg("path"));

  m.def("shapes", [](const std::string& path) { return solve_shapes(load(path)).z; }, py::arg("path"),
        "Shapes of the complete structure.");

  m.def("twisted_one_loop", [](const std::string& path, std::optional<std::vector<long long>> cocycle) {
    const Setup s = prepare(load(path), cocycle ? &*cocycle : nullptr);
    return poly_dict(twisted_one_loop(s.tri, s.cocycle, s.shapes.z, s.flattening).canonical.poly);
  }, py::arg("path"), py::arg("cocycle") = py::none(),
        "Canonical twisted 1-loop polynomial as {exponent: coefficient}.");

  m.def("one_loop", [](const std::string& path, const std::string& curve) {
    const Setup s = prepare(load(path));
    return one_loop(s.tri, s.shapes.z, s.flattening, curve).value;
  }, py::arg("path"), py::arg("curve") = "longitude");

  m.def("verify", [](const std::string& path) {
    std::map<std::string, bool> out;
    for (const auto& [k, r] : run_verify(prepare(load(path)))) out[k] = r.pass;
    return out;
  }, py::arg("path"), "Pass/fail of each consistency check.");
}
