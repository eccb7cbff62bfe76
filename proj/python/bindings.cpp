#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "symmin/errors.hpp"
#include "symmin/report.hpp"

namespace py = pybind11;
using namespace symmin;

namespace {

SpaceDescriptor space_from(const std::string& id, int n, int m) {
  const auto kind = parse_space_id(id);
  if (!kind) throw py::value_error("unknown space id: " + id);
  return make_space(*kind, n, m);
}

Params params_from_dict(const std::map<std::string, std::vector<cplx>>& d) {
  Params p;
  for (const auto& [name, values] : d)
    p.vectors[name] = Eigen::Map<const CVec>(values.data(), static_cast<Eigen::Index>(values.size()));
  return p;
}

std::map<std::string, std::vector<cplx>> params_to_dict(const Params& p) {
  std::map<std::string, std::vector<cplx>> d;
  for (const auto& [name, v] : p.vectors) d[name] = std::vector<cplx>(v.data(), v.data() + v.size());
  return d;
}

DerivativeEngine engine_from(const std::string& name) {
  if (name == "exact") return DerivativeEngine::exact();
  if (name == "fd") return DerivativeEngine::finite_difference();
  throw py::value_error("engine must be 'exact' or 'fd'");
}

py::tuple as_fraction(const Rational& q) { return py::make_tuple(q.numerator(), q.denominator()); }

}  // namespace

PYBIND11_MODULE(_symmin, m) {
  m.doc() = "Eigenfunctions on compact symmetric spaces: evaluation, tension field, fibres";

  py::register_exception<ConstraintError>(m, "ConstraintError", PyExc_ValueError);
  py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);
  py::register_exception<UnknownCaseError>(m, "UnknownCaseError", PyExc_KeyError);

  py::class_<SpaceDescriptor>(m, "Space")
      .def(py::init(&space_from), py::arg("id"), py::arg("n"), py::arg("m") = 0)
      .def_property_readonly("label", &SpaceDescriptor::label)
      .def_property_readonly("id", &SpaceDescriptor::id)
      .def_property_readonly("n", [](const SpaceDescriptor& s) { return s.n; })
      .def_property_readonly("m", [](const SpaceDescriptor& s) { return s.m; })
      .def_property_readonly("lam", [](const SpaceDescriptor& s) { return as_fraction(s.lambda); })
      .def_property_readonly("mu", [](const SpaceDescriptor& s) { return as_fraction(s.mu); })
      .def_property_readonly("dim_total", &SpaceDescriptor::dim_total)
      .def_property_readonly("dim_horizontal", &SpaceDescriptor::dim_horizontal)
      .def_property_readonly("matrix_size", [](const SpaceDescriptor& s) { return s.total.embedding_dim(); })
      .def("__repr__", [](const SpaceDescriptor& s) { return "Space(" + s.label() + ")"; });

  py::class_<EigenfunctionSpec>(m, "Spec")
      .def_property_readonly("space", [](const EigenfunctionSpec& s) { return s.space; })
      .def_property_readonly("params", [](const EigenfunctionSpec& s) { return params_to_dict(s.params); })
      .def_property_readonly("lam", [](const EigenfunctionSpec& s) { return as_fraction(s.lambda); })
      .def_property_readonly("mu", [](const EigenfunctionSpec& s) { return as_fraction(s.mu); });

  m.def(
      "build", [](const SpaceDescriptor& s, const std::map<std::string, std::vector<cplx>>& p) {
        return build(s, params_from_dict(p));
      },
      py::arg("space"), py::arg("params"));
  m.def(
      "validate",
      [](const SpaceDescriptor& s, const std::map<std::string, std::vector<cplx>>& p) {
        std::vector<std::string> out;
        for (const auto& v : validate(s, params_from_dict(p))) out.push_back(v.constraint);
        return out;
      },
      py::arg("space"), py::arg("params"));
  m.def(
      "default_params", [](const SpaceDescriptor& s, int variant) { return params_to_dict(default_params(s, variant)); },
      py::arg("space"), py::arg("variant") = 0);
  m.def(
      "haar_sample", [](const SpaceDescriptor& s, std::uint64_t seed) { return haar_sample(s.total, seed); },
      py::arg("space"), py::arg("seed"));
  m.def(
      "membership_residual", [](const SpaceDescriptor& s, const CMat& x) { return membership_residual(s.total, x); },
      py::arg("space"), py::arg("x"));
  m.def("evaluate", &evaluate, py::arg("spec"), py::arg("x"));
  m.def(
      "tension_field",
      [](const EigenfunctionSpec& s, const CMat& x, const std::string& engine) {
        return tension_field(s, x, engine_from(engine));
      },
      py::arg("spec"), py::arg("x"), py::arg("engine") = "exact");
  m.def(
      "conformality",
      [](const EigenfunctionSpec& a, const EigenfunctionSpec& b, const CMat& x, const std::string& engine) {
        return conformality(a, b, x, engine_from(engine));
      },
      py::arg("spec_a"), py::arg("spec_b"), py::arg("x"), py::arg("engine") = "exact");
  m.def(
      "gradient_norm", [](const EigenfunctionSpec& s, const CMat& x) { return gradient_norm(s, x); }, py::arg("spec"),
      py::arg("x"));
  m.def(
      "eigen_residuals",
      [](const EigenfunctionSpec& s, int samples, std::uint64_t seed, const std::string& engine) {
        const auto r = eigen_residuals(s, samples, seed, engine_from(engine));
        return py::dict(py::arg("tau") = r.max_tau_residual, py::arg("kappa") = r.max_kappa_residual,
                        py::arg("samples") = r.samples);
      },
      py::arg("spec"), py::arg("samples") = 50, py::arg("seed") = 1, py::arg("engine") = "exact");
  m.def(
      "find_fiber_point",
      [](const EigenfunctionSpec& s, std::uint64_t seed) {
        const auto fp = find_fiber_point(s, seed);
        return py::dict(py::arg("x") = fp.x, py::arg("abs_phi") = fp.abs_phi, py::arg("grad_norm") = fp.grad_norm,
                        py::arg("iterations") = fp.iterations, py::arg("converged") = fp.converged);
      },
      py::arg("spec"), py::arg("seed"));
  m.def("gallery_ids", &gallery_ids);
  m.def(
      "critical_gallery",
      [](const std::string& id) {
        const auto g = critical_gallery(id);
        return py::dict(py::arg("space") = g.info.spec.space.label(), py::arg("x") = g.info.x,
                        py::arg("phi") = g.phi, py::arg("grad_norm") = g.grad_norm);
      },
      py::arg("case_id"));
  m.def(
      "table",
      [](int samples, std::uint64_t seed, const std::string& engine) {
        py::list rows;
        for (const auto& r : run_table(default_table_sizes(), samples, seed, engine_from(engine), 1))
          rows.append(py::dict(py::arg("space") = r.space.label(), py::arg("lam") = as_fraction(r.space.lambda),
                               py::arg("mu") = as_fraction(r.space.mu), py::arg("tau_residual") = r.tau_residual,
                               py::arg("kappa_residual") = r.kappa_residual, py::arg("passed") = r.pass));
        return rows;
      },
      py::arg("samples") = 50, py::arg("seed") = 1, py::arg("engine") = "exact");
}
