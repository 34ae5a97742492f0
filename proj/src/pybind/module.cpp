#include <pybind11/pybind11.h>

#include "polyext/caps.hpp"
#include "polyext/json_io.hpp"
#include "polyext/quiver.hpp"

namespace py = pybind11;
using namespace polyext;

namespace {

// Values cross the boundary as plain Python dicts and lists mirroring the
// JSON formats; rationals stay exact as "p" or "p/q" strings.
py::object to_py(const Json& j) {
  return py::module_::import("json").attr("loads")(py::str(dump_json(j)));
}

Json from_py(const py::object& o) {
  py::object text = py::module_::import("json").attr("dumps")(o);
  return parse_json_text(py::cast<std::string>(text));
}

Polyhedron poly_from_py(const py::object& o) {
  return polyhedron_from_json(from_py(o));
}

}  // namespace

PYBIND11_MODULE(_polyext, m) {
  m.doc() =
      "Exact Ext tables, exceptional collections and fullness certificates "
      "for nef line bundles on toric varieties, given as lattice polytopes.";

  py::register_exception<input_error>(m, "InputError", PyExc_ValueError);
  py::register_exception<cap_error>(m, "CapError", PyExc_RuntimeError);

  m.def(
      "enumerate_collection",
      [](const std::string& family, int n, const std::string& filter) {
        CollectionFamily f = family_from_string(family);
        return to_py(enumerate_listing(
            f, n, filter.empty() ? default_filter(f) : filter));
      },
      py::arg("family"), py::arg("n"), py::arg("filter") = "",
      "Schubert enumeration listing with sources, polytopes and counts.");

  m.def(
      "ext",
      [](const py::object& p, const py::object& q, bool equivariant) {
        Polyhedron pp = poly_from_py(p);
        Polyhedron qq = poly_from_py(q);
        if (pp.ambient() != qq.ambient())
          throw input_error("polytopes live in different ambient dimensions");
        if (pp.is_empty() || qq.is_empty())
          throw input_error("ext requires nonempty polytopes");
        if (!pp.bounded() || !qq.bounded())
          throw input_error("ext requires bounded polytopes");
        return to_py(betti_to_json(ext_table(pp, qq, equivariant)));
      },
      py::arg("p"), py::arg("q"), py::arg("equivariant") = false,
      "Ext table of two nef line bundles given as polytope dicts.");

  m.def(
      "verify",
      [](const std::string& family, int n) {
        return to_py(
            full_verify_report(build_collection(family_from_string(family), n)));
      },
      py::arg("family"), py::arg("n"),
      "Exceptionality, unitriangularity and symmetry orbit report.");

  m.def(
      "quiver_dot",
      [](const std::string& family, int n) {
        return export_dot(
            tilting_quiver(build_collection(family_from_string(family), n)));
      },
      py::arg("family"), py::arg("n"), "Tilting quiver in DOT format.");

  m.def(
      "quiver_json",
      [](const std::string& family, int n) {
        return to_py(parse_json_text(export_json(
            tilting_quiver(build_collection(family_from_string(family), n)))));
      },
      py::arg("family"), py::arg("n"), "Tilting quiver as a dict.");

  m.def(
      "certify",
      [](const std::string& family, const py::object& target) {
        Polyhedron t = poly_from_py(target);
        if (t.ambient() < 1)
          throw input_error("certificate targets need ambient dimension >= 1");
        Collection c =
            build_collection(family_from_string(family), t.ambient());
        return to_py(certificate_to_json(fullness_certificate(c, t), c));
      },
      py::arg("family"), py::arg("target"),
      "Fullness certificate tree for a lattice polytope target.");

  m.def(
      "counts",
      [](const std::string& family, int n, bool cuspidal) {
        Collection c = build_collection(family_from_string(family), n);
        return (long)(cuspidal ? cuspidal_subcollection(c).items.size()
                               : c.items.size());
      },
      py::arg("family"), py::arg("n"), py::arg("cuspidal") = false,
      "Number of collection members, optionally cuspidal ones only.");

  m.def(
      "schemas",
      [] {
        py::dict d;
        for (const auto& [name, text] : builtin_schemas())
          d[py::str(name)] = text;
        return d;
      },
      "Shipped JSON schema documents keyed by name.");
}
