// Thin Python surface; structured results cross as JSON text.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "vsplit/census.hpp"
#include "vsplit/compression.hpp"
#include "vsplit/dg_format.hpp"
#include "vsplit/errors.hpp"
#include "vsplit/expansion.hpp"
#include "vsplit/predicates.hpp"

namespace py = pybind11;
using namespace vsplit;

namespace {

std::vector<std::pair<std::string, std::string>> labelled_arrows(const DiGraph& g, bool with_loops) {
  std::vector<std::pair<std::string, std::string>> out;
  for (Arrow a : with_loops ? g.arrows() : g.star_arrows()) out.emplace_back(g.label(a.tail), g.label(a.head));
  return out;
}

ObstructionPredicate predicate_or_throw(const std::string& name) {
  auto p = parse_predicate(name);
  if (!p) throw py::value_error("unknown predicate '" + name + "'");
  return *p;
}

}  // namespace

PYBIND11_MODULE(_vsplit, m) {
  m.doc() = "Digraph expansion by vertex splitting";

  static py::exception<Error> error(m, "VsplitError");
  static py::exception<PreconditionViolated> precondition(m, "PreconditionError", error.ptr());
  static py::exception<InternalInvariantBreached> internal(m, "InternalError", error.ptr());
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const PreconditionViolated& e) {
      PyErr_SetString(precondition.ptr(), e.what());
    } catch (const InternalInvariantBreached& e) {
      PyErr_SetString(internal.ptr(), e.what());
    } catch (const Error& e) {
      PyErr_SetString(error.ptr(), e.what());
    }
  });

  py::class_<DiGraph>(m, "DiGraph")
      .def_property_readonly("name", &DiGraph::name)
      .def_property_readonly("labels", &DiGraph::labels)
      .def("__len__", &DiGraph::size)
      .def("arrows", &labelled_arrows, py::arg("with_loops") = false)
      .def("has_arrow", [](const DiGraph& g, const std::string& a, const std::string& b) {
        return g.has_arrow(g.at(a), g.at(b));
      })
      .def("to_dg", [](const DiGraph& g) { return emit_digraph(g); })
      .def("to_dot", [](const DiGraph& g) { return emit_digraph(g, TextFormat::Dot); })
      .def("__eq__", [](const DiGraph& a, const DiGraph& b) { return a == b; })
      .def("__repr__", [](const DiGraph& g) {
        return "<DiGraph " + (g.name().empty() ? std::string("(unnamed)") : g.name()) + " with " +
               std::to_string(g.size()) + " vertices>";
      });

  m.def("parse", &parse_digraph, py::arg("text"));
  m.def("read", [](const std::string& path) { return read_digraph_file(path); }, py::arg("path"));
  m.def("transitive_closure", &transitive_closure);
  m.def("is_isomorphic", [](const DiGraph& a, const DiGraph& b) { return is_isomorphic(a, b).has_value(); });
  m.def("is_stable", &is_stable);
  m.def("is_balanced", &is_balanced);
  m.def("is_preordered", &is_preordered);
  m.def("report_json", [](const DiGraph& g) { return report_to_json(g, property_report(g)).dump(); });

  m.def("expand_json", [](const DiGraph& g) { return trace_to_json(expand_to_preorder(g)).dump(); });
  m.def("expand", [](const DiGraph& g) { return expand_to_preorder(g).result; });

  m.def("verify", [](const DiGraph& source, const DiGraph& target, const std::string& map_text) {
    const CompressionMap map = parse_map(map_text, source, target);
    const CompressionVerdict v = verify_compression(map);
    return std::pair{is_valid(v), describe(v, map)};
  }, py::arg("source"), py::arg("target"), py::arg("map_text"));

  m.def("iso_class_count", [](std::size_t n) { return count_reflexive(n, EnumerationMode::UpToIsomorphism); });
  m.def("obstructions", [](const std::string& predicate, std::size_t n_max) {
    return minimal_obstructions(predicate_or_throw(predicate), n_max).classes;
  }, py::arg("predicate"), py::arg("n_max"));
  m.def("oracle", [](const DiGraph& g, std::size_t max_extra) -> std::optional<DiGraph> {
    auto hit = oracle_preorder_expansion(g, max_extra);
    if (!hit) return std::nullopt;
    return hit->first;
  }, py::arg("graph"), py::arg("max_extra"));
  m.def("validate_json", [](std::size_t n_max, unsigned jobs) {
    py::gil_scoped_release release;
    return report_to_json(validate_theorems(n_max, jobs)).dump();
  }, py::arg("n_max"), py::arg("jobs") = 1);
}
