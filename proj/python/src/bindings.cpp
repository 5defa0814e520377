#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "pbpo/bdd.hpp"
#include "pbpo/dot.hpp"
#include "pbpo/error.hpp"
#include "pbpo/io.hpp"
#include "pbpo/limits.hpp"
#include "pbpo/matching.hpp"
#include "pbpo/rewrite.hpp"

namespace py = pybind11;
using namespace pbpo;

namespace {

py::list report_list(const ValidationReport& report) {
  py::list out;
  for (const auto& v : report.violations()) out.append(py::make_tuple(v.kind, v.subject, v.message));
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "PBPO+ rewriting over lattice-labeled graphs and BDD reduction";

  static py::exception<Error> error(m, "PbpoError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = py::reinterpret_borrow<py::object>(error.ptr())(e.what());
      exc.attr("kind") = std::string(to_string(e.kind()));
      PyErr_SetObject(error.ptr(), exc.ptr());
    }
  });

  py::class_<LabelLattice, std::shared_ptr<LabelLattice>>(m, "Lattice")
      .def_property_readonly("name", &LabelLattice::name)
      .def_property_readonly("elements", &LabelLattice::elements)
      .def("leq", py::overload_cast<std::string_view, std::string_view>(&LabelLattice::leq, py::const_))
      .def("join", [](const LabelLattice& l, const std::string& a, const std::string& b) {
        return l.element(l.join(l.at(a), l.at(b)));
      })
      .def("meet", [](const LabelLattice& l, const std::string& a, const std::string& b) {
        return l.element(l.meet(l.at(a), l.at(b)));
      })
      .def("validate", [](const LabelLattice& l) { return report_list(validate_lattice(l)); });
  m.def("bdd_lattice", [](const std::vector<std::string>& vars) {
    return std::const_pointer_cast<LabelLattice>(bdd_lattice(vars));
  });
  m.def("unit_lattice", [] { return std::const_pointer_cast<LabelLattice>(unit_lattice()); });

  py::class_<LabeledGraph, std::shared_ptr<LabeledGraph>>(m, "Graph")
      .def_property_readonly("node_count", &LabeledGraph::node_count)
      .def_property_readonly("edge_count", &LabeledGraph::edge_count)
      .def_property_readonly("nodes",
                             [](const LabeledGraph& g) {
                               std::vector<std::pair<std::string, std::string>> out;
                               for (const auto& n : g.nodes()) out.emplace_back(n.id, g.lattice().element(n.label));
                               return out;
                             })
      .def_property_readonly("edges",
                             [](const LabeledGraph& g) {
                               std::vector<std::tuple<std::string, std::string, std::string, std::string>> out;
                               for (const auto& e : g.edges())
                                 out.emplace_back(e.id, g.node(e.src).id, g.node(e.tgt).id,
                                                  g.lattice().element(e.label));
                               return out;
                             })
      .def("to_json", [](const LabeledGraph& g) { return serialize_graph(g); })
      .def("to_dot", [](const LabeledGraph& g, std::string_view name) { return emit_dot(g, name); },
           py::arg("name") = "G")
      .def("__eq__", [](const LabeledGraph& a, const LabeledGraph& b) { return a == b; });

  auto mut = [](const GraphPtr& g) { return std::const_pointer_cast<LabeledGraph>(g); };
  m.def("is_isomorphic", [](const std::shared_ptr<LabeledGraph>& a, const std::shared_ptr<LabeledGraph>& b) {
    return is_isomorphic(a, b).has_value();
  });

  py::class_<PbpoRule>(m, "Rule")
      .def_readonly("name", &PbpoRule::name)
      .def("validate", [](const PbpoRule& r) { return report_list(validate_rule(r)); });

  py::class_<Match>(m, "Match")
      .def_property_readonly("node_map", [](const Match& x) { return x.m.node_id_map(); })
      .def_property_readonly("adherence", [](const Match& x) { return x.alpha.node_id_map(); });

  m.def("find_matches", [](const PbpoRule& rule, const std::shared_ptr<LabeledGraph>& g, bool exhaustive) {
    return find_matches(rule, g, exhaustive ? MatchSearch::exhaustive : MatchSearch::pruned);
  }, py::arg("rule"), py::arg("graph"), py::arg("exhaustive") = false);
  m.def("apply", [mut](const PbpoRule& rule, const Match& match) { return mut(pbpo_step(rule, match).result); });
  m.def("normalize", [mut](const std::shared_ptr<LabeledGraph>& g, const std::vector<PbpoRule>& rules,
                           std::size_t max_steps) {
    auto r = normalize(g, rules, Strategy::first_rule_first_match, max_steps);
    return py::make_tuple(mut(r.graph), r.steps.size(), r.fixpoint);
  }, py::arg("graph"), py::arg("rules"), py::arg("max_steps") = 10000);

  py::class_<Workspace>(m, "Workspace")
      .def_property_readonly("graph_names",
                             [](const Workspace& w) {
                               std::vector<std::string> out;
                               for (const auto& [k, v] : w.graphs) out.push_back(k);
                               return out;
                             })
      .def_property_readonly("rule_names",
                             [](const Workspace& w) {
                               std::vector<std::string> out;
                               for (const auto& [k, v] : w.rules) out.push_back(k);
                               return out;
                             })
      .def("graph", [mut](const Workspace& w, std::string_view n) { return mut(w.graph(n)); })
      .def("rule", &Workspace::rule)
      .def("check_square",
           [](const Workspace& w, std::string_view name, bool exhaustive) {
             const auto mode = exhaustive ? Verification::exhaustive : Verification::canonical;
             return w.square(name).kind == SquareSpec::Kind::pullback
                        ? is_pullback_square(w.pullback_square(name), mode)
                        : is_pushout_square(w.pushout_square(name), mode);
           },
           py::arg("name"), py::arg("exhaustive") = false)
      .def("serialize", [](const Workspace& w) { return serialize(w); })
      .def("__eq__", [](const Workspace& a, const Workspace& b) { return a == b; });
  m.def("load", [](const std::filesystem::path& p) { return parse_workspace(p); });
  m.def("loads", [](std::string_view text) { return parse_workspace_text(text); });

  py::class_<Bdd>(m, "Bdd")
      .def_property_readonly("graph", [mut](const Bdd& b) { return mut(b.graph); })
      .def_readonly("root", &Bdd::root)
      .def_readonly("vars", &Bdd::vars)
      .def("evaluate", [](const Bdd& b, const std::map<std::string, bool>& a) { return evaluate(b, a); })
      .def("is_reduced", [](const Bdd& b) { return is_reduced(b).reduced; });
  m.def("decision_tree", [](const std::string& bits, const std::vector<std::string>& vars) {
    return build_decision_tree(TruthTable::parse(bits, vars));
  });
  m.def("reduce", [](const Bdd& b) {
    auto r = reduce_bdd(b);
    return py::make_tuple(r.bdd, r.steps.size());
  });
  m.def("oracle_reduce", [](const std::string& bits, const std::vector<std::string>& vars) {
    return oracle_reduce(TruthTable::parse(bits, vars));
  });
  m.def("validate_bdd", [](const std::shared_ptr<LabeledGraph>& g) { return report_list(validate_bdd(*g)); });
  m.def("bdd_reduction_rules", [](const std::vector<std::string>& vars) {
    return bdd_reduction_rules(bdd_lattice_for(vars));
  });
}
