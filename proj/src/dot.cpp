#include "pbpo/dot.hpp"

#include <sstream>

namespace pbpo {

namespace {

// DOT double-quoted string.
std::string quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    out += c;
  }
  return out + "\"";
}

void body(std::ostream& os, const LabeledGraph& g, const std::string& prefix, const std::string& indent) {
  const auto& lat = g.lattice();
  const bool bdd = lat.is_bdd_lattice();
  for (const auto& n : g.nodes())
    os << indent << quote(prefix + n.id) << " [label=" << quote(n.id + " : " + lat.element(n.label)) << "];\n";
  for (const auto& e : g.edges()) {
    os << indent << quote(prefix + g.node(e.src).id) << " -> " << quote(prefix + g.node(e.tgt).id) << " [";
    const auto& label = lat.element(e.label);
    if (bdd && (label == bdd_labels::zero || label == bdd_labels::one))
      os << "style=" << (label == bdd_labels::zero ? "dashed" : "solid");
    else
      os << "label=" << quote(label);
    os << ", id=" << quote(prefix + e.id) << "];\n";
  }
}

}  // namespace

std::string emit_dot(const LabeledGraph& g, std::string_view name) {
  std::ostringstream os;
  os << "digraph " << quote(name) << " {\n";
  body(os, g, "", "  ");
  os << "}\n";
  return os.str();
}

std::string emit_dot(const RewriteTrace& t) {
  struct Object {
    const char* key;
    const char* title;
    const GraphPtr* graph;
  };
  const Object objects[] = {{"L", "L", &t.rule.L()},      {"K", "K", &t.rule.K()},    {"R", "R", &t.rule.R()},
                            {"Lp", "L'", &t.rule.Lp()},   {"Kp", "K'", &t.rule.Kp()}, {"GL", "G_L", &t.GL()},
                            {"GK", "G_K", &t.GK()},       {"GR", "G_R", &t.GR()}};
  std::ostringstream os;
  os << "digraph " << quote(t.rule.name + " step " + std::to_string(t.step_index)) << " {\n";
  os << "  compound=true;\n";
  for (const auto& o : objects) {
    os << "  subgraph " << quote(std::string("cluster_") + o.key) << " {\n";
    os << "    label=" << quote(o.title) << ";\n";
    body(os, **o.graph, std::string(o.key) + "/", "    ");
    os << "  }\n";
  }
  struct Arrow {
    const char* name;
    const GraphMorphism* f;
    const char* from;
    const char* to;
  };
  const Arrow arrows[] = {{"l", &t.rule.l, "K", "L"},     {"r", &t.rule.r, "K", "R"},
                          {"tL", &t.rule.tL, "L", "Lp"},  {"tK", &t.rule.tK, "K", "Kp"},
                          {"lp", &t.rule.lp, "Kp", "Lp"}, {"m", &t.m, "L", "GL"},
                          {"alpha", &t.alpha, "GL", "Lp"}, {"gL", &t.gL, "GK", "GL"},
                          {"up", &t.up, "GK", "Kp"},      {"u", &t.u, "K", "GK"},
                          {"gR", &t.gR, "GK", "GR"},      {"w", &t.w, "R", "GR"}};
  for (const auto& a : arrows) {
    const auto& f = *a.f;
    for (Index v = 0; v < f.dom().node_count(); ++v)
      os << "  " << quote(std::string(a.from) + "/" + f.dom().node(v).id) << " -> "
         << quote(std::string(a.to) + "/" + f.cod().node(f.node(v)).id) << " [style=dotted, constraint=false, label="
         << quote(a.name) << "];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace pbpo
