#include "pbpo/io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

#include "pbpo/bdd.hpp"
#include "pbpo/error.hpp"

namespace pbpo {

using json = nlohmann::json;

namespace {

// ---------------------------------------------------------------------------
// Diagnostics

struct Doc {
  std::string source;
  json root;
};

[[noreturn]] void fail(const Doc& doc, const std::string& path, const std::string& message) {
  throw Error(ErrorKind::parse_error, doc.source + ": " + path + ": " + message);
}

[[noreturn]] void dangling(const Doc& doc, const std::string& path, std::string_view kind, std::string_view name) {
  throw Error(ErrorKind::dangling_reference,
              doc.source + ": " + path + ": no " + std::string(kind) + " named '" + std::string(name) + "'");
}

// Rethrows a validator error with the location prepended.
template <class F>
auto located(const Doc& doc, const std::string& path, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::parse_error || e.kind() == ErrorKind::dangling_reference) throw;
    throw Error(e.kind(), doc.source + ": " + path + ": " + e.what());
  }
}

void allow_keys(const Doc& doc, const std::string& path, const json& j, std::initializer_list<std::string_view> keys) {
  if (!j.is_object()) fail(doc, path, "expected an object");
  for (const auto& [k, v] : j.items()) {
    bool known = false;
    for (auto key : keys) known = known || k == key;
    if (!known) fail(doc, path, "unknown field '" + k + "'");
  }
}

const json& field(const Doc& doc, const std::string& path, const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) fail(doc, path, std::string("missing field '") + key + "'");
  return *it;
}

std::string string_at(const Doc& doc, const std::string& path, const json& j) {
  if (!j.is_string()) fail(doc, path, "expected a string");
  return j.get<std::string>();
}

std::string string_field(const Doc& doc, const std::string& path, const json& j, const char* key) {
  return string_at(doc, path + "." + key, field(doc, path, j, key));
}

std::optional<std::string> optional_string(const Doc& doc, const std::string& path, const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  return string_at(doc, path + "." + key, *it);
}

std::vector<std::string> string_list(const Doc& doc, const std::string& path, const json& j) {
  if (!j.is_array()) fail(doc, path, "expected an array of strings");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(string_at(doc, path + "[" + std::to_string(i) + "]", j[i]));
  return out;
}

std::map<std::string, std::string> string_map(const Doc& doc, const std::string& path, const json& j) {
  if (!j.is_object()) fail(doc, path, "expected an object of strings");
  std::map<std::string, std::string> out;
  for (const auto& [k, v] : j.items()) out[k] = string_at(doc, path + "." + k, v);
  return out;
}

// ---------------------------------------------------------------------------
// Loading

class Loader {
 public:
  explicit Loader(Workspace& ws) : ws_(ws) {}

  void lattices(const Doc& doc) {
    for (const auto& [name, j] : section(doc, "lattices")) {
      const std::string path = "lattices." + name;
      unique(doc, path, ws_.lattices, name);
      ws_.lattices[name] = lattice_object(doc, path, j, name);
    }
  }

  void graphs(const Doc& doc) {
    for (const auto& [name, j] : section(doc, "graphs")) {
      const std::string path = "graphs." + name;
      unique(doc, path, ws_.graphs, name);
      ws_.graphs[name] = graph_object(doc, path, j);
    }
  }

  void morphisms(const Doc& doc) {
    for (const auto& [name, j] : section(doc, "morphisms")) {
      const std::string path = "morphisms." + name;
      unique(doc, path, ws_.morphisms, name);
      allow_keys(doc, path, j, {"dom", "cod", "nodeMap", "edgeMap"});
      auto dom = graph_ref(doc, path + ".dom", field(doc, path, j, "dom"));
      auto cod = graph_ref(doc, path + ".cod", field(doc, path, j, "cod"));
      ws_.morphisms.emplace(name, maps(doc, path, j, dom, cod));
    }
  }

  void rules(const Doc& doc) {
    for (const auto& [name, j] : section(doc, "rules")) {
      const std::string path = "rules." + name;
      unique(doc, path, ws_.rules, name);
      ws_.rules.emplace(name, rule_object(doc, path, j, name));
    }
  }

  void squares(const Doc& doc) {
    for (const auto& [name, j] : section(doc, "squares")) {
      const std::string path = "squares." + name;
      unique(doc, path, ws_.squares, name);
      const auto kind = string_field(doc, path, j, "kind");
      SquareSpec spec;
      if (kind == "pullback") {
        allow_keys(doc, path, j, {"kind", "toLeft", "toRight", "left", "right"});
        spec = {SquareSpec::Kind::pullback, string_field(doc, path, j, "toLeft"),
                string_field(doc, path, j, "toRight"), string_field(doc, path, j, "left"),
                string_field(doc, path, j, "right")};
      } else if (kind == "pushout") {
        allow_keys(doc, path, j, {"kind", "left", "right", "fromLeft", "fromRight"});
        spec = {SquareSpec::Kind::pushout, string_field(doc, path, j, "left"), string_field(doc, path, j, "right"),
                string_field(doc, path, j, "fromLeft"), string_field(doc, path, j, "fromRight")};
      } else {
        fail(doc, path + ".kind", "expected \"pullback\" or \"pushout\"");
      }
      for (const auto* m : {&spec.a, &spec.b, &spec.c, &spec.d})
        if (!ws_.morphisms.contains(*m)) dangling(doc, path, "morphism", *m);
      ws_.squares.emplace(name, spec);
      // Shape is checked here; commutation is left to the square check.
      located(doc, path, [&] {
        if (spec.kind == SquareSpec::Kind::pullback) {
          auto sq = ws_.pullback_square(name);
          if (!same_graph(sq.to_left.dom_ptr(), sq.to_right.dom_ptr()) ||
              !same_graph(sq.to_left.cod_ptr(), sq.cospan.left.dom_ptr()) ||
              !same_graph(sq.to_right.cod_ptr(), sq.cospan.right.dom_ptr()) ||
              !same_graph(sq.cospan.left.cod_ptr(), sq.cospan.right.cod_ptr()))
            throw Error(ErrorKind::invalid_cospan, "morphisms do not form a square");
        } else {
          auto sq = ws_.pushout_square(name);
          if (!same_graph(sq.span.left.dom_ptr(), sq.span.right.dom_ptr()) ||
              !same_graph(sq.span.left.cod_ptr(), sq.from_left.dom_ptr()) ||
              !same_graph(sq.span.right.cod_ptr(), sq.from_right.dom_ptr()) ||
              !same_graph(sq.from_left.cod_ptr(), sq.from_right.cod_ptr()))
            throw Error(ErrorKind::invalid_span, "morphisms do not form a square");
        }
        return 0;
      });
    }
  }

 private:
  static json::object_t section(const Doc& doc, const char* key) {
    auto it = doc.root.find(key);
    if (it == doc.root.end()) return {};
    if (!it->is_object()) fail(doc, key, "expected an object of named entries");
    return it->get<json::object_t>();
  }

  template <class Map>
  static void unique(const Doc& doc, const std::string& path, const Map& map, const std::string& name) {
    if (map.contains(name)) fail(doc, path, "name already defined");
  }

  LatticePtr lattice_object(const Doc& doc, const std::string& path, const json& j, const std::string& name) {
    if (!j.is_object()) fail(doc, path, "expected a lattice object");
    if (j.contains("bdd")) {
      allow_keys(doc, path, j, {"bdd"});
      auto vars = string_list(doc, path + ".bdd", j["bdd"]);
      return located(doc, path, [&] { return bdd_lattice_for(vars); });
    }
    allow_keys(doc, path, j, {"elements", "order", "top", "bottom"});
    auto elements = string_list(doc, path + ".elements", field(doc, path, j, "elements"));
    std::vector<std::pair<std::string, std::string>> order;
    if (auto it = j.find("order"); it != j.end()) {
      if (!it->is_array()) fail(doc, path + ".order", "expected an array of [a, b] pairs");
      for (std::size_t i = 0; i < it->size(); ++i) {
        const auto p = path + ".order[" + std::to_string(i) + "]";
        auto pair = string_list(doc, p, (*it)[i]);
        if (pair.size() != 2) fail(doc, p, "expected a pair [a, b]");
        order.emplace_back(pair[0], pair[1]);
      }
    }
    auto top = string_field(doc, path, j, "top");
    auto bottom = string_field(doc, path, j, "bottom");
    return located(doc, path, [&]() -> LatticePtr {
      auto lat = std::make_shared<const LabelLattice>(name, std::move(elements), order, top, bottom);
      auto report = validate_lattice(*lat);
      if (!report.ok()) throw Error(ErrorKind::not_a_lattice, report.to_string());
      return lat;
    });
  }

  LatticePtr lattice_ref(const Doc& doc, const std::string& path, const json& j, const std::string& inline_name) {
    if (j.is_string()) {
      const auto name = j.get<std::string>();
      if (auto it = ws_.lattices.find(name); it != ws_.lattices.end()) return it->second;
      if (name == "unit") return unit_lattice();
      dangling(doc, path, "lattice", name);
    }
    return lattice_object(doc, path, j, inline_name);
  }

  GraphPtr graph_object(const Doc& doc, const std::string& path, const json& j) {
    allow_keys(doc, path, j, {"lattice", "nodes", "edges"});
    auto lat = lattice_ref(doc, path + ".lattice", field(doc, path, j, "lattice"), path + ".lattice");
    GraphRecord record;
    if (auto it = j.find("nodes"); it != j.end()) {
      if (!it->is_array()) fail(doc, path + ".nodes", "expected an array");
      for (std::size_t i = 0; i < it->size(); ++i) {
        const auto p = path + ".nodes[" + std::to_string(i) + "]";
        const auto& n = (*it)[i];
        allow_keys(doc, p, n, {"id", "label"});
        record.nodes.push_back({string_field(doc, p, n, "id"), optional_string(doc, p, n, "label")});
      }
    }
    if (auto it = j.find("edges"); it != j.end()) {
      if (!it->is_array()) fail(doc, path + ".edges", "expected an array");
      for (std::size_t i = 0; i < it->size(); ++i) {
        const auto p = path + ".edges[" + std::to_string(i) + "]";
        const auto& e = (*it)[i];
        allow_keys(doc, p, e, {"id", "src", "tgt", "label"});
        record.edges.push_back({string_field(doc, p, e, "id"), string_field(doc, p, e, "src"),
                                string_field(doc, p, e, "tgt"), optional_string(doc, p, e, "label")});
      }
    }
    return located(doc, path, [&] { return share(LabeledGraph::from_record(record, lat)); });
  }

  GraphPtr graph_ref(const Doc& doc, const std::string& path, const json& j) {
    if (j.is_string()) {
      const auto name = j.get<std::string>();
      auto it = ws_.graphs.find(name);
      if (it == ws_.graphs.end()) dangling(doc, path, "graph", name);
      return it->second;
    }
    return graph_object(doc, path, j);
  }

  GraphMorphism maps(const Doc& doc, const std::string& path, const json& j, const GraphPtr& dom,
                     const GraphPtr& cod) {
    auto nodes = string_map(doc, path + ".nodeMap", field(doc, path, j, "nodeMap"));
    std::map<std::string, std::string> edges;
    if (auto it = j.find("edgeMap"); it != j.end()) edges = string_map(doc, path + ".edgeMap", *it);
    return located(doc, path, [&] {
      auto f = GraphMorphism::from_ids(dom, cod, nodes, edges);
      auto report = validate_morphism(f);
      if (!report.ok()) throw Error(ErrorKind::invalid_morphism, report.to_string());
      return f;
    });
  }

  PbpoRule rule_object(const Doc& doc, const std::string& path, const json& j, const std::string& name) {
    allow_keys(doc, path, j, {"L", "K", "R", "Lp", "Kp", "l", "r", "tL", "tK", "lp", "rSpec"});
    const bool reduced = j.contains("rSpec");
    std::map<std::string, GraphPtr> graphs;
    for (const char* g : {"L", "K", "R", "Lp", "Kp"})
      if (auto it = j.find(g); it != j.end()) graphs[g] = graph_ref(doc, path + "." + g, *it);

    // Named morphisms fix their end graphs; inline ones take them from the rule.
    struct Shape {
      const char* field;
      const char* dom;
      const char* cod;
    };
    const std::vector<Shape> shapes =
        reduced ? std::vector<Shape>{{"tL", "L", "Lp"}, {"lp", "Kp", "Lp"}}
                : std::vector<Shape>{{"l", "K", "L"}, {"r", "K", "R"}, {"tL", "L", "Lp"}, {"tK", "K", "Kp"},
                                     {"lp", "Kp", "Lp"}};
    auto adopt = [&](const std::string& p, const char* g, const GraphPtr& actual) {
      auto [it, fresh] = graphs.emplace(g, actual);
      if (!fresh && !same_graph(it->second, actual))
        throw Error(ErrorKind::invalid_rule, doc.source + ": " + p + ": does not agree with graph " + g);
    };
    for (const auto& s : shapes) {
      const auto& v = field(doc, path, j, s.field);
      if (v.is_string()) {
        auto it = ws_.morphisms.find(v.get<std::string>());
        if (it == ws_.morphisms.end()) dangling(doc, path + "." + s.field, "morphism", v.get<std::string>());
        const auto& f = it->second;
        adopt(path + "." + s.field, s.dom, f.dom_ptr());
        adopt(path + "." + s.field, s.cod, f.cod_ptr());
      }
    }
    std::map<std::string, GraphMorphism> ms;
    for (const auto& s : shapes) {
      const auto p = path + "." + s.field;
      const auto& v = j[s.field];
      if (v.is_string()) {
        auto it = ws_.morphisms.find(v.get<std::string>());
        if (it == ws_.morphisms.end()) dangling(doc, p, "morphism", v.get<std::string>());
        ms.emplace(s.field, it->second);
        continue;
      }
      allow_keys(doc, p, v, {"nodeMap", "edgeMap"});
      for (const char* g : {s.dom, s.cod})
        if (!graphs.contains(g)) fail(doc, path, std::string("missing field '") + g + "'");
      ms.emplace(s.field, maps(doc, p, v, graphs[s.dom], graphs[s.cod]));
    }

    if (reduced) {
      auto spec = rspec(doc, path + ".rSpec", j["rSpec"]);
      return located(doc, path, [&] { return complete_rule(name, ms.at("tL"), ms.at("lp"), spec); });
    }
    return located(doc, path, [&] {
      PbpoRule rule{name, ms.at("l"), ms.at("r"), ms.at("tL"), ms.at("tK"), ms.at("lp")};
      auto report = validate_rule(rule);
      if (!report.ok()) throw Error(ErrorKind::invalid_rule, report.to_string());
      return rule;
    });
  }

  RSpec rspec(const Doc& doc, const std::string& path, const json& j) {
    allow_keys(doc, path, j, {"nodeMerges", "edgeMerges", "freshNodes", "freshEdges", "nodeLabels", "edgeLabels"});
    RSpec spec;
    auto merges = [&](const char* key, std::vector<RSpec::Merge>& out) {
      auto it = j.find(key);
      if (it == j.end()) return;
      if (!it->is_array()) fail(doc, path + "." + key, "expected an array");
      for (std::size_t i = 0; i < it->size(); ++i) {
        const auto p = path + "." + key + "[" + std::to_string(i) + "]";
        allow_keys(doc, p, (*it)[i], {"into", "members"});
        out.push_back({string_field(doc, p, (*it)[i], "into"),
                       string_list(doc, p + ".members", field(doc, p, (*it)[i], "members"))});
      }
    };
    merges("nodeMerges", spec.node_merges);
    merges("edgeMerges", spec.edge_merges);
    if (auto it = j.find("freshNodes"); it != j.end()) {
      if (!it->is_array()) fail(doc, path + ".freshNodes", "expected an array");
      for (std::size_t i = 0; i < it->size(); ++i) {
        const auto p = path + ".freshNodes[" + std::to_string(i) + "]";
        allow_keys(doc, p, (*it)[i], {"id", "label"});
        spec.fresh_nodes.push_back({string_field(doc, p, (*it)[i], "id"), optional_string(doc, p, (*it)[i], "label")});
      }
    }
    if (auto it = j.find("freshEdges"); it != j.end()) {
      if (!it->is_array()) fail(doc, path + ".freshEdges", "expected an array");
      for (std::size_t i = 0; i < it->size(); ++i) {
        const auto p = path + ".freshEdges[" + std::to_string(i) + "]";
        const auto& e = (*it)[i];
        allow_keys(doc, p, e, {"id", "src", "tgt", "label"});
        spec.fresh_edges.push_back({string_field(doc, p, e, "id"), string_field(doc, p, e, "src"),
                                    string_field(doc, p, e, "tgt"), optional_string(doc, p, e, "label")});
      }
    }
    if (auto it = j.find("nodeLabels"); it != j.end()) spec.node_labels = string_map(doc, path + ".nodeLabels", *it);
    if (auto it = j.find("edgeLabels"); it != j.end()) spec.edge_labels = string_map(doc, path + ".edgeLabels", *it);
    return spec;
  }

  Workspace& ws_;
};

Doc parse_doc(std::string_view text, std::string_view source) {
  Doc doc{std::string(source), {}};
  try {
    doc.root = json::parse(text);
  } catch (const json::parse_error& e) {
    // Turn the byte offset into line:column.
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::string what = e.what();
    if (auto pos = what.find("syntax error"); pos != std::string::npos) what = what.substr(pos);
    throw Error(ErrorKind::parse_error,
                doc.source + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " + what);
  }
  allow_keys(doc, "<top>", doc.root, {"lattices", "graphs", "morphisms", "rules", "squares"});
  return doc;
}

Workspace load(const std::vector<Doc>& docs) {
  Workspace ws;
  Loader loader(ws);
  for (const auto& d : docs) loader.lattices(d);
  for (const auto& d : docs) loader.graphs(d);
  for (const auto& d : docs) loader.morphisms(d);
  for (const auto& d : docs) loader.rules(d);
  for (const auto& d : docs) loader.squares(d);
  return ws;
}

// ---------------------------------------------------------------------------
// Writing

json lattice_json(const LabelLattice& lat) {
  if (lat.is_bdd_lattice()) return {{"bdd", lat.bdd_variables()}};
  json order = json::array();
  for (const auto& [a, b] : lat.covering_pairs()) order.push_back({a, b});
  return {{"elements", lat.elements()},
          {"order", order},
          {"top", lat.element(lat.top())},
          {"bottom", lat.element(lat.bottom())}};
}

// How a graph refers to its lattice: a workspace name when one matches.
json lattice_reference(const LabelLattice& lat, const Workspace* ws) {
  if (ws)
    for (const auto& [name, l] : ws->lattices)
      if (*l == lat) return name;
  if (lat == *unit_lattice()) return "unit";
  return lattice_json(lat);
}

json graph_json(const LabeledGraph& g, const json& lattice) {
  const auto& lat = g.lattice();
  json nodes = json::array(), edges = json::array();
  for (const auto& n : g.nodes()) nodes.push_back({{"id", n.id}, {"label", lat.element(n.label)}});
  for (const auto& e : g.edges())
    edges.push_back({{"id", e.id},
                     {"src", g.node(e.src).id},
                     {"tgt", g.node(e.tgt).id},
                     {"label", lat.element(e.label)}});
  return {{"lattice", lattice}, {"nodes", nodes}, {"edges", edges}};
}

json maps_json(const GraphMorphism& f) {
  json nodes = json::object(), edges = json::object();
  for (const auto& [k, v] : f.node_id_map()) nodes[k] = v;
  for (const auto& [k, v] : f.edge_id_map()) edges[k] = v;
  return {{"nodeMap", nodes}, {"edgeMap", edges}};
}

// Name of a workspace graph equal to g, if any.
std::optional<std::string> graph_name(const Workspace& ws, const GraphPtr& g) {
  for (const auto& [name, h] : ws.graphs)
    if (h == g) return name;
  for (const auto& [name, h] : ws.graphs)
    if (same_graph(h, g)) return name;
  return std::nullopt;
}

json graph_reference(const Workspace& ws, const GraphPtr& g) {
  if (auto name = graph_name(ws, g)) return *name;
  return graph_json(*g, lattice_reference(g->lattice(), &ws));
}

}  // namespace

// ---------------------------------------------------------------------------

LatticePtr Workspace::lattice(std::string_view name) const {
  auto it = lattices.find(std::string(name));
  if (it == lattices.end()) throw Error(ErrorKind::dangling_reference, "no lattice named '" + std::string(name) + "'");
  return it->second;
}

GraphPtr Workspace::graph(std::string_view name) const {
  auto it = graphs.find(std::string(name));
  if (it == graphs.end()) throw Error(ErrorKind::dangling_reference, "no graph named '" + std::string(name) + "'");
  return it->second;
}

const GraphMorphism& Workspace::morphism(std::string_view name) const {
  auto it = morphisms.find(std::string(name));
  if (it == morphisms.end())
    throw Error(ErrorKind::dangling_reference, "no morphism named '" + std::string(name) + "'");
  return it->second;
}

const PbpoRule& Workspace::rule(std::string_view name) const {
  auto it = rules.find(std::string(name));
  if (it == rules.end()) throw Error(ErrorKind::dangling_reference, "no rule named '" + std::string(name) + "'");
  return it->second;
}

const SquareSpec& Workspace::square(std::string_view name) const {
  auto it = squares.find(std::string(name));
  if (it == squares.end()) throw Error(ErrorKind::dangling_reference, "no square named '" + std::string(name) + "'");
  return it->second;
}

PullbackSquare Workspace::pullback_square(std::string_view name) const {
  const auto& s = square(name);
  if (s.kind != SquareSpec::Kind::pullback)
    throw Error(ErrorKind::invalid_cospan, "square '" + std::string(name) + "' is a pushout square");
  return {morphism(s.a), morphism(s.b), {morphism(s.c), morphism(s.d)}};
}

PushoutSquare Workspace::pushout_square(std::string_view name) const {
  const auto& s = square(name);
  if (s.kind != SquareSpec::Kind::pushout)
    throw Error(ErrorKind::invalid_span, "square '" + std::string(name) + "' is a pullback square");
  return {{morphism(s.a), morphism(s.b)}, morphism(s.c), morphism(s.d)};
}

bool Workspace::operator==(const Workspace& other) const {
  auto keys_equal = [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return false;
    for (auto ia = a.begin(), ib = b.begin(); ia != a.end(); ++ia, ++ib)
      if (ia->first != ib->first) return false;
    return true;
  };
  if (!keys_equal(lattices, other.lattices) || !keys_equal(graphs, other.graphs) ||
      !keys_equal(morphisms, other.morphisms) || !keys_equal(rules, other.rules) || squares != other.squares)
    return false;
  for (const auto& [k, v] : lattices)
    if (!(*v == *other.lattices.at(k))) return false;
  for (const auto& [k, v] : graphs)
    if (!same_graph(v, other.graphs.at(k))) return false;
  for (const auto& [k, v] : morphisms)
    if (!(v == other.morphisms.at(k))) return false;
  for (const auto& [k, v] : rules) {
    const auto& o = other.rules.at(k);
    if (v.name != o.name || !(v.l == o.l) || !(v.r == o.r) || !(v.tL == o.tL) || !(v.tK == o.tK) || !(v.lp == o.lp))
      return false;
  }
  return true;
}

Workspace parse_workspace_text(std::string_view text, std::string_view source) {
  return load({parse_doc(text, source)});
}

Workspace parse_workspace(std::span<const std::filesystem::path> paths) {
  std::vector<Doc> docs;
  for (const auto& p : paths) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw Error(ErrorKind::parse_error, p.string() + ": cannot open file");
    std::ostringstream text;
    text << in.rdbuf();
    docs.push_back(parse_doc(text.str(), p.string()));
  }
  return load(docs);
}

Workspace parse_workspace(const std::filesystem::path& path) { return parse_workspace(std::span(&path, 1)); }

std::string serialize(const Workspace& ws) {
  json root = json::object();
  if (!ws.lattices.empty()) {
    json& out = root["lattices"] = json::object();
    for (const auto& [name, lat] : ws.lattices) out[name] = lattice_json(*lat);
  }
  if (!ws.graphs.empty()) {
    json& out = root["graphs"] = json::object();
    for (const auto& [name, g] : ws.graphs) out[name] = graph_json(*g, lattice_reference(g->lattice(), &ws));
  }
  if (!ws.morphisms.empty()) {
    json& out = root["morphisms"] = json::object();
    for (const auto& [name, f] : ws.morphisms) {
      auto dom = graph_name(ws, f.dom_ptr()), cod = graph_name(ws, f.cod_ptr());
      if (!dom || !cod)
        throw Error(ErrorKind::dangling_reference, "morphism '" + name + "' has an end graph outside the workspace");
      json j = maps_json(f);
      j["dom"] = *dom;
      j["cod"] = *cod;
      out[name] = j;
    }
  }
  if (!ws.rules.empty()) {
    json& out = root["rules"] = json::object();
    for (const auto& [name, rule] : ws.rules) {
      json j;
      j["L"] = graph_reference(ws, rule.L());
      j["K"] = graph_reference(ws, rule.K());
      j["R"] = graph_reference(ws, rule.R());
      j["Lp"] = graph_reference(ws, rule.Lp());
      j["Kp"] = graph_reference(ws, rule.Kp());
      j["l"] = maps_json(rule.l);
      j["r"] = maps_json(rule.r);
      j["tL"] = maps_json(rule.tL);
      j["tK"] = maps_json(rule.tK);
      j["lp"] = maps_json(rule.lp);
      out[name] = j;
    }
  }
  if (!ws.squares.empty()) {
    json& out = root["squares"] = json::object();
    for (const auto& [name, s] : ws.squares) {
      if (s.kind == SquareSpec::Kind::pullback)
        out[name] = {{"kind", "pullback"}, {"toLeft", s.a}, {"toRight", s.b}, {"left", s.c}, {"right", s.d}};
      else
        out[name] = {{"kind", "pushout"}, {"left", s.a}, {"right", s.b}, {"fromLeft", s.c}, {"fromRight", s.d}};
    }
  }
  return root.dump(2) + "\n";
}

std::string serialize_graph(const LabeledGraph& g, std::string_view lattice_name) {
  json lattice = lattice_name.empty() ? lattice_reference(g.lattice(), nullptr) : json(std::string(lattice_name));
  return graph_json(g, lattice).dump(2) + "\n";
}

std::string serialize_morphism(const GraphMorphism& f, std::string_view dom_name, std::string_view cod_name) {
  json j = maps_json(f);
  j["dom"] = std::string(dom_name);
  j["cod"] = std::string(cod_name);
  return j.dump(2) + "\n";
}

std::string serialize_trace(const RewriteTrace& t) {
  Workspace ws;
  ws.lattices["lattice"] = t.rule.L()->lattice_ptr();
  const std::pair<const char*, GraphPtr> graphs[] = {{"L", t.rule.L()},   {"K", t.rule.K()},  {"R", t.rule.R()},
                                                     {"Lp", t.rule.Lp()}, {"Kp", t.rule.Kp()}, {"GL", t.GL()},
                                                     {"GK", t.GK()},      {"GR", t.GR()}};
  for (const auto& [name, g] : graphs) ws.graphs[name] = g;
  const std::pair<const char*, const GraphMorphism*> morphisms[] = {
      {"l", &t.rule.l}, {"r", &t.rule.r},   {"tL", &t.rule.tL}, {"tK", &t.rule.tK}, {"lp", &t.rule.lp},
      {"m", &t.m},      {"alpha", &t.alpha}, {"gL", &t.gL},      {"up", &t.up},      {"u", &t.u},
      {"gR", &t.gR},    {"w", &t.w}};
  for (const auto& [name, f] : morphisms) ws.morphisms.emplace(name, *f);
  return serialize(ws);
}

Workspace bdd_workspace(const GraphPtr& g, std::string_view graph_name) {
  Workspace ws;
  ws.lattices["bdd"] = g->lattice_ptr();
  ws.graphs[std::string(graph_name)] = g;
  return ws;
}

}  // namespace pbpo
