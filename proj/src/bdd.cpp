#include "pbpo/bdd.hpp"

#include <algorithm>
#include <mutex>
#include <set>
#include <tuple>
#include <unordered_map>

#include "pbpo/error.hpp"

namespace pbpo {

namespace labels = bdd_labels;

TruthTable TruthTable::parse(std::string_view bits, const std::vector<std::string>& vars) {
  if (vars.size() > max_variables)
    throw Error(ErrorKind::too_many_variables, std::to_string(vars.size()) + " variables (at most 16)");
  const std::size_t expected = std::size_t{1} << vars.size();
  if (bits.size() != expected)
    throw Error(ErrorKind::parse_error, "truth table over " + std::to_string(vars.size()) + " variables needs " +
                                           std::to_string(expected) + " bits, got " + std::to_string(bits.size()));
  TruthTable t{vars, {}};
  for (char c : bits) {
    if (c != '0' && c != '1') throw Error(ErrorKind::parse_error, "truth table bits must be 0 or 1");
    t.outputs.push_back(c == '1');
  }
  return t;
}

std::string TruthTable::bits() const {
  std::string s;
  for (bool b : outputs) s += b ? '1' : '0';
  return s;
}

LatticePtr bdd_lattice_for(const std::vector<std::string>& vars) {
  static std::mutex mutex;
  static std::map<std::vector<std::string>, LatticePtr> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(vars);
  if (it != cache.end()) return it->second;
  auto lat = vars.empty() ? constant_bdd_lattice() : bdd_lattice(vars);
  cache.emplace(vars, lat);
  return lat;
}

namespace {

bool is_bool_label(const LabelLattice& lat, Label l) {
  return lat.element(l) == labels::zero || lat.element(l) == labels::one;
}

bool is_variable_label(const LabelLattice& lat, Label l) {
  const auto& vars = lat.bdd_variables();
  return std::find(vars.begin(), vars.end(), lat.element(l)) != vars.end();
}

// Kahn order; empty optional when the graph has a cycle.
std::optional<std::vector<Index>> topological_order(const LabeledGraph& g) {
  std::vector<std::size_t> indeg(g.node_count());
  for (Index v = 0; v < g.node_count(); ++v) indeg[v] = g.in_edges(v).size();
  std::vector<Index> order, ready;
  for (Index v = g.node_count(); v-- > 0;)
    if (indeg[v] == 0) ready.push_back(v);
  while (!ready.empty()) {
    Index v = ready.back();
    ready.pop_back();
    order.push_back(v);
    for (auto e : g.out_edges(v))
      if (--indeg[g.edge(e).tgt] == 0) ready.push_back(g.edge(e).tgt);
  }
  if (order.size() != g.node_count()) return std::nullopt;
  return order;
}

std::optional<Index> child(const LabeledGraph& g, Index v, std::string_view branch) {
  for (auto e : g.out_edges(v))
    if (g.lattice().element(g.edge(e).label) == branch) return g.edge(e).tgt;
  return std::nullopt;
}

}  // namespace

ValidationReport validate_bdd(const LabeledGraph& g, const std::optional<std::string>& root_hint) {
  ValidationReport report;
  const auto& lat = g.lattice();
  if (!lat.is_bdd_lattice()) {
    report.add("lattice", lat.name(), "BDDs must be labeled from a BDD lattice");
    return report;
  }
  std::vector<Index> roots;
  for (Index v = 0; v < g.node_count(); ++v)
    if (g.in_edges(v).empty()) roots.push_back(v);
  if (roots.size() != 1) {
    report.add("single-root", "", std::to_string(roots.size()) + " nodes without incoming edges");
  } else if (root_hint && g.node(roots.front()).id != *root_hint) {
    report.add("single-root", *root_hint, "the root is '" + g.node(roots.front()).id + "'");
  }
  for (const auto& e : g.edges())
    if (!is_bool_label(lat, e.label)) report.add("edge-label", e.id, "edge labeled '" + lat.element(e.label) + "'");
  for (Index v = 0; v < g.node_count(); ++v) {
    const auto& n = g.node(v);
    const auto out = g.out_edges(v);
    if (out.empty()) {
      if (!is_bool_label(lat, n.label)) report.add("leaf-label", n.id, "leaf labeled '" + lat.element(n.label) + "'");
      continue;
    }
    if (!is_variable_label(lat, n.label))
      report.add("internal-label", n.id, "internal node labeled '" + lat.element(n.label) + "'");
    std::size_t zeros = 0, ones = 0;
    for (auto e : out) {
      const auto& l = lat.element(g.edge(e).label);
      zeros += l == labels::zero;
      ones += l == labels::one;
    }
    if (out.size() != 2 || zeros != 1 || ones != 1)
      report.add("out-degree", n.id, "internal node needs exactly one 0-edge and one 1-edge");
  }
  auto order = topological_order(g);
  if (!order) {
    report.add("cycle", "", "graph is not acyclic");
    return report;
  }
  // Labels reachable strictly below each node, children first.
  std::vector<std::vector<char>> below(g.node_count(), std::vector<char>(lat.size(), 0));
  for (auto it = order->rbegin(); it != order->rend(); ++it) {
    const Index v = *it;
    for (auto e : g.out_edges(v)) {
      const Index c = g.edge(e).tgt;
      auto& mine = below[v];
      const auto& theirs = below[c];
      for (std::size_t i = 0; i < mine.size(); ++i) mine[i] |= theirs[i];
      mine[g.node(c).label.index] = 1;
    }
    const auto& n = g.node(v);
    if (is_variable_label(lat, n.label) && below[v][n.label.index])
      report.add("repeated-variable", n.id, "variable '" + lat.element(n.label) + "' repeats below this node");
  }
  return report;
}

Bdd Bdd::from_graph(GraphPtr graph) {
  auto report = validate_bdd(*graph);
  if (!report.ok()) throw Error(ErrorKind::invalid_bdd, report.to_string());
  std::string root;
  for (Index v = 0; v < graph->node_count(); ++v)
    if (graph->in_edges(v).empty()) root = graph->node(v).id;
  auto vars = graph->lattice().bdd_variables();
  return Bdd{std::move(graph), std::move(root), std::move(vars)};
}

Bdd build_decision_tree(const TruthTable& table) {
  if (table.vars.size() > TruthTable::max_variables)
    throw Error(ErrorKind::too_many_variables, std::to_string(table.vars.size()) + " variables (at most 16)");
  if (table.outputs.size() != (std::size_t{1} << table.vars.size()))
    throw Error(ErrorKind::parse_error, "truth table has the wrong number of outputs");
  auto lat = bdd_lattice_for(table.vars);
  LabeledGraph g(lat);
  const std::size_t n = table.vars.size();
  const Label zero = lat->at(labels::zero), one = lat->at(labels::one);
  // Preorder: a node is added before its children.
  auto build = [&](auto&& self, const std::string& path, std::size_t depth, std::size_t index) -> Index {
    const std::string id = "t" + path;
    if (depth == n) return g.add_node(id, table.outputs[index] ? one : zero);
    Index v = g.add_node(id, lat->at(table.vars[depth]));
    Index lo = self(self, path + "0", depth + 1, index << 1);
    Index hi = self(self, path + "1", depth + 1, (index << 1) | 1);
    g.add_edge(id + ".0", v, lo, zero);
    g.add_edge(id + ".1", v, hi, one);
    return v;
  };
  build(build, "", 0, 0);
  return Bdd{share(std::move(g)), "t", table.vars};
}

bool evaluate(const Bdd& bdd, const std::map<std::string, bool>& assignment) {
  const auto& g = *bdd.graph;
  const auto& lat = g.lattice();
  auto at = g.find_node(bdd.root);
  if (!at) throw Error(ErrorKind::invalid_bdd, "root '" + bdd.root + "' is not a node");
  Index v = *at;
  for (std::size_t steps = 0; steps <= g.node_count(); ++steps) {
    const auto& label = lat.element(g.node(v).label);
    if (g.out_edges(v).empty()) {
      if (label == labels::one) return true;
      if (label == labels::zero) return false;
      throw Error(ErrorKind::invalid_bdd, "leaf '" + g.node(v).id + "' is not labeled 0 or 1");
    }
    auto value = assignment.find(label);
    if (value == assignment.end()) throw Error(ErrorKind::unknown_variable, "no value for variable '" + label + "'");
    auto next = child(g, v, value->second ? labels::one : labels::zero);
    if (!next) throw Error(ErrorKind::invalid_bdd, "node '" + g.node(v).id + "' lacks a branch");
    v = *next;
  }
  throw Error(ErrorKind::invalid_bdd, "evaluation does not terminate");
}

bool evaluate(const Bdd& bdd, std::size_t assignment) {
  std::map<std::string, bool> values;
  const std::size_t n = bdd.vars.size();
  for (std::size_t i = 0; i < n; ++i) values[bdd.vars[i]] = (assignment >> (n - 1 - i)) & 1;
  return evaluate(bdd, values);
}

ReducedCheck is_reduced(const Bdd& bdd) {
  const auto& g = *bdd.graph;
  auto order = topological_order(g);
  if (!order) throw Error(ErrorKind::invalid_bdd, "graph is not acyclic");
  ReducedCheck check;
  // Structural signature per node: equal signatures mean isomorphic
  // sub-BDDs once the shallowest duplicate is taken.
  std::map<std::tuple<std::uint32_t, long, long>, long> table;
  std::vector<long> sig(g.node_count(), -1);
  std::vector<std::size_t> height(g.node_count(), 0);
  std::map<long, Index> first_with;
  std::optional<std::pair<Index, Index>> best;
  for (auto it = order->rbegin(); it != order->rend(); ++it) {
    const Index v = *it;
    auto lo = child(g, v, labels::zero), hi = child(g, v, labels::one);
    long lo_sig = lo ? sig[*lo] : -1, hi_sig = hi ? sig[*hi] : -1;
    if (lo && hi) height[v] = 1 + std::max(height[*lo], height[*hi]);
    if (lo && hi && *lo == *hi && !check.vacuous_node) check.vacuous_node = g.node(v).id;
    auto key = std::make_tuple(g.node(v).label.index, lo_sig, hi_sig);
    auto [entry, fresh] = table.emplace(key, static_cast<long>(table.size()));
    sig[v] = entry->second;
    if (fresh) {
      first_with[sig[v]] = v;
    } else if (!best || height[v] < height[best->first]) {
      best = std::make_pair(first_with[sig[v]], v);
    }
  }
  if (best) check.isomorphic_pair = std::make_pair(g.node(best->first).id, g.node(best->second).id);
  check.reduced = !check.isomorphic_pair && !check.vacuous_node;
  return check;
}

GraphPtr rooted_subgraph(const LabeledGraph& g, std::string_view root) {
  std::vector<char> seen(g.node_count(), 0);
  std::vector<Index> stack{g.node_index(root)};
  seen[stack.back()] = 1;
  while (!stack.empty()) {
    Index v = stack.back();
    stack.pop_back();
    for (auto e : g.out_edges(v)) {
      Index t = g.edge(e).tgt;
      if (!seen[t]) {
        seen[t] = 1;
        stack.push_back(t);
      }
    }
  }
  LabeledGraph sub(g.lattice_ptr());
  std::vector<Index> index(g.node_count());
  for (Index v = 0; v < g.node_count(); ++v)
    if (seen[v]) index[v] = sub.add_node(g.node(v).id, g.node(v).label);
  for (const auto& e : g.edges())
    if (seen[e.src]) sub.add_edge(e.id, index[e.src], index[e.tgt], e.label);
  return share(std::move(sub));
}

// ---------------------------------------------------------------------------
// Reduction rules. Context elements of L' carry the same labels in K' so
// that the context is left untouched by a step.

namespace {

void require_bdd_lattice(const LatticePtr& lattice) {
  if (!lattice || !lattice->is_bdd_lattice()) throw Error(ErrorKind::bad_lattice, "rule needs a BDD lattice");
}

struct RuleSketch {
  GraphPtr L;
  GraphPtr Lp;
  GraphPtr Kp;
};

// tL and lp are both the "same id" embeddings.
PbpoRule finish(std::string name, const RuleSketch& s, const RSpec& spec) {
  auto by_id = [](const GraphPtr& from, const GraphPtr& to) {
    std::map<std::string, std::string> nodes, edges;
    for (const auto& n : from->nodes()) nodes[n.id] = n.id;
    for (const auto& e : from->edges()) edges[e.id] = e.id;
    return GraphMorphism::from_ids(from, to, nodes, edges);
  };
  return complete_rule(std::move(name), by_id(s.L, s.Lp), by_id(s.Kp, s.Lp), spec);
}

}  // namespace

PbpoRule leaf_rule(std::string_view b, const LatticePtr& lat) {
  require_bdd_lattice(lat);
  if (b != labels::zero && b != labels::one) throw Error(ErrorKind::bad_lattice, "leaf rules exist for 0 and 1 only");
  const std::string bs(b);
  const std::string BOOL(labels::bool_class), TOP(labels::top);

  LabeledGraph L(lat);
  L.add_node("u", bs);
  L.add_node("v", bs);

  LabeledGraph Lp(lat);
  Lp.add_node("u", bs);
  Lp.add_node("v", bs);
  Lp.add_node("c", TOP);
  Lp.add_edge("cc", "c", "c", BOOL);
  Lp.add_edge("cu", "c", "u", BOOL);
  Lp.add_edge("cv", "c", "v", BOOL);
  LabeledGraph Kp = Lp;

  RSpec spec;
  spec.node_merges.push_back({"uv", {"u", "v"}});
  return finish("LEAF_" + bs, {share(std::move(L)), share(std::move(Lp)), share(std::move(Kp))}, spec);
}

PbpoRule merge_iso_rule(std::string_view variable, const LatticePtr& lat) {
  require_bdd_lattice(lat);
  const auto& vars = lat->bdd_variables();
  if (std::find(vars.begin(), vars.end(), variable) == vars.end())
    throw Error(ErrorKind::unknown_variable, "'" + std::string(variable) + "' is not a variable of " + lat->name());
  const std::string x(variable);
  const std::string BOOL(labels::bool_class), TOP(labels::top), BOT(labels::bottom);
  const std::string ZERO(labels::zero), ONE(labels::one);

  LabeledGraph L(lat);
  L.add_node("x", x);
  L.add_node("y", x);
  L.add_node("z", BOT);
  L.add_node("u", BOT);
  L.add_edge("x0", "x", "z", ZERO);
  L.add_edge("x1", "x", "u", ONE);
  L.add_edge("y0", "y", "z", ZERO);
  L.add_edge("y1", "y", "u", ONE);

  // K' has everything but the four pattern edges.
  LabeledGraph Kp(lat);
  Kp.add_node("x", x);
  Kp.add_node("y", x);
  Kp.add_node("z", TOP);
  Kp.add_node("u", TOP);
  Kp.add_node("c", TOP);
  for (auto [id, s, t] : {std::tuple{"cc", "c", "c"}, {"cx", "c", "x"}, {"cy", "c", "y"}, {"cz", "c", "z"},
                          {"cu", "c", "u"}, {"zc", "z", "c"}, {"uc", "u", "c"}, {"zu", "z", "u"}, {"uz", "u", "z"}})
    Kp.add_edge(id, s, t, BOOL);

  LabeledGraph Lp = Kp;
  Lp.add_edge("x0", "x", "z", ZERO);
  Lp.add_edge("x1", "x", "u", ONE);
  Lp.add_edge("y0", "y", "z", ZERO);
  Lp.add_edge("y1", "y", "u", ONE);

  RSpec spec;
  spec.node_merges.push_back({"xy", {"x", "y"}});
  spec.fresh_edges.push_back({"xy0", "xy", "z", ZERO});
  spec.fresh_edges.push_back({"xy1", "xy", "u", ONE});
  return finish("MERGE-ISO_" + x, {share(std::move(L)), share(std::move(Lp)), share(std::move(Kp))}, spec);
}

PbpoRule elim_vacuous_rule(const LatticePtr& lat) {
  require_bdd_lattice(lat);
  const std::string BOOL(labels::bool_class), TOP(labels::top), BOT(labels::bottom), VAR(labels::var_class);
  const std::string ZERO(labels::zero), ONE(labels::one);

  LabeledGraph L(lat);
  L.add_node("x", BOT);
  L.add_node("y", BOT);
  L.add_edge("x0", "x", "y", ZERO);
  L.add_edge("x1", "x", "y", ONE);

  // x is erased to BOT in K', so the meet in the pullback forgets its label.
  LabeledGraph Kp(lat);
  Kp.add_node("x", BOT);
  Kp.add_node("y", TOP);
  Kp.add_node("c", TOP);
  for (auto [id, s, t] : {std::tuple{"cc", "c", "c"}, {"cx", "c", "x"}, {"cy", "c", "y"}, {"yc", "y", "c"}})
    Kp.add_edge(id, s, t, BOOL);

  LabeledGraph Lp(lat);
  Lp.add_node("x", VAR);
  Lp.add_node("y", TOP);
  Lp.add_node("c", TOP);
  for (auto [id, s, t] : {std::tuple{"cc", "c", "c"}, {"cx", "c", "x"}, {"cy", "c", "y"}, {"yc", "y", "c"}})
    Lp.add_edge(id, s, t, BOOL);
  Lp.add_edge("x0", "x", "y", ZERO);
  Lp.add_edge("x1", "x", "y", ONE);

  RSpec spec;
  spec.node_merges.push_back({"xy", {"x", "y"}});
  return finish("ELIM-VACUOUS", {share(std::move(L)), share(std::move(Lp)), share(std::move(Kp))}, spec);
}

std::vector<PbpoRule> bdd_reduction_rules(const LatticePtr& lat) {
  require_bdd_lattice(lat);
  std::vector<PbpoRule> rules{leaf_rule(labels::zero, lat), leaf_rule(labels::one, lat)};
  for (const auto& x : lat->bdd_variables()) rules.push_back(merge_iso_rule(x, lat));
  rules.push_back(elim_vacuous_rule(lat));
  return rules;
}

ReduceResult reduce_bdd(const Bdd& bdd, std::size_t max_steps,
                        const std::function<void(const RewriteTrace&, const GraphPtr&)>& on_step) {
  if (auto report = validate_bdd(*bdd.graph, bdd.root); !report.ok())
    throw Error(ErrorKind::invalid_bdd, report.to_string());
  auto rules = bdd_reduction_rules(bdd.graph->lattice_ptr());
  auto run = normalize(bdd.graph, rules, Strategy::first_rule_first_match, max_steps, on_step);
  return {Bdd::from_graph(run.graph), std::move(run.steps), std::move(run.rule_indices), run.fixpoint};
}

Bdd oracle_reduce(const TruthTable& table) {
  if (table.vars.size() > TruthTable::max_variables)
    throw Error(ErrorKind::too_many_variables, std::to_string(table.vars.size()) + " variables (at most 16)");
  const std::size_t n = table.vars.size();
  // Node k: (variable index or -1 for a leaf, low, high); leaves store their
  // value in `low`.
  struct Entry {
    int var;
    long low;
    long high;
  };
  std::vector<Entry> nodes;
  std::map<std::tuple<int, long, long>, long> unique;
  auto mk = [&](int var, long low, long high) -> long {
    if (var >= 0 && low == high) return low;
    auto key = std::make_tuple(var, low, high);
    if (auto it = unique.find(key); it != unique.end()) return it->second;
    nodes.push_back({var, low, high});
    unique.emplace(key, static_cast<long>(nodes.size() - 1));
    return static_cast<long>(nodes.size() - 1);
  };
  auto build = [&](auto&& self, std::size_t depth, std::size_t index) -> long {
    if (depth == n) return mk(-1, table.outputs[index] ? 1 : 0, -1);
    long lo = self(self, depth + 1, index << 1);
    long hi = self(self, depth + 1, (index << 1) | 1);
    return mk(static_cast<int>(depth), lo, hi);
  };
  const long root = build(build, 0, 0);

  auto lat = bdd_lattice_for(table.vars);
  LabeledGraph g(lat);
  std::map<long, Index> placed;
  const Label zero = lat->at(labels::zero), one = lat->at(labels::one);
  auto emit = [&](auto&& self, long k) -> Index {
    if (auto it = placed.find(k); it != placed.end()) return it->second;
    const auto& e = nodes[k];
    const std::string id = "o" + std::to_string(placed.size());
    if (e.var < 0) return placed[k] = g.add_node(id, e.low ? one : zero);
    Index v = g.add_node(id, lat->at(table.vars[e.var]));
    placed[k] = v;
    Index lo = self(self, e.low);
    Index hi = self(self, e.high);
    g.add_edge(id + ".0", v, lo, zero);
    g.add_edge(id + ".1", v, hi, one);
    return v;
  };
  emit(emit, root);
  return Bdd{share(std::move(g)), "o0", table.vars};
}

}  // namespace pbpo
