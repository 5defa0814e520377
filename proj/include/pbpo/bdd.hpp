#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pbpo/graph.hpp"
#include "pbpo/rewrite.hpp"

namespace pbpo {

/// A Boolean function as 2^n outputs. Index bits follow the variable order
/// with the first variable as the most significant bit, so "0001" over
/// (p, q) is p AND q and "0011" is p.
struct TruthTable {
  static constexpr std::size_t max_variables = 16;

  std::vector<std::string> vars;
  std::vector<bool> outputs;

  /// Throws ErrorKind::too_many_variables or ErrorKind::parse_error.
  static TruthTable parse(std::string_view bits, const std::vector<std::string>& vars);
  std::string bits() const;
  bool at(std::size_t assignment) const { return outputs.at(assignment); }
};

/// A BDD: a rooted labeled graph over bdd_lattice(vars).
struct Bdd {
  GraphPtr graph;
  std::string root;
  std::vector<std::string> vars;

  /// Finds the root and checks the BDD conditions; throws
  /// ErrorKind::invalid_bdd with the report otherwise.
  static Bdd from_graph(GraphPtr graph);
};

/// Lattice shared by every BDD over the same variable list.
LatticePtr bdd_lattice_for(const std::vector<std::string>& vars);

/// Full decision tree: node "t" is the root, "t" + path bits name the
/// others (0 = low branch), edges are "<parent>.0" and "<parent>.1".
/// Over zero variables the tree is a single leaf "t".
Bdd build_decision_tree(const TruthTable& table);

/// Follows 0-edges on false and 1-edges on true from the root.
/// Throws ErrorKind::invalid_bdd or ErrorKind::unknown_variable.
bool evaluate(const Bdd& bdd, const std::map<std::string, bool>& assignment);
/// assignment bits in TruthTable order.
bool evaluate(const Bdd& bdd, std::size_t assignment);

/// Single root (matching root_hint if given), Bool-labeled leaves and
/// edges, variable-labeled internal nodes with one 0-edge and one 1-edge,
/// acyclic, no variable repeated along a path.
ValidationReport validate_bdd(const LabeledGraph& graph, const std::optional<std::string>& root_hint = std::nullopt);

struct ReducedCheck {
  bool reduced = true;
  /// Roots of two distinct isomorphic sub-BDDs (the shallowest such pair).
  std::optional<std::pair<std::string, std::string>> isomorphic_pair;
  /// A node whose 0- and 1-edge reach the same child.
  std::optional<std::string> vacuous_node;
};
ReducedCheck is_reduced(const Bdd& bdd);

/// Sub-BDD reachable from a node, as a graph of its own.
GraphPtr rooted_subgraph(const LabeledGraph& graph, std::string_view root);

// Reduction rules over a BDD lattice.

/// LEAF_b: identifies two distinct leaves labeled b.
PbpoRule leaf_rule(std::string_view b, const LatticePtr& lattice);
/// MERGE-ISO_x: identifies two x-nodes with the same 0-child and 1-child.
PbpoRule merge_iso_rule(std::string_view variable, const LatticePtr& lattice);
/// ELIM-VACUOUS: removes a node whose two edges reach the same child and
/// redirects its incoming edges to that child.
PbpoRule elim_vacuous_rule(const LatticePtr& lattice);
/// LEAF_0, LEAF_1, MERGE-ISO for every variable in order, ELIM-VACUOUS.
std::vector<PbpoRule> bdd_reduction_rules(const LatticePtr& lattice);

struct ReduceResult {
  Bdd bdd;
  std::vector<RewriteTrace> steps;
  std::vector<std::size_t> rule_indices;
  bool fixpoint = false;
};

/// Applies the reduction rules until none matches.
/// Throws ErrorKind::invalid_bdd.
ReduceResult reduce_bdd(const Bdd& bdd, std::size_t max_steps = 100000,
                        const std::function<void(const RewriteTrace&, const GraphPtr& before)>& on_step = {});

/// Reduced ordered BDD built directly from the table with a unique table
/// over (variable, low, high); vacuous tests are skipped. Independent of
/// the rewriting engine.
Bdd oracle_reduce(const TruthTable& table);

}  // namespace pbpo
