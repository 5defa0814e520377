#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "pbpo/lattice.hpp"
#include "pbpo/report.hpp"

namespace pbpo {

using Index = std::uint32_t;

struct Node {
  std::string id;
  Label label;
};

struct Edge {
  std::string id;
  Index src;
  Index tgt;
  Label label;
};

/// Unchecked graph data as it comes out of an interchange file. Labels left
/// empty default to the lattice top.
struct GraphRecord {
  struct NodeRecord {
    std::string id;
    std::optional<std::string> label;
  };
  struct EdgeRecord {
    std::string id;
    std::string src;
    std::string tgt;
    std::optional<std::string> label;
  };
  std::vector<NodeRecord> nodes;
  std::vector<EdgeRecord> edges;
};

/// Directed multigraph with node and edge labels from one lattice.
///
/// Node ids and edge ids are separate namespaces. Elements keep their
/// insertion order; that order is what morphisms index into, and equality
/// is order-sensitive.
class LabeledGraph {
 public:
  explicit LabeledGraph(LatticePtr lattice);

  /// Throws ErrorKind::invalid_graph with the full report when the record
  /// fails validate_graph().
  static LabeledGraph from_record(const GraphRecord& record, LatticePtr lattice);
  GraphRecord to_record() const;

  Index add_node(std::string id, Label label);
  Index add_node(std::string id, std::string_view label) { return add_node(std::move(id), lattice_->at(label)); }
  Index add_edge(std::string id, Index src, Index tgt, Label label);
  Index add_edge(std::string id, std::string_view src, std::string_view tgt, std::string_view label);

  const LabelLattice& lattice() const noexcept { return *lattice_; }
  const LatticePtr& lattice_ptr() const noexcept { return lattice_; }

  std::span<const Node> nodes() const noexcept { return nodes_; }
  std::span<const Edge> edges() const noexcept { return edges_; }
  std::size_t node_count() const noexcept { return nodes_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  const Node& node(Index i) const { return nodes_.at(i); }
  const Edge& edge(Index i) const { return edges_.at(i); }

  std::optional<Index> find_node(std::string_view id) const;
  std::optional<Index> find_edge(std::string_view id) const;
  Index node_index(std::string_view id) const;  // throws invalid_graph
  Index edge_index(std::string_view id) const;

  std::span<const Index> out_edges(Index n) const { return out_.at(n); }
  std::span<const Index> in_edges(Index n) const { return in_.at(n); }

  /// Same lattice, same elements in the same order with the same labels.
  bool operator==(const LabeledGraph& other) const;

 private:
  LatticePtr lattice_;
  std::vector<Node> nodes_;
  std::vector<Edge> edges_;
  std::unordered_map<std::string, Index> node_ids_;
  std::unordered_map<std::string, Index> edge_ids_;
  std::vector<std::vector<Index>> out_;
  std::vector<std::vector<Index>> in_;
};

using GraphPtr = std::shared_ptr<const LabeledGraph>;

inline GraphPtr share(LabeledGraph g) { return std::make_shared<const LabeledGraph>(std::move(g)); }

bool same_lattice(const LabelLattice& a, const LabelLattice& b);
bool same_graph(const GraphPtr& a, const GraphPtr& b);

/// A pair of maps dom.nodes -> cod.nodes and dom.edges -> cod.edges.
///
/// Construction only checks that the maps are total and in range; the
/// homomorphism and label conditions are reported by validate_morphism().
/// Labels must be non-decreasing along a morphism: label(x) <= label(f(x)).
class GraphMorphism {
 public:
  GraphMorphism(GraphPtr dom, GraphPtr cod, std::vector<Index> node_map, std::vector<Index> edge_map);

  /// Builds a morphism from id maps. When edge_map omits a dom edge, the
  /// image is inferred if exactly one cod edge fits (right endpoints, label
  /// not below); otherwise throws ErrorKind::invalid_morphism.
  static GraphMorphism from_ids(GraphPtr dom, GraphPtr cod, const std::map<std::string, std::string>& node_map,
                                const std::map<std::string, std::string>& edge_map = {});

  const LabeledGraph& dom() const noexcept { return *dom_; }
  const LabeledGraph& cod() const noexcept { return *cod_; }
  const GraphPtr& dom_ptr() const noexcept { return dom_; }
  const GraphPtr& cod_ptr() const noexcept { return cod_; }

  Index node(Index i) const { return node_map_.at(i); }
  Index edge(Index i) const { return edge_map_.at(i); }
  std::span<const Index> node_map() const noexcept { return node_map_; }
  std::span<const Index> edge_map() const noexcept { return edge_map_; }

  /// Image of an element id, as an id in cod.
  const std::string& node_image(std::string_view dom_id) const;
  const std::string& edge_image(std::string_view dom_id) const;

  std::map<std::string, std::string> node_id_map() const;
  std::map<std::string, std::string> edge_id_map() const;

  bool is_injective() const;
  bool is_bijective() const;
  /// Bijective and label-preserving, i.e. an isomorphism.
  bool is_isomorphism() const;

  /// Maps equal and dom/cod identical.
  bool operator==(const GraphMorphism& other) const;

 private:
  GraphPtr dom_;
  GraphPtr cod_;
  std::vector<Index> node_map_;
  std::vector<Index> edge_map_;
};

ValidationReport validate_graph(const GraphRecord& record, const LabelLattice& lattice);
ValidationReport validate_graph(const LabeledGraph& g);
ValidationReport validate_morphism(const GraphMorphism& f);

GraphMorphism identity(const GraphPtr& g);
/// g after f. Throws ErrorKind::domain_mismatch unless cod(f) = dom(g).
GraphMorphism compose(const GraphMorphism& f, const GraphMorphism& g);
/// Inverse of an isomorphism; throws ErrorKind::invalid_morphism otherwise.
GraphMorphism inverse(const GraphMorphism& f);

struct DisjointUnion {
  GraphPtr graph;
  GraphMorphism left;
  GraphMorphism right;
};

/// Tagged union; ids become "0:<id>" and "1:<id>".
DisjointUnion disjoint_union(const GraphPtr& g, const GraphPtr& h);

/// Some isomorphism g -> h, found by backtracking with label and degree
/// pruning. Meant for desk-scale graphs (tens of nodes).
std::optional<GraphMorphism> is_isomorphic(const GraphPtr& g, const GraphPtr& h);

/// Copy of g with every id passed through the given renaming (ids absent
/// from the maps keep their name), plus the isomorphism g -> copy.
struct Renamed {
  GraphPtr graph;
  GraphMorphism iso;
};
Renamed rename(const GraphPtr& g, const std::map<std::string, std::string>& node_ids,
               const std::map<std::string, std::string>& edge_ids);

}  // namespace pbpo
