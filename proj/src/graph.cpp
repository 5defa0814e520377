#include "pbpo/graph.hpp"

#include <algorithm>
#include <set>
#include <tuple>

#include "hom_search.hpp"
#include "pbpo/error.hpp"

namespace pbpo {

LabeledGraph::LabeledGraph(LatticePtr lattice) : lattice_(std::move(lattice)) {
  if (!lattice_) throw Error(ErrorKind::invalid_graph, "graph without a lattice");
}

Index LabeledGraph::add_node(std::string id, Label label) {
  if (!lattice_->contains(label)) throw Error(ErrorKind::invalid_graph, "node '" + id + "' has a label outside the lattice");
  auto index = static_cast<Index>(nodes_.size());
  if (!node_ids_.emplace(id, index).second) throw Error(ErrorKind::invalid_graph, "duplicate node id '" + id + "'");
  nodes_.push_back({std::move(id), label});
  out_.emplace_back();
  in_.emplace_back();
  return index;
}

Index LabeledGraph::add_edge(std::string id, Index src, Index tgt, Label label) {
  if (src >= nodes_.size() || tgt >= nodes_.size())
    throw Error(ErrorKind::invalid_graph, "edge '" + id + "' has a dangling endpoint");
  if (!lattice_->contains(label)) throw Error(ErrorKind::invalid_graph, "edge '" + id + "' has a label outside the lattice");
  auto index = static_cast<Index>(edges_.size());
  if (!edge_ids_.emplace(id, index).second) throw Error(ErrorKind::invalid_graph, "duplicate edge id '" + id + "'");
  edges_.push_back({std::move(id), src, tgt, label});
  out_[src].push_back(index);
  in_[tgt].push_back(index);
  return index;
}

Index LabeledGraph::add_edge(std::string id, std::string_view src, std::string_view tgt, std::string_view label) {
  return add_edge(std::move(id), node_index(src), node_index(tgt), lattice_->at(label));
}

std::optional<Index> LabeledGraph::find_node(std::string_view id) const {
  auto it = node_ids_.find(std::string(id));
  if (it == node_ids_.end()) return std::nullopt;
  return it->second;
}

std::optional<Index> LabeledGraph::find_edge(std::string_view id) const {
  auto it = edge_ids_.find(std::string(id));
  if (it == edge_ids_.end()) return std::nullopt;
  return it->second;
}

Index LabeledGraph::node_index(std::string_view id) const {
  if (auto i = find_node(id)) return *i;
  throw Error(ErrorKind::invalid_graph, "no node '" + std::string(id) + "'");
}

Index LabeledGraph::edge_index(std::string_view id) const {
  if (auto i = find_edge(id)) return *i;
  throw Error(ErrorKind::invalid_graph, "no edge '" + std::string(id) + "'");
}

bool LabeledGraph::operator==(const LabeledGraph& other) const {
  if (this == &other) return true;
  if (!same_lattice(*lattice_, *other.lattice_)) return false;
  if (nodes_.size() != other.nodes_.size() || edges_.size() != other.edges_.size()) return false;
  for (std::size_t i = 0; i < nodes_.size(); ++i)
    if (nodes_[i].id != other.nodes_[i].id || nodes_[i].label != other.nodes_[i].label) return false;
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const auto &a = edges_[i], &b = other.edges_[i];
    if (a.id != b.id || a.src != b.src || a.tgt != b.tgt || a.label != b.label) return false;
  }
  return true;
}

ValidationReport validate_graph(const GraphRecord& record, const LabelLattice& lattice) {
  ValidationReport report;
  std::set<std::string> node_ids, edge_ids;
  auto check_label = [&](const std::optional<std::string>& label, const std::string& subject) {
    if (label && !lattice.find(*label))
      report.add("label-domain", subject, "label '" + *label + "' is not in lattice '" + lattice.name() + "'");
  };
  for (const auto& n : record.nodes) {
    if (!node_ids.insert(n.id).second) report.add("duplicate-id", n.id, "node id used twice");
    check_label(n.label, n.id);
  }
  for (const auto& e : record.edges) {
    if (!edge_ids.insert(e.id).second) report.add("duplicate-id", e.id, "edge id used twice");
    if (!node_ids.contains(e.src)) report.add("dangling-endpoint", e.id, "source '" + e.src + "' is not a node");
    if (!node_ids.contains(e.tgt)) report.add("dangling-endpoint", e.id, "target '" + e.tgt + "' is not a node");
    check_label(e.label, e.id);
  }
  return report;
}

ValidationReport validate_graph(const LabeledGraph& g) {
  // A LabeledGraph is checked on construction; re-run the record checks so
  // the report is available uniformly.
  return validate_graph(g.to_record(), g.lattice());
}

LabeledGraph LabeledGraph::from_record(const GraphRecord& record, LatticePtr lattice) {
  auto report = validate_graph(record, *lattice);
  if (!report.ok()) throw Error(ErrorKind::invalid_graph, report.to_string());
  LabeledGraph g(lattice);
  const auto top = lattice->top();
  for (const auto& n : record.nodes) g.add_node(n.id, n.label ? lattice->at(*n.label) : top);
  for (const auto& e : record.edges)
    g.add_edge(e.id, g.node_index(e.src), g.node_index(e.tgt), e.label ? lattice->at(*e.label) : top);
  return g;
}

GraphRecord LabeledGraph::to_record() const {
  GraphRecord r;
  for (const auto& n : nodes_) r.nodes.push_back({n.id, lattice_->element(n.label)});
  for (const auto& e : edges_) r.edges.push_back({e.id, nodes_[e.src].id, nodes_[e.tgt].id, lattice_->element(e.label)});
  return r;
}

bool same_lattice(const LabelLattice& a, const LabelLattice& b) { return a == b; }

bool same_graph(const GraphPtr& a, const GraphPtr& b) { return a == b || (a && b && *a == *b); }

// ---------------------------------------------------------------------------

GraphMorphism::GraphMorphism(GraphPtr dom, GraphPtr cod, std::vector<Index> node_map, std::vector<Index> edge_map)
    : dom_(std::move(dom)), cod_(std::move(cod)), node_map_(std::move(node_map)), edge_map_(std::move(edge_map)) {
  if (!dom_ || !cod_) throw Error(ErrorKind::invalid_morphism, "morphism without domain or codomain");
  if (node_map_.size() != dom_->node_count() || edge_map_.size() != dom_->edge_count())
    throw Error(ErrorKind::invalid_morphism, "morphism maps are not total on the domain");
  for (auto v : node_map_)
    if (v >= cod_->node_count()) throw Error(ErrorKind::invalid_morphism, "node image out of range");
  for (auto e : edge_map_)
    if (e >= cod_->edge_count()) throw Error(ErrorKind::invalid_morphism, "edge image out of range");
}

GraphMorphism GraphMorphism::from_ids(GraphPtr dom, GraphPtr cod, const std::map<std::string, std::string>& node_map,
                                      const std::map<std::string, std::string>& edge_map) {
  std::vector<Index> nodes(dom->node_count()), edges(dom->edge_count());
  for (const auto& [from, to] : node_map) {
    auto a = dom->find_node(from);
    auto b = cod->find_node(to);
    if (!a) throw Error(ErrorKind::invalid_morphism, "node map mentions unknown domain node '" + from + "'");
    if (!b) throw Error(ErrorKind::invalid_morphism, "node map mentions unknown codomain node '" + to + "'");
    nodes[*a] = *b;
  }
  for (const auto& n : dom->nodes())
    if (!node_map.contains(n.id)) throw Error(ErrorKind::invalid_morphism, "node map misses domain node '" + n.id + "'");
  for (const auto& [from, to] : edge_map) {
    auto a = dom->find_edge(from);
    auto b = cod->find_edge(to);
    if (!a) throw Error(ErrorKind::invalid_morphism, "edge map mentions unknown domain edge '" + from + "'");
    if (!b) throw Error(ErrorKind::invalid_morphism, "edge map mentions unknown codomain edge '" + to + "'");
    edges[*a] = *b;
  }
  const auto& lat = dom->lattice();
  for (Index e = 0; e < dom->edge_count(); ++e) {
    const auto& de = dom->edge(e);
    if (edge_map.contains(de.id)) continue;
    const Index s = nodes[de.src], t = nodes[de.tgt];
    std::vector<Index> fits;
    for (auto f : cod->out_edges(s))
      if (cod->edge(f).tgt == t && lat.leq(de.label, cod->edge(f).label)) fits.push_back(f);
    if (fits.size() != 1)
      throw Error(ErrorKind::invalid_morphism, "edge '" + de.id + "' has " + std::to_string(fits.size()) +
                                                   " possible images; give it in the edge map");
    edges[e] = fits.front();
  }
  return GraphMorphism(std::move(dom), std::move(cod), std::move(nodes), std::move(edges));
}

const std::string& GraphMorphism::node_image(std::string_view dom_id) const {
  return cod_->node(node_map_[dom_->node_index(dom_id)]).id;
}

const std::string& GraphMorphism::edge_image(std::string_view dom_id) const {
  return cod_->edge(edge_map_[dom_->edge_index(dom_id)]).id;
}

std::map<std::string, std::string> GraphMorphism::node_id_map() const {
  std::map<std::string, std::string> m;
  for (Index i = 0; i < node_map_.size(); ++i) m[dom_->node(i).id] = cod_->node(node_map_[i]).id;
  return m;
}

std::map<std::string, std::string> GraphMorphism::edge_id_map() const {
  std::map<std::string, std::string> m;
  for (Index i = 0; i < edge_map_.size(); ++i) m[dom_->edge(i).id] = cod_->edge(edge_map_[i]).id;
  return m;
}

namespace {
bool injective(std::span<const Index> map, std::size_t range) {
  std::vector<char> seen(range, 0);
  for (auto v : map) {
    if (seen[v]) return false;
    seen[v] = 1;
  }
  return true;
}
}  // namespace

bool GraphMorphism::is_injective() const {
  return injective(node_map_, cod_->node_count()) && injective(edge_map_, cod_->edge_count());
}

bool GraphMorphism::is_bijective() const {
  return is_injective() && dom_->node_count() == cod_->node_count() && dom_->edge_count() == cod_->edge_count();
}

bool GraphMorphism::is_isomorphism() const {
  if (!is_bijective() || !validate_morphism(*this).ok()) return false;
  for (Index i = 0; i < node_map_.size(); ++i)
    if (dom_->node(i).label != cod_->node(node_map_[i]).label) return false;
  for (Index i = 0; i < edge_map_.size(); ++i)
    if (dom_->edge(i).label != cod_->edge(edge_map_[i]).label) return false;
  return true;
}

bool GraphMorphism::operator==(const GraphMorphism& other) const {
  return same_graph(dom_, other.dom_) && same_graph(cod_, other.cod_) && node_map_ == other.node_map_ &&
         edge_map_ == other.edge_map_;
}

ValidationReport validate_morphism(const GraphMorphism& f) {
  ValidationReport report;
  const auto& dom = f.dom();
  const auto& cod = f.cod();
  if (!same_lattice(dom.lattice(), cod.lattice())) {
    report.add("lattice-mismatch", "", "domain and codomain use different lattices");
    return report;
  }
  const auto& lat = dom.lattice();
  for (Index e = 0; e < dom.edge_count(); ++e) {
    const auto& de = dom.edge(e);
    const auto& ce = cod.edge(f.edge(e));
    if (f.node(de.src) != ce.src)
      report.add("source-square", de.id, "image of source differs from source of image '" + ce.id + "'");
    if (f.node(de.tgt) != ce.tgt)
      report.add("target-square", de.id, "image of target differs from target of image '" + ce.id + "'");
    if (!lat.leq(de.label, ce.label))
      report.add("label-condition", de.id,
                 "label '" + lat.element(de.label) + "' is not below '" + lat.element(ce.label) + "'");
  }
  for (Index v = 0; v < dom.node_count(); ++v) {
    const auto& dn = dom.node(v);
    const auto& cn = cod.node(f.node(v));
    if (!lat.leq(dn.label, cn.label))
      report.add("label-condition", dn.id,
                 "label '" + lat.element(dn.label) + "' is not below '" + lat.element(cn.label) + "'");
  }
  return report;
}

GraphMorphism identity(const GraphPtr& g) {
  std::vector<Index> nodes(g->node_count()), edges(g->edge_count());
  for (Index i = 0; i < nodes.size(); ++i) nodes[i] = i;
  for (Index i = 0; i < edges.size(); ++i) edges[i] = i;
  return GraphMorphism(g, g, std::move(nodes), std::move(edges));
}

GraphMorphism compose(const GraphMorphism& f, const GraphMorphism& g) {
  if (!same_graph(f.cod_ptr(), g.dom_ptr()))
    throw Error(ErrorKind::domain_mismatch, "codomain of the first morphism is not the domain of the second");
  std::vector<Index> nodes(f.dom().node_count()), edges(f.dom().edge_count());
  for (Index i = 0; i < nodes.size(); ++i) nodes[i] = g.node(f.node(i));
  for (Index i = 0; i < edges.size(); ++i) edges[i] = g.edge(f.edge(i));
  return GraphMorphism(f.dom_ptr(), g.cod_ptr(), std::move(nodes), std::move(edges));
}

GraphMorphism inverse(const GraphMorphism& f) {
  if (!f.is_isomorphism()) throw Error(ErrorKind::invalid_morphism, "only isomorphisms have inverses");
  std::vector<Index> nodes(f.cod().node_count()), edges(f.cod().edge_count());
  for (Index i = 0; i < f.dom().node_count(); ++i) nodes[f.node(i)] = i;
  for (Index i = 0; i < f.dom().edge_count(); ++i) edges[f.edge(i)] = i;
  return GraphMorphism(f.cod_ptr(), f.dom_ptr(), std::move(nodes), std::move(edges));
}

DisjointUnion disjoint_union(const GraphPtr& g, const GraphPtr& h) {
  if (!same_lattice(g->lattice(), h->lattice()))
    throw Error(ErrorKind::invalid_graph, "disjoint union of graphs over different lattices");
  LabeledGraph u(g->lattice_ptr());
  std::vector<Index> gn, ge, hn, he;
  for (const auto& n : g->nodes()) gn.push_back(u.add_node("0:" + n.id, n.label));
  for (const auto& n : h->nodes()) hn.push_back(u.add_node("1:" + n.id, n.label));
  for (const auto& e : g->edges()) ge.push_back(u.add_edge("0:" + e.id, gn[e.src], gn[e.tgt], e.label));
  for (const auto& e : h->edges()) he.push_back(u.add_edge("1:" + e.id, hn[e.src], hn[e.tgt], e.label));
  auto up = share(std::move(u));
  return {up, GraphMorphism(g, up, std::move(gn), std::move(ge)), GraphMorphism(h, up, std::move(hn), std::move(he))};
}

std::optional<GraphMorphism> is_isomorphic(const GraphPtr& g, const GraphPtr& h) {
  if (!same_lattice(g->lattice(), h->lattice())) return std::nullopt;
  if (g->node_count() != h->node_count() || g->edge_count() != h->edge_count()) return std::nullopt;

  // Cheap invariant: multisets of (label, in, out) per node and label per edge.
  auto node_profile = [](const LabeledGraph& x) {
    std::vector<std::tuple<std::uint32_t, std::size_t, std::size_t>> p;
    for (Index i = 0; i < x.node_count(); ++i)
      p.emplace_back(x.node(i).label.index, x.in_edges(i).size(), x.out_edges(i).size());
    std::sort(p.begin(), p.end());
    return p;
  };
  auto edge_profile = [](const LabeledGraph& x) {
    std::vector<std::uint32_t> p;
    for (const auto& e : x.edges()) p.push_back(e.label.index);
    std::sort(p.begin(), p.end());
    return p;
  };
  if (node_profile(*g) != node_profile(*h) || edge_profile(*g) != edge_profile(*h)) return std::nullopt;

  detail::SearchOptions options;
  options.injective = true;
  options.label_equal = true;
  options.degree_equal = true;
  std::optional<GraphMorphism> witness;
  detail::search_homomorphisms(*g, *h, options, [&](std::span<const Index> nodes, std::span<const Index> edges) {
    witness.emplace(g, h, std::vector<Index>(nodes.begin(), nodes.end()), std::vector<Index>(edges.begin(), edges.end()));
    return false;
  });
  return witness;
}

Renamed rename(const GraphPtr& g, const std::map<std::string, std::string>& node_ids,
               const std::map<std::string, std::string>& edge_ids) {
  LabeledGraph out(g->lattice_ptr());
  std::vector<Index> nodes, edges;
  for (const auto& n : g->nodes()) {
    auto it = node_ids.find(n.id);
    nodes.push_back(out.add_node(it == node_ids.end() ? n.id : it->second, n.label));
  }
  for (const auto& e : g->edges()) {
    auto it = edge_ids.find(e.id);
    edges.push_back(out.add_edge(it == edge_ids.end() ? e.id : it->second, nodes[e.src], nodes[e.tgt], e.label));
  }
  auto ptr = share(std::move(out));
  return {ptr, GraphMorphism(g, ptr, std::move(nodes), std::move(edges))};
}

}  // namespace pbpo
