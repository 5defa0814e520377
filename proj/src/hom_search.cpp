#include "hom_search.hpp"

#include <algorithm>
#include <limits>

namespace pbpo::detail {
namespace {

constexpr Index unassigned = std::numeric_limits<Index>::max();

std::size_t loop_count(const LabeledGraph& g, Index n) {
  std::size_t c = 0;
  for (auto e : g.out_edges(n))
    if (g.edge(e).tgt == n) ++c;
  return c;
}

class Search {
 public:
  Search(const LabeledGraph& g, const LabeledGraph& h, const SearchOptions& o, const HomVisitor& visit)
      : g_(g), h_(h), opt_(o), visit_(visit), lat_(g.lattice()) {}

  void run() {
    const std::size_t gn = g_.node_count();
    if (opt_.injective && (gn > h_.node_count() || g_.edge_count() > h_.edge_count())) return;
    build_node_candidates();
    for (const auto& c : cand_)
      if (c.empty()) return;
    build_edge_candidates();
    for (Index e = 0; e < g_.edge_count(); ++e)
      if (edge_cand_[e].empty()) return;
    build_order();
    node_map_.assign(gn, unassigned);
    edge_map_.assign(g_.edge_count(), unassigned);
    used_nodes_.assign(h_.node_count(), 0);
    used_edges_.assign(h_.edge_count(), 0);
    assign_node(0);
  }

 private:
  bool label_ok(Label a, Label b) const { return opt_.label_equal ? a == b : lat_.leq(a, b); }

  void build_node_candidates() {
    const std::size_t gn = g_.node_count();
    cand_.assign(gn, {});
    for (Index a = 0; a < gn; ++a) {
      const auto& na = g_.node(a);
      const auto ga_out = g_.out_edges(a).size(), ga_in = g_.in_edges(a).size();
      const auto ga_loops = loop_count(g_, a);
      auto consider = [&](Index b) {
        if (!label_ok(na.label, h_.node(b).label)) return;
        const auto hb_out = h_.out_edges(b).size(), hb_in = h_.in_edges(b).size();
        if (opt_.degree_equal) {
          if (ga_out != hb_out || ga_in != hb_in || ga_loops != loop_count(h_, b)) return;
        } else if (opt_.injective) {
          if (ga_out > hb_out || ga_in > hb_in || ga_loops > loop_count(h_, b)) return;
        }
        cand_[a].push_back(b);
      };
      if (!opt_.node_candidates.empty()) {
        for (auto b : opt_.node_candidates[a]) consider(b);
      } else {
        for (Index b = 0; b < h_.node_count(); ++b) consider(b);
      }
    }
  }

  // Edge candidates ignoring endpoints; endpoint compatibility is checked
  // once the node map is fixed.
  void build_edge_candidates() {
    edge_cand_.assign(g_.edge_count(), {});
    for (Index e = 0; e < g_.edge_count(); ++e) {
      const auto& ge = g_.edge(e);
      auto consider = [&](Index f) {
        if (label_ok(ge.label, h_.edge(f).label)) edge_cand_[e].push_back(f);
      };
      if (!opt_.edge_candidates.empty()) {
        for (auto f : opt_.edge_candidates[e]) consider(f);
      } else {
        for (Index f = 0; f < h_.edge_count(); ++f) consider(f);
      }
      edge_allowed_.emplace_back(h_.edge_count(), 0);
      for (auto f : edge_cand_[e]) edge_allowed_.back()[f] = 1;
    }
  }

  // Most-constrained first, then grow along edges so that adjacency checks
  // prune early.
  void build_order() {
    const std::size_t gn = g_.node_count();
    std::vector<char> placed(gn, 0);
    std::vector<std::size_t> links(gn, 0);
    order_.clear();
    check_edges_.assign(gn, {});
    std::vector<Index> position(gn, 0);
    for (std::size_t step = 0; step < gn; ++step) {
      Index best = unassigned;
      for (Index a = 0; a < gn; ++a) {
        if (placed[a]) continue;
        if (best == unassigned || links[a] > links[best] ||
            (links[a] == links[best] && cand_[a].size() < cand_[best].size()))
          best = a;
      }
      placed[best] = 1;
      position[best] = static_cast<Index>(order_.size());
      order_.push_back(best);
      for (auto e : g_.out_edges(best)) ++links[g_.edge(e).tgt];
      for (auto e : g_.in_edges(best)) ++links[g_.edge(e).src];
    }
    // Each edge is checked when the later of its endpoints is assigned.
    for (Index e = 0; e < g_.edge_count(); ++e) {
      const auto& ge = g_.edge(e);
      Index later = position[ge.src] > position[ge.tgt] ? ge.src : ge.tgt;
      check_edges_[position[later]].push_back(e);
    }
  }

  std::size_t compatible_edges(Index e, Index hs, Index ht) const {
    std::size_t n = 0;
    for (auto f : h_.out_edges(hs))
      if (h_.edge(f).tgt == ht && edge_allowed_[e][f]) ++n;
    return n;
  }

  bool assign_node(std::size_t depth) {
    if (depth == order_.size()) return assign_edge(0);
    const Index a = order_[depth];
    for (auto b : cand_[a]) {
      if (opt_.injective && used_nodes_[b]) continue;
      node_map_[a] = b;
      bool feasible = true;
      for (auto e : check_edges_[depth]) {
        const auto& ge = g_.edge(e);
        if (compatible_edges(e, node_map_[ge.src], node_map_[ge.tgt]) == 0) {
          feasible = false;
          break;
        }
      }
      if (feasible) {
        if (opt_.injective) used_nodes_[b] = 1;
        bool keep_going = assign_node(depth + 1);
        if (opt_.injective) used_nodes_[b] = 0;
        if (!keep_going) {
          node_map_[a] = unassigned;
          return false;
        }
      }
      node_map_[a] = unassigned;
    }
    return true;
  }

  bool assign_edge(Index e) {
    if (e == g_.edge_count()) return visit_(node_map_, edge_map_);
    const auto& ge = g_.edge(e);
    const Index hs = node_map_[ge.src], ht = node_map_[ge.tgt];
    for (auto f : h_.out_edges(hs)) {
      if (h_.edge(f).tgt != ht || !edge_allowed_[e][f]) continue;
      if (opt_.injective && used_edges_[f]) continue;
      edge_map_[e] = f;
      if (opt_.injective) used_edges_[f] = 1;
      bool keep_going = assign_edge(e + 1);
      if (opt_.injective) used_edges_[f] = 0;
      if (!keep_going) return false;
    }
    edge_map_[e] = unassigned;
    return true;
  }

  const LabeledGraph& g_;
  const LabeledGraph& h_;
  const SearchOptions& opt_;
  const HomVisitor& visit_;
  const LabelLattice& lat_;

  std::vector<std::vector<Index>> cand_;
  std::vector<std::vector<Index>> edge_cand_;
  std::vector<std::vector<char>> edge_allowed_;
  std::vector<Index> order_;
  std::vector<std::vector<Index>> check_edges_;
  std::vector<Index> node_map_;
  std::vector<Index> edge_map_;
  std::vector<char> used_nodes_;
  std::vector<char> used_edges_;
};

}  // namespace

void search_homomorphisms(const LabeledGraph& g, const LabeledGraph& h, const SearchOptions& options,
                          const HomVisitor& visit) {
  Search(g, h, options, visit).run();
}

}  // namespace pbpo::detail
