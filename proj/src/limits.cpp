#include "pbpo/limits.hpp"

#include <boost/pending/disjoint_sets.hpp>
#include <set>
#include <stdexcept>
#include <unordered_map>

#include "hom_search.hpp"
#include "pbpo/error.hpp"

namespace pbpo {
namespace {

std::uint64_t pair_key(Index a, Index b) { return (static_cast<std::uint64_t>(a) << 32) | b; }

struct PullbackTables {
  LimitResult result;
  std::unordered_map<std::uint64_t, Index> node_pair;
  std::unordered_map<std::uint64_t, Index> edge_pair;
};

struct PushoutTables {
  LimitResult result;
  // For every object element, one member: (side, index).
  std::vector<std::pair<int, Index>> node_member;
  std::vector<std::pair<int, Index>> edge_member;
};

void require_valid(const GraphMorphism& f, ErrorKind kind, const char* what) {
  auto report = validate_morphism(f);
  if (!report.ok()) throw Error(kind, std::string(what) + " is not a valid morphism: " + report.to_string());
}

PullbackTables build_pullback(const Cospan& c) {
  if (!same_graph(c.left.cod_ptr(), c.right.cod_ptr()))
    throw Error(ErrorKind::invalid_cospan, "cospan legs have different codomains");
  require_valid(c.left, ErrorKind::invalid_cospan, "left leg");
  require_valid(c.right, ErrorKind::invalid_cospan, "right leg");
  const auto& B = c.left.dom();
  const auto& C = c.right.dom();
  const auto& D = c.left.cod();
  const auto& lat = B.lattice();

  // Group C elements by image so each b meets only its partners.
  std::vector<std::vector<Index>> c_nodes_over(D.node_count()), c_edges_over(D.edge_count());
  for (Index y = 0; y < C.node_count(); ++y) c_nodes_over[c.right.node(y)].push_back(y);
  for (Index y = 0; y < C.edge_count(); ++y) c_edges_over[c.right.edge(y)].push_back(y);

  LabeledGraph P(B.lattice_ptr());
  PullbackTables t{.result = {nullptr, identity(c.left.dom_ptr()), identity(c.right.dom_ptr()), {}, {}}, .node_pair = {}, .edge_pair = {}};
  std::vector<Index> left_nodes, right_nodes, left_edges, right_edges;
  for (Index x = 0; x < B.node_count(); ++x) {
    for (Index y : c_nodes_over[c.left.node(x)]) {
      const auto& bn = B.node(x);
      const auto& cn = C.node(y);
      std::string id = bn.id + "|" + cn.id;
      t.node_pair[pair_key(x, y)] = P.add_node(id, lat.meet(bn.label, cn.label));
      left_nodes.push_back(x);
      right_nodes.push_back(y);
      t.result.node_trace[id] = {{0, bn.id}, {1, cn.id}};
    }
  }
  for (Index x = 0; x < B.edge_count(); ++x) {
    for (Index y : c_edges_over[c.left.edge(x)]) {
      const auto& be = B.edge(x);
      const auto& ce = C.edge(y);
      std::string id = be.id + "|" + ce.id;
      Index src = t.node_pair.at(pair_key(be.src, ce.src));
      Index tgt = t.node_pair.at(pair_key(be.tgt, ce.tgt));
      t.edge_pair[pair_key(x, y)] = P.add_edge(id, src, tgt, lat.meet(be.label, ce.label));
      left_edges.push_back(x);
      right_edges.push_back(y);
      t.result.edge_trace[id] = {{0, be.id}, {1, ce.id}};
    }
  }
  auto obj = share(std::move(P));
  t.result.object = obj;
  t.result.left_leg = GraphMorphism(obj, c.left.dom_ptr(), std::move(left_nodes), std::move(left_edges));
  t.result.right_leg = GraphMorphism(obj, c.right.dom_ptr(), std::move(right_nodes), std::move(right_edges));

  // Monomorphisms are stable under pullback.
  if (c.left.is_injective() && !t.result.right_leg.is_injective())
    throw std::logic_error("pullback of an injective morphism is not injective");
  if (c.right.is_injective() && !t.result.left_leg.is_injective())
    throw std::logic_error("pullback of an injective morphism is not injective");
  return t;
}

PushoutTables build_pushout(const Span& s, std::string_view fresh_prefix) {
  if (!same_graph(s.left.dom_ptr(), s.right.dom_ptr()))
    throw Error(ErrorKind::invalid_span, "span legs have different domains");
  require_valid(s.left, ErrorKind::invalid_span, "left leg");
  require_valid(s.right, ErrorKind::invalid_span, "right leg");
  const auto& A = s.left.dom();
  const auto& B = s.left.cod();
  const auto& C = s.right.cod();
  const auto& lat = A.lattice();
  if (!same_lattice(B.lattice(), C.lattice())) throw Error(ErrorKind::invalid_span, "span over different lattices");

  // Union-find over B + C, seeded with left(x) ~ right(x).
  auto classes = [](std::size_t nb, std::size_t nc, auto&& seed) {
    const std::size_t n = nb + nc;
    std::vector<std::size_t> rank(n), parent(n);
    boost::disjoint_sets<std::size_t*, std::size_t*> sets(rank.data(), parent.data());
    for (std::size_t i = 0; i < n; ++i) sets.make_set(i);
    seed(sets, nb);
    std::vector<std::size_t> root(n);
    for (std::size_t i = 0; i < n; ++i) root[i] = sets.find_set(i);
    return root;
  };
  auto node_root = classes(B.node_count(), C.node_count(), [&](auto& sets, std::size_t nb) {
    for (Index x = 0; x < A.node_count(); ++x) sets.union_set(std::size_t{s.left.node(x)}, nb + s.right.node(x));
  });
  auto edge_root = classes(B.edge_count(), C.edge_count(), [&](auto& sets, std::size_t nb) {
    for (Index x = 0; x < A.edge_count(); ++x) sets.union_set(std::size_t{s.left.edge(x)}, nb + s.right.edge(x));
  });

  const std::size_t nb = B.node_count(), eb = B.edge_count();
  std::set<std::string> taken;
  for (const auto& n : B.nodes()) taken.insert(n.id);
  std::set<std::string> taken_edges;
  for (const auto& e : B.edges()) taken_edges.insert(e.id);
  auto fresh = [&](std::set<std::string>& used, const std::string& base) {
    std::string id = std::string(fresh_prefix) + base;
    while (used.contains(id)) id += "'";
    used.insert(id);
    return id;
  };

  // Classes are emitted in order of their first member, so B elements keep
  // their relative order and come first.
  std::unordered_map<std::size_t, Index> node_class;
  std::vector<std::vector<std::size_t>> node_members;
  for (std::size_t i = 0; i < node_root.size(); ++i) {
    auto [it, inserted] = node_class.emplace(node_root[i], static_cast<Index>(node_members.size()));
    if (inserted) node_members.emplace_back();
    node_members[it->second].push_back(i);
  }
  std::unordered_map<std::size_t, Index> edge_class;
  std::vector<std::vector<std::size_t>> edge_members;
  for (std::size_t i = 0; i < edge_root.size(); ++i) {
    auto [it, inserted] = edge_class.emplace(edge_root[i], static_cast<Index>(edge_members.size()));
    if (inserted) edge_members.emplace_back();
    edge_members[it->second].push_back(i);
  }

  auto node_label = [&](std::size_t i) { return i < nb ? B.node(i).label : C.node(i - nb).label; };
  auto edge_label = [&](std::size_t i) { return i < eb ? B.edge(i).label : C.edge(i - eb).label; };
  auto node_origin = [&](std::size_t i) { return i < nb ? Origin{0, B.node(i).id} : Origin{1, C.node(i - nb).id}; };
  auto edge_origin = [&](std::size_t i) { return i < eb ? Origin{0, B.edge(i).id} : Origin{1, C.edge(i - eb).id}; };

  LabeledGraph Q(B.lattice_ptr());
  PushoutTables t{.result = {nullptr, identity(s.left.cod_ptr()), identity(s.right.cod_ptr()), {}, {}}, .node_member = {}, .edge_member = {}};
  for (const auto& members : node_members) {
    std::vector<Label> labels;
    std::vector<Origin> origins;
    for (auto i : members) {
      labels.push_back(node_label(i));
      origins.push_back(node_origin(i));
    }
    const auto first = members.front();
    std::string id = first < nb ? B.node(first).id : fresh(taken, C.node(first - nb).id);
    Q.add_node(id, lat.join(labels));
    t.result.node_trace[id] = std::move(origins);
    t.node_member.emplace_back(first < nb ? 0 : 1, static_cast<Index>(first < nb ? first : first - nb));
  }
  auto endpoint_class = [&](std::size_t edge_i, bool source) -> Index {
    std::size_t n = edge_i < eb ? (source ? B.edge(edge_i).src : B.edge(edge_i).tgt)
                                : nb + (source ? C.edge(edge_i - eb).src : C.edge(edge_i - eb).tgt);
    return node_class.at(node_root[n]);
  };
  for (const auto& members : edge_members) {
    std::vector<Label> labels;
    std::vector<Origin> origins;
    for (auto i : members) {
      labels.push_back(edge_label(i));
      origins.push_back(edge_origin(i));
    }
    const auto first = members.front();
    std::string id = first < eb ? B.edge(first).id : fresh(taken_edges, C.edge(first - eb).id);
    Q.add_edge(id, endpoint_class(first, true), endpoint_class(first, false), lat.join(labels));
    t.result.edge_trace[id] = std::move(origins);
    t.edge_member.emplace_back(first < eb ? 0 : 1, static_cast<Index>(first < eb ? first : first - eb));
  }

  std::vector<Index> ln(nb), rn(C.node_count()), le(eb), re(C.edge_count());
  for (std::size_t i = 0; i < nb; ++i) ln[i] = node_class.at(node_root[i]);
  for (std::size_t i = 0; i < rn.size(); ++i) rn[i] = node_class.at(node_root[nb + i]);
  for (std::size_t i = 0; i < eb; ++i) le[i] = edge_class.at(edge_root[i]);
  for (std::size_t i = 0; i < re.size(); ++i) re[i] = edge_class.at(edge_root[eb + i]);
  auto obj = share(std::move(Q));
  t.result.object = obj;
  t.result.left_leg = GraphMorphism(s.left.cod_ptr(), obj, std::move(ln), std::move(le));
  t.result.right_leg = GraphMorphism(s.right.cod_ptr(), obj, std::move(rn), std::move(re));
  return t;
}

bool maps_equal(const GraphMorphism& f, const GraphMorphism& g) {
  return std::equal(f.node_map().begin(), f.node_map().end(), g.node_map().begin(), g.node_map().end()) &&
         std::equal(f.edge_map().begin(), f.edge_map().end(), g.edge_map().begin(), g.edge_map().end());
}

// Comparison morphism is an isomorphism: bijective and label-exact.
bool iso_maps(std::span<const Index> nodes, std::span<const Index> edges, const LabeledGraph& from,
              const LabeledGraph& to) {
  if (from.node_count() != to.node_count() || from.edge_count() != to.edge_count()) return false;
  std::vector<char> hit_n(to.node_count(), 0), hit_e(to.edge_count(), 0);
  for (Index i = 0; i < nodes.size(); ++i) {
    if (hit_n[nodes[i]]++ || from.node(i).label != to.node(nodes[i]).label) return false;
  }
  for (Index i = 0; i < edges.size(); ++i) {
    if (hit_e[edges[i]]++ || from.edge(i).label != to.edge(edges[i]).label) return false;
  }
  return true;
}

std::vector<GraphMorphism> all_homs(const GraphPtr& from, const GraphPtr& to) {
  std::vector<GraphMorphism> out;
  detail::search_homomorphisms(*from, *to, {}, [&](std::span<const Index> n, std::span<const Index> e) {
    out.emplace_back(from, to, std::vector<Index>(n.begin(), n.end()), std::vector<Index>(e.begin(), e.end()));
    return true;
  });
  return out;
}

std::string map_key(const GraphMorphism& f) {
  std::string k;
  for (auto v : f.node_map()) k += std::to_string(v) + ",";
  k += ";";
  for (auto v : f.edge_map()) k += std::to_string(v) + ",";
  return k;
}

}  // namespace

LimitResult pushout(const Span& span, std::string_view fresh_prefix) {
  return build_pushout(span, fresh_prefix).result;
}

LimitResult pullback(const Cospan& cospan) { return build_pullback(cospan).result; }

Preimage preimage(const GraphMorphism& t, const GraphMorphism& f) {
  if (!t.is_injective()) throw Error(ErrorKind::not_injective, "preimage needs an injective selector");
  auto pb = pullback(Cospan{t, f});
  // The projection to dom(f) is injective, so dom(f) ids name the result.
  const auto& P = *pb.object;
  LabeledGraph g(P.lattice_ptr());
  for (Index i = 0; i < P.node_count(); ++i) g.add_node(f.dom().node(pb.right_leg.node(i)).id, P.node(i).label);
  for (Index i = 0; i < P.edge_count(); ++i) {
    const auto& e = P.edge(i);
    g.add_edge(f.dom().edge(pb.right_leg.edge(i)).id, e.src, e.tgt, e.label);
  }
  auto gp = share(std::move(g));
  auto n_in = std::vector<Index>(pb.right_leg.node_map().begin(), pb.right_leg.node_map().end());
  auto e_in = std::vector<Index>(pb.right_leg.edge_map().begin(), pb.right_leg.edge_map().end());
  auto n_pat = std::vector<Index>(pb.left_leg.node_map().begin(), pb.left_leg.node_map().end());
  auto e_pat = std::vector<Index>(pb.left_leg.edge_map().begin(), pb.left_leg.edge_map().end());
  return {gp, GraphMorphism(gp, f.dom_ptr(), std::move(n_in), std::move(e_in)),
          GraphMorphism(gp, t.dom_ptr(), std::move(n_pat), std::move(e_pat))};
}

bool is_pullback_square(const PullbackSquare& sq, Verification mode) {
  if (!same_graph(sq.to_left.dom_ptr(), sq.to_right.dom_ptr()))
    throw Error(ErrorKind::invalid_cospan, "square legs do not share a corner");
  if (!same_graph(sq.to_left.cod_ptr(), sq.cospan.left.dom_ptr()) ||
      !same_graph(sq.to_right.cod_ptr(), sq.cospan.right.dom_ptr()))
    throw Error(ErrorKind::invalid_cospan, "square legs do not meet the cospan");
  if (!maps_equal(compose(sq.to_left, sq.cospan.left), compose(sq.to_right, sq.cospan.right)))
    throw Error(ErrorKind::non_commuting_square, "pullback square does not commute");
  if (!validate_morphism(sq.to_left).ok() || !validate_morphism(sq.to_right).ok()) return false;

  auto t = build_pullback(sq.cospan);
  const auto& P = sq.to_left.dom();
  std::vector<Index> nodes(P.node_count()), edges(P.edge_count());
  for (Index i = 0; i < P.node_count(); ++i) nodes[i] = t.node_pair.at(pair_key(sq.to_left.node(i), sq.to_right.node(i)));
  for (Index i = 0; i < P.edge_count(); ++i) edges[i] = t.edge_pair.at(pair_key(sq.to_left.edge(i), sq.to_right.edge(i)));
  bool ok = iso_maps(nodes, edges, P, *t.result.object);
  if (ok && mode == Verification::exhaustive) {
    auto probes = pullback_probes(sq);
    ok = check_pullback_universal(sq, probes).holds;
  }
  return ok;
}

bool is_pushout_square(const PushoutSquare& sq, Verification mode) {
  if (!same_graph(sq.from_left.cod_ptr(), sq.from_right.cod_ptr()))
    throw Error(ErrorKind::invalid_span, "square legs do not share a corner");
  if (!same_graph(sq.from_left.dom_ptr(), sq.span.left.cod_ptr()) ||
      !same_graph(sq.from_right.dom_ptr(), sq.span.right.cod_ptr()))
    throw Error(ErrorKind::invalid_span, "square legs do not meet the span");
  if (!maps_equal(compose(sq.span.left, sq.from_left), compose(sq.span.right, sq.from_right)))
    throw Error(ErrorKind::non_commuting_square, "pushout square does not commute");
  if (!validate_morphism(sq.from_left).ok() || !validate_morphism(sq.from_right).ok()) return false;

  auto t = build_pushout(sq.span, "r:");
  const auto& P = *t.result.object;
  std::vector<Index> nodes(P.node_count()), edges(P.edge_count());
  for (Index i = 0; i < P.node_count(); ++i) {
    auto [side, x] = t.node_member[i];
    nodes[i] = side == 0 ? sq.from_left.node(x) : sq.from_right.node(x);
  }
  for (Index i = 0; i < P.edge_count(); ++i) {
    auto [side, x] = t.edge_member[i];
    edges[i] = side == 0 ? sq.from_left.edge(x) : sq.from_right.edge(x);
  }
  bool ok = iso_maps(nodes, edges, P, sq.from_left.cod());
  if (ok && mode == Verification::exhaustive) {
    auto probes = pushout_probes(sq);
    ok = check_pushout_universal(sq, probes).holds;
  }
  return ok;
}

UniversalCheck check_pullback_universal(const PullbackSquare& sq, std::span<const GraphPtr> candidates) {
  UniversalCheck result;
  const auto& corner = sq.to_left.dom_ptr();
  for (const auto& Q : candidates) {
    // Count mediators per induced pair of legs.
    std::unordered_map<std::string, std::size_t> mediators;
    for (const auto& h : all_homs(Q, corner))
      ++mediators[map_key(compose(h, sq.to_left)) + "/" + map_key(compose(h, sq.to_right))];
    auto to_b = all_homs(Q, sq.cospan.left.dom_ptr());
    auto to_c = all_homs(Q, sq.cospan.right.dom_ptr());
    for (const auto& q1 : to_b) {
      auto via_b = compose(q1, sq.cospan.left);
      for (const auto& q2 : to_c) {
        if (!maps_equal(via_b, compose(q2, sq.cospan.right))) continue;
        ++result.competitors;
        auto it = mediators.find(map_key(q1) + "/" + map_key(q2));
        std::size_t count = it == mediators.end() ? 0 : it->second;
        if (count != 1) {
          result.holds = false;
          result.failure = std::to_string(count) + " mediators from a competing span with " +
                           std::to_string(Q->node_count()) + " nodes";
          return result;
        }
      }
    }
  }
  return result;
}

UniversalCheck check_pushout_universal(const PushoutSquare& sq, std::span<const GraphPtr> candidates) {
  UniversalCheck result;
  const auto& corner = sq.from_left.cod_ptr();
  for (const auto& Q : candidates) {
    std::unordered_map<std::string, std::size_t> mediators;
    for (const auto& h : all_homs(corner, Q))
      ++mediators[map_key(compose(sq.from_left, h)) + "/" + map_key(compose(sq.from_right, h))];
    auto from_b = all_homs(sq.span.left.cod_ptr(), Q);
    auto from_c = all_homs(sq.span.right.cod_ptr(), Q);
    for (const auto& q1 : from_b) {
      auto via_b = compose(sq.span.left, q1);
      for (const auto& q2 : from_c) {
        if (!maps_equal(via_b, compose(sq.span.right, q2))) continue;
        ++result.competitors;
        auto it = mediators.find(map_key(q1) + "/" + map_key(q2));
        std::size_t count = it == mediators.end() ? 0 : it->second;
        if (count != 1) {
          result.holds = false;
          result.failure = std::to_string(count) + " mediators into a competing cospan with " +
                           std::to_string(Q->node_count()) + " nodes";
          return result;
        }
      }
    }
  }
  return result;
}

std::vector<GraphPtr> pullback_probes(const PullbackSquare& sq) {
  // Single nodes and single edges at every label: every element of a
  // competing span is seen through one of these.
  const auto& lat_ptr = sq.to_left.dom().lattice_ptr();
  const auto& lat = *lat_ptr;
  std::vector<GraphPtr> out{sq.to_left.dom_ptr(), pullback(sq.cospan).object};
  for (std::uint32_t i = 0; i < lat.size(); ++i) {
    LabeledGraph node(lat_ptr);
    node.add_node("v", Label{i});
    out.push_back(share(std::move(node)));
    LabeledGraph edge(lat_ptr);
    edge.add_node("s", lat.bottom());
    edge.add_node("t", lat.bottom());
    edge.add_edge("e", 0, 1, Label{i});
    out.push_back(share(std::move(edge)));
    LabeledGraph loop(lat_ptr);
    loop.add_node("v", lat.bottom());
    loop.add_edge("e", 0, 0, Label{i});
    out.push_back(share(std::move(loop)));
  }
  return out;
}

std::vector<GraphPtr> pushout_probes(const PushoutSquare& sq) {
  const auto& lat_ptr = sq.from_left.cod().lattice_ptr();
  LabeledGraph terminal(lat_ptr);
  terminal.add_node("*", lat_ptr->top());
  terminal.add_edge("*", 0, 0, lat_ptr->top());
  return {sq.from_left.cod_ptr(), pushout(sq.span).object, share(std::move(terminal))};
}

}  // namespace pbpo
