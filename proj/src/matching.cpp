#include "pbpo/matching.hpp"

#include <algorithm>

#include "hom_search.hpp"
#include "pbpo/error.hpp"
#include "pbpo/limits.hpp"
#include "pbpo/rewrite.hpp"

namespace pbpo {
namespace {

bool map_less(const GraphMorphism& a, const GraphMorphism& b) {
  auto an = a.node_map(), bn = b.node_map();
  if (!std::equal(an.begin(), an.end(), bn.begin(), bn.end()))
    return std::lexicographical_compare(an.begin(), an.end(), bn.begin(), bn.end());
  auto ae = a.edge_map(), be = b.edge_map();
  return std::lexicographical_compare(ae.begin(), ae.end(), be.begin(), be.end());
}

bool same_maps(const GraphMorphism& a, const GraphMorphism& b) { return !map_less(a, b) && !map_less(b, a); }

std::vector<GraphMorphism> collect(const GraphPtr& g, const GraphPtr& h, const detail::SearchOptions& options) {
  std::vector<GraphMorphism> out;
  detail::search_homomorphisms(*g, *h, options, [&](std::span<const Index> n, std::span<const Index> e) {
    out.emplace_back(g, h, std::vector<Index>(n.begin(), n.end()), std::vector<Index>(e.begin(), e.end()));
    return true;
  });
  std::sort(out.begin(), out.end(), map_less);
  return out;
}

}  // namespace

std::vector<GraphMorphism> enumerate_homomorphisms(const GraphPtr& g, const GraphPtr& h, bool injective) {
  if (!same_lattice(g->lattice(), h->lattice())) return {};
  detail::SearchOptions options;
  options.injective = injective;
  return collect(g, h, options);
}

std::optional<Match> check_strong_match(const GraphMorphism& typing, const GraphMorphism& alpha) {
  if (!same_graph(typing.cod_ptr(), alpha.cod_ptr()))
    throw Error(ErrorKind::typing_mismatch, "adherence and context typing have different codomains");
  if (!typing.is_injective()) throw Error(ErrorKind::not_injective, "context typing must be injective");
  if (auto report = validate_morphism(alpha); !report.ok())
    throw Error(ErrorKind::typing_mismatch, "adherence is not a morphism: " + report.to_string());

  auto pb = pullback(Cospan{alpha, typing});
  if (!pb.right_leg.is_isomorphism()) return std::nullopt;
  auto m = compose(inverse(pb.right_leg), pb.left_leg);
  if (!m.is_injective()) throw std::logic_error("strong match produced a non-injective match morphism");
  return Match{std::move(m), alpha, typing};
}

std::vector<Match> find_strong_matches(const GraphMorphism& typing, const GraphPtr& g, MatchSearch search) {
  const auto& L = typing.dom_ptr();
  const auto& Lp = typing.cod_ptr();
  if (!typing.is_injective()) throw Error(ErrorKind::not_injective, "context typing must be injective");
  std::vector<Match> out;
  if (!same_lattice(g->lattice(), Lp->lattice())) return out;

  if (search == MatchSearch::exhaustive) {
    for (auto& alpha : enumerate_homomorphisms(g, Lp))
      if (auto match = check_strong_match(typing, alpha)) out.push_back(std::move(*match));
  } else {
    // Elements outside t_L(L) are the only legal images for the context.
    std::vector<char> pattern_node(Lp->node_count(), 0), pattern_edge(Lp->edge_count(), 0);
    for (auto v : typing.node_map()) pattern_node[v] = 1;
    for (auto e : typing.edge_map()) pattern_edge[e] = 1;
    std::vector<Index> context_nodes, context_edges;
    for (Index v = 0; v < Lp->node_count(); ++v)
      if (!pattern_node[v]) context_nodes.push_back(v);
    for (Index e = 0; e < Lp->edge_count(); ++e)
      if (!pattern_edge[e]) context_edges.push_back(e);

    for (const auto& m : enumerate_homomorphisms(L, g, true)) {
      detail::SearchOptions options;
      options.node_candidates.assign(g->node_count(), context_nodes);
      options.edge_candidates.assign(g->edge_count(), context_edges);
      for (Index a = 0; a < L->node_count(); ++a) options.node_candidates[m.node(a)] = {typing.node(a)};
      for (Index a = 0; a < L->edge_count(); ++a) options.edge_candidates[m.edge(a)] = {typing.edge(a)};
      for (auto& alpha : collect(g, Lp, options)) {
        auto match = check_strong_match(typing, alpha);
        if (!match) continue;
        if (!same_maps(match->m, m)) throw std::logic_error("strong match disagrees with the fixed match morphism");
        out.push_back(std::move(*match));
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const Match& a, const Match& b) {
    if (!same_maps(a.m, b.m)) return map_less(a.m, b.m);
    return map_less(a.alpha, b.alpha);
  });
  return out;
}

std::vector<Match> find_matches(const PbpoRule& rule, const GraphPtr& g, MatchSearch search) {
  if (auto report = validate_rule(rule); !report.ok())
    throw Error(ErrorKind::invalid_rule, "rule '" + rule.name + "': " + report.to_string());
  return find_strong_matches(rule.tL, g, search);
}

}  // namespace pbpo
