#pragma once

#include <optional>
#include <vector>

#include "pbpo/graph.hpp"

namespace pbpo {

struct PbpoRule;

/// All homomorphisms g -> h (structure and label condition), sorted by node
/// assignment then edge assignment. With injective, only injections.
std::vector<GraphMorphism> enumerate_homomorphisms(const GraphPtr& g, const GraphPtr& h, bool injective = false);

/// A strong match: the square  L =id= L,  m : L -> G,  t_L : L -> L',
/// alpha : G -> L'  is a pullback.
struct Match {
  GraphMorphism m;      // L -> G, injective
  GraphMorphism alpha;  // G -> L'
  GraphMorphism typing; // t_L : L -> L'
};

/// Pulls t_L back along alpha and accepts iff the projection onto L is an
/// isomorphism; m is then read off the other projection.
/// Throws ErrorKind::typing_mismatch when cod(alpha) != cod(t_L) and
/// ErrorKind::not_injective when t_L is not injective.
std::optional<Match> check_strong_match(const GraphMorphism& typing, const GraphMorphism& alpha);

enum class MatchSearch {
  /// Fix m first, then search adherences that keep the context off t_L(L).
  pruned,
  /// Enumerate every adherence G -> L' and filter by check_strong_match.
  exhaustive,
};

/// Every strong match of the rule's context typing in g, keyed by (m, alpha)
/// and sorted by m then alpha. Throws ErrorKind::invalid_rule.
std::vector<Match> find_matches(const PbpoRule& rule, const GraphPtr& g, MatchSearch search = MatchSearch::pruned);

/// Same as find_matches but for a bare typing t_L : L -> L'.
std::vector<Match> find_strong_matches(const GraphMorphism& typing, const GraphPtr& g,
                                       MatchSearch search = MatchSearch::pruned);

}  // namespace pbpo
