#pragma once

// Backtracking homomorphism search shared by isomorphism testing and
// matching. Internal header.

#include <functional>
#include <span>
#include <vector>

#include "pbpo/graph.hpp"

namespace pbpo::detail {

struct SearchOptions {
  bool injective = false;
  bool label_equal = false;   // labels must coincide instead of label(x) <= label(f(x))
  bool degree_equal = false;  // in/out/loop degrees must coincide (isomorphism pruning)
  // Optional per-element restriction of allowed images; empty = unrestricted.
  std::vector<std::vector<Index>> node_candidates;
  std::vector<std::vector<Index>> edge_candidates;
};

/// visit returns false to stop the search.
using HomVisitor = std::function<bool(std::span<const Index> nodes, std::span<const Index> edges)>;

void search_homomorphisms(const LabeledGraph& g, const LabeledGraph& h, const SearchOptions& options,
                          const HomVisitor& visit);

}  // namespace pbpo::detail
