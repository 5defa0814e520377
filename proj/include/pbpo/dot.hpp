#pragma once

#include <string>
#include <string_view>

#include "pbpo/graph.hpp"
#include "pbpo/rewrite.hpp"

namespace pbpo {

/// Graphviz digraph of a labeled graph. Nodes show "id : label"; edges
/// show their label. Over a BDD lattice, 0-edges are dashed and the edge
/// labels are left off.
std::string emit_dot(const LabeledGraph& g, std::string_view name = "G");

/// One cluster per object of the step diagram (L, K, R, L', K', G_L, G_K,
/// G_R) and one dotted arrow per node for each morphism between them.
std::string emit_dot(const RewriteTrace& trace);

}  // namespace pbpo
