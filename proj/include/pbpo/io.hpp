#pragma once

#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pbpo/graph.hpp"
#include "pbpo/limits.hpp"
#include "pbpo/rewrite.hpp"

namespace pbpo {

/// A square stored as four morphism names.
///   pullback: a = P->B, b = P->C, c = B->D, d = C->D
///   pushout:  a = A->B, b = A->C, c = B->Q, d = C->Q
struct SquareSpec {
  enum class Kind { pullback, pushout };
  Kind kind = Kind::pullback;
  std::string a, b, c, d;
  friend bool operator==(const SquareSpec&, const SquareSpec&) = default;
};

/// Named objects loaded from interchange files. Every object has passed its
/// validator; lookups throw ErrorKind::dangling_reference.
struct Workspace {
  std::map<std::string, LatticePtr> lattices;
  std::map<std::string, GraphPtr> graphs;
  std::map<std::string, GraphMorphism> morphisms;
  std::map<std::string, PbpoRule> rules;
  std::map<std::string, SquareSpec> squares;

  LatticePtr lattice(std::string_view name) const;
  GraphPtr graph(std::string_view name) const;
  const GraphMorphism& morphism(std::string_view name) const;
  const PbpoRule& rule(std::string_view name) const;
  const SquareSpec& square(std::string_view name) const;

  PullbackSquare pullback_square(std::string_view name) const;
  PushoutSquare pushout_square(std::string_view name) const;

  /// Structural equality: same names, equal objects.
  bool operator==(const Workspace& other) const;
};

/// Loads and cross-links one or more files; names are global across them
/// and must be unique per kind. Throws ErrorKind::parse_error (with file,
/// line and field path), ErrorKind::dangling_reference, or the validator's
/// error kind (invalid_graph, invalid_morphism, invalid_rule, ...).
Workspace parse_workspace(std::span<const std::filesystem::path> paths);
Workspace parse_workspace(const std::filesystem::path& path);
Workspace parse_workspace_text(std::string_view text, std::string_view source = "<text>");

/// Canonical text: sorted keys, two-space indent, trailing newline.
/// parse_workspace_text(serialize(ws)) == ws.
std::string serialize(const Workspace& ws);

/// Single-object records in the same format. A graph's lattice is written
/// by name when lattice_name is given and inline otherwise.
std::string serialize_graph(const LabeledGraph& g, std::string_view lattice_name = {});
std::string serialize_morphism(const GraphMorphism& f, std::string_view dom_name, std::string_view cod_name);
/// All the objects of a trace, as a workspace file.
std::string serialize_trace(const RewriteTrace& trace);

/// Wraps a BDD graph into a workspace with one lattice "bdd" and one graph.
Workspace bdd_workspace(const GraphPtr& g, std::string_view graph_name = "bdd");

}  // namespace pbpo
