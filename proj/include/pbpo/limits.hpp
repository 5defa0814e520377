#pragma once

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pbpo/graph.hpp"

namespace pbpo {

/// B <-left- A -right-> C
struct Span {
  GraphMorphism left;
  GraphMorphism right;
};

/// B -left-> D <-right- C
struct Cospan {
  GraphMorphism left;
  GraphMorphism right;
};

/// Where a constructed element came from: side 0 is the left object of the
/// (co)span, side 1 the right one.
struct Origin {
  int side;
  std::string id;
  friend bool operator==(const Origin&, const Origin&) = default;
};

struct LimitResult {
  GraphPtr object;
  GraphMorphism left_leg;   // pullback: object -> B;  pushout: B -> object
  GraphMorphism right_leg;  // pullback: object -> C;  pushout: C -> object
  std::map<std::string, std::vector<Origin>> node_trace;
  std::map<std::string, std::vector<Origin>> edge_trace;
};

/// Gluing of B and C along A: (B + C) modulo left(x) ~ right(x). Each class
/// is labeled with the join of its members. A class containing elements of
/// B takes the id of its first B element; classes made only of C elements
/// are named fresh_prefix + the id of their first C element.
/// Throws ErrorKind::invalid_span.
LimitResult pushout(const Span& span, std::string_view fresh_prefix = "r:");

/// Fibered product, computed on nodes and edges independently: all pairs
/// (b, c) with left(b) = right(c), named "b|c" and labeled with the meet of
/// the two labels. Throws ErrorKind::invalid_cospan.
LimitResult pullback(const Cospan& cospan);

struct Preimage {
  GraphPtr graph;           // uses the ids of dom(f)
  GraphMorphism inclusion;  // graph -> dom(f)
  GraphMorphism to_pattern; // graph -> dom(t)
};

/// The part of dom(f) that f sends onto the image of the injective t,
/// computed as a pullback of (t, f). Throws ErrorKind::not_injective.
Preimage preimage(const GraphMorphism& t, const GraphMorphism& f);

/// P with legs to B and C over the cospan B -> D <- C.
struct PullbackSquare {
  GraphMorphism to_left;   // P -> B
  GraphMorphism to_right;  // P -> C
  Cospan cospan;
};

/// A -> B, A -> C with legs B -> Q and C -> Q.
struct PushoutSquare {
  Span span;
  GraphMorphism from_left;   // B -> Q
  GraphMorphism from_right;  // C -> Q
};

enum class Verification {
  /// Compare the corner against the canonical construction through the
  /// unique leg-compatible comparison morphism.
  canonical,
  /// Additionally enumerate every competing (co)span into a set of probe
  /// objects and count mediating morphisms.
  exhaustive,
};

/// Throws ErrorKind::non_commuting_square when the square does not commute.
bool is_pullback_square(const PullbackSquare& square, Verification mode = Verification::canonical);
bool is_pushout_square(const PushoutSquare& square, Verification mode = Verification::canonical);

struct UniversalCheck {
  bool holds = true;
  std::size_t competitors = 0;  // competing (co)spans examined
  std::string failure;
};

/// Universal property by enumeration: for every candidate Q and every
/// commuting pair of morphisms Q -> B, Q -> C there is exactly one mediator
/// Q -> P compatible with both legs.
UniversalCheck check_pullback_universal(const PullbackSquare& square, std::span<const GraphPtr> candidates);
/// Dual: for every Q and commuting B -> Q, C -> Q exactly one P -> Q.
UniversalCheck check_pushout_universal(const PushoutSquare& square, std::span<const GraphPtr> candidates);

/// Probe objects used by Verification::exhaustive.
std::vector<GraphPtr> pullback_probes(const PullbackSquare& square);
std::vector<GraphPtr> pushout_probes(const PushoutSquare& square);

}  // namespace pbpo
