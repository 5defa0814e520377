#pragma once

// Shorthand for writing small graphs in tests.

#include <initializer_list>
#include <map>
#include <string>
#include <tuple>

#include "pbpo/graph.hpp"

namespace fixture {

struct N {
  std::string id;
  std::string label;
};

struct E {
  std::string id, src, tgt, label;
};

inline pbpo::GraphPtr graph(const pbpo::LatticePtr& lat, std::initializer_list<N> nodes,
                            std::initializer_list<E> edges = {}) {
  pbpo::LabeledGraph g(lat);
  for (const auto& n : nodes) g.add_node(n.id, std::string_view(n.label));
  for (const auto& e : edges) g.add_edge(e.id, e.src, e.tgt, e.label);
  return pbpo::share(std::move(g));
}

inline pbpo::GraphMorphism hom(const pbpo::GraphPtr& dom, const pbpo::GraphPtr& cod,
                               std::map<std::string, std::string> nodes,
                               std::map<std::string, std::string> edges = {}) {
  return pbpo::GraphMorphism::from_ids(dom, cod, nodes, edges);
}

#ifndef PBPO_DATA_DIR
#define PBPO_DATA_DIR "data"
#endif

inline std::string data(const std::string& file) { return std::string(PBPO_DATA_DIR) + "/" + file; }

}  // namespace fixture
