#pragma once

#include <random>
#include <string>
#include <utility>
#include <vector>

#include "vsplit/dg_format.hpp"
#include "vsplit/digraph.hpp"

namespace vsplit::testing {

inline DiGraph fixture(const std::string& name) {
  return read_digraph_file(std::string(VSPLIT_FIXTURE_DIR) + "/" + name + ".dg");
}

// Reflexive graph from non-loop arrows.
inline DiGraph graph(std::vector<std::string> labels,
                     std::vector<std::pair<std::string, std::string>> arrows) {
  return DiGraph::reflexive(std::move(labels), std::move(arrows));
}

inline std::vector<std::string> labels_of(const DiGraph& g, const std::vector<Vertex>& vs) {
  std::vector<std::string> out;
  for (Vertex v : vs) out.push_back(g.label(v));
  return out;
}

inline std::vector<std::pair<std::string, std::string>> arrow_labels(const DiGraph& g,
                                                                     const std::vector<Arrow>& as) {
  std::vector<std::pair<std::string, std::string>> out;
  for (Arrow a : as) out.emplace_back(g.label(a.tail), g.label(a.head));
  return out;
}

// Random digraph on n vertices; every off-diagonal pair present with
// probability p, loops kept when `reflexive`.
inline DiGraph random_graph(std::mt19937& rng, std::size_t n, double p, bool reflexive = true) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back("v" + std::to_string(i));
  DiGraph g(labels);
  std::bernoulli_distribution coin(p);
  for (Vertex i = 0; i < n; ++i)
    for (Vertex j = 0; j < n; ++j)
      if (i == j ? reflexive : coin(rng)) g.add_arrow(i, j);
  return g;
}

// Copy of g with vertices listed in the order given by perm (new index k
// holds old vertex perm[k]) and relabelled.
inline DiGraph permuted(const DiGraph& g, const std::vector<Vertex>& perm) {
  std::vector<std::string> labels;
  for (std::size_t k = 0; k < perm.size(); ++k) labels.push_back("p" + std::to_string(k));
  DiGraph h(labels);
  std::vector<Vertex> where(perm.size());
  for (std::size_t k = 0; k < perm.size(); ++k) where[perm[k]] = k;
  for (Arrow a : g.arrows()) h.add_arrow(where[a.tail], where[a.head]);
  return h;
}

}  // namespace vsplit::testing
