#pragma once

#include <boost/dynamic_bitset.hpp>

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace vsplit {

// Vertices are identified by their position in the graph's vertex order.
using Vertex = std::size_t;
using Row = boost::dynamic_bitset<std::uint64_t>;

struct Arrow {
  Vertex tail = 0;
  Vertex head = 0;

  bool is_loop() const { return tail == head; }
  auto operator<=>(const Arrow&) const = default;
};

// Ordered (a, b, c); used for transitive triples.
struct Triple {
  Vertex a = 0;
  Vertex b = 0;
  Vertex c = 0;
  auto operator<=>(const Triple&) const = default;
};

struct Quadruple {
  Vertex a = 0;
  Vertex b = 0;
  Vertex c = 0;
  Vertex d = 0;
  auto operator<=>(const Quadruple&) const = default;
};

/// Finite directed graph without repeated arrows. Loops are stored
/// explicitly; reflexivity is a property, not an invariant.
///
/// The order in which vertices were added is the total vertex order used
/// for every deterministic tie-break in the library.
class DiGraph {
 public:
  DiGraph() = default;
  explicit DiGraph(std::vector<std::string> labels, std::string name = {});

  // Convenience for fixtures: all loops plus the listed non-loop arrows.
  static DiGraph reflexive(
      std::vector<std::string> labels,
      const std::vector<std::pair<std::string, std::string>>& arrows,
      std::string name = {});

  const std::string& name() const { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }

  std::size_t size() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(Vertex v) const { return labels_.at(v); }
  std::optional<Vertex> find(std::string_view label) const;
  // Throws UnknownVertex.
  Vertex at(std::string_view label) const;

  // Throws DuplicateVertex or InvalidLabel.
  Vertex add_vertex(std::string label);

  bool has_arrow(Vertex tail, Vertex head) const { return out_[tail].test(head); }
  bool has_arrow(Arrow a) const { return has_arrow(a.tail, a.head); }
  // Throws DuplicateArrow if present.
  void add_arrow(Vertex tail, Vertex head);
  // Returns false if the arrow was already present.
  bool insert_arrow(Vertex tail, Vertex head);
  void remove_arrow(Vertex tail, Vertex head);
  void add_loops();

  const Row& successors(Vertex v) const { return out_[v]; }
  const Row& predecessors(Vertex v) const { return in_[v]; }

  // Arrows sorted by (tail, head) position.
  std::vector<Arrow> arrows() const;
  // Non-loop arrows only.
  std::vector<Arrow> star_arrows() const;
  std::size_t arrow_count() const;
  std::size_t star_arrow_count() const;

  // Same vertex labels in the same order and the same arrows; ignores name.
  bool same_structure(const DiGraph& other) const;

  friend bool operator==(const DiGraph& a, const DiGraph& b) {
    return a.name_ == b.name_ && a.same_structure(b);
  }

 private:
  std::string name_;
  std::vector<std::string> labels_;
  std::unordered_map<std::string, Vertex> index_;
  std::vector<Row> out_;
  std::vector<Row> in_;
};

bool is_valid_label(std::string_view label);

// Arrow "tail head" using labels.
std::string format_arrow(const DiGraph& g, Arrow a);

// Mapping from the vertices of one graph onto another, by position.
struct VertexBijection {
  std::vector<Vertex> image;
};

/// D*: same vertices, non-loop arrows only.
DiGraph star(const DiGraph& g);

/// Induced subgraph on `subset` (kept in the order given). Loops survive.
DiGraph induced(const DiGraph& g, std::span<const Vertex> subset);
DiGraph induced(const DiGraph& g, const std::vector<std::string>& labels);

/// Smallest transitive supergraph on the same vertex set.
DiGraph transitive_closure(const DiGraph& g);

/// True iff star(g) has no directed cycle.
bool is_star_acyclic(const DiGraph& g);

/// Brute-force search for a bijection carrying A(a) exactly onto A(b).
std::optional<VertexBijection> is_isomorphic(const DiGraph& a, const DiGraph& b);

}  // namespace vsplit
