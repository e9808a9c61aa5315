#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "vsplit/digraph.hpp"
#include "vsplit/errors.hpp"

namespace vsplit {

/// A vertex function from `source` (the expansion) onto `target` (the
/// compression). Totality is enforced at construction; surjectivity and the
/// three arrow conditions are checked by verify_compression().
class CompressionMap {
 public:
  // Throws DomainMismatch unless assignment has one in-range entry per
  // source vertex.
  CompressionMap(DiGraph source, DiGraph target, std::vector<Vertex> assignment);

  static CompressionMap identity(const DiGraph& g);

  const DiGraph& source() const { return source_; }
  const DiGraph& target() const { return target_; }
  const std::vector<Vertex>& assignment() const { return assignment_; }
  Vertex operator()(Vertex v) const { return assignment_.at(v); }

 private:
  DiGraph source_;
  DiGraph target_;
  std::vector<Vertex> assignment_;
};

namespace verdict {
struct Valid {};
// Target vertex with an empty fiber.
struct NotSurjective {
  Vertex target_vertex;
};
// Source arrow whose image is not a target arrow.
struct ArrowNotPreserved {
  Arrow source_arrow;
};
// Target transitive triple with no transitive preimage.
struct TripleNotLifted {
  Triple target_triple;
};
// Non-loop source arrow sent to a loop.
struct ArrowCollapsed {
  Arrow source_arrow;
};
// Two non-loop source arrows with the same image.
struct ArrowsCollide {
  Arrow first;
  Arrow second;
};
}  // namespace verdict

using CompressionVerdict =
    std::variant<verdict::Valid, verdict::NotSurjective, verdict::ArrowNotPreserved,
                 verdict::TripleNotLifted, verdict::ArrowCollapsed, verdict::ArrowsCollide>;

inline bool is_valid(const CompressionVerdict& v) {
  return std::holds_alternative<verdict::Valid>(v);
}

// Short condition name: "valid", "surjectivity", "condition 1", ...
std::string condition_name(const CompressionVerdict& v);
// Human-readable verdict with witness labels.
std::string describe(const CompressionVerdict& v, const CompressionMap& map);

// Checks are run in order: surjectivity, arrow preservation, triple lifting,
// then the two halves of the non-loop arrow bijection. Throws NotReflexive.
CompressionVerdict verify_compression(const CompressionMap& map);

// outer ∘ inner. Throws ChainMismatch unless inner.target() has the same
// structure as outer.source().
CompressionMap compose(const CompressionMap& outer, const CompressionMap& inner);

class InvalidSplit : public PreconditionViolated {
 public:
  InvalidSplit(CompressionVerdict verdict, std::string what)
      : PreconditionViolated(std::move(what)), verdict_(verdict) {}
  const CompressionVerdict& verdict() const { return verdict_; }

 private:
  CompressionVerdict verdict_;
};

/// Adds `new_label` as a copy of x: arrows a->x for a in in_moved become
/// a->t, arrows x->b for b in out_moved become t->b, and t gets a loop.
/// Returns the new graph with the map t -> x only if the map verifies.
/// Throws UnknownVertex, DuplicateVertex, PreconditionViolated, InvalidSplit.
std::pair<DiGraph, CompressionMap> split_vertex(const DiGraph& g, Vertex x,
                                                const std::vector<Vertex>& in_moved,
                                                const std::vector<Vertex>& out_moved,
                                                const std::string& new_label);

// Map file: one "<source> <target>" pair per line, '#' comments allowed.
// Unlisted source vertices map to the same-labelled target vertex.
// Throws ParseError, UnknownVertex, DomainMismatch.
CompressionMap parse_map(std::string_view text, const DiGraph& source, const DiGraph& target);

}  // namespace vsplit
