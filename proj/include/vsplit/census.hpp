#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "vsplit/compression.hpp"
#include "vsplit/digraph.hpp"

namespace vsplit {

inline constexpr std::size_t kMaxEnumerationVertices = 6;
inline constexpr std::size_t kMaxObstructionVertices = 5;
inline constexpr std::size_t kMaxOracleVertices = 8;
inline constexpr std::size_t kMaxCanonicalVertices = 8;

// Non-loop adjacency as a bit string: ordered pairs (i, j), i != j, in
// row-major order, first pair in the most significant position. Comparing
// codes as integers compares the bit strings lexicographically.
std::uint64_t adjacency_code(const DiGraph& g);

// Reflexive graph on `n` vertices labelled a, b, c, ... from a code.
DiGraph graph_from_code(std::size_t n, std::uint64_t code);

// Isomorphism-invariant code of a reflexive graph: the least adjacency code
// over all vertex orders that respect an iterated degree refinement. Two
// reflexive graphs on the same number of vertices are isomorphic iff their
// canonical codes agree. Throws NotReflexive, BoundExceeded above 8 vertices.
std::uint64_t canonical_code(const DiGraph& g);

enum class EnumerationMode { Labeled, UpToIsomorphism };

// Every reflexive digraph on n vertices: all 2^(n(n-1)) in labeled mode, one
// canonical representative per class otherwise; both in increasing code
// order. Throws BoundExceeded unless 1 <= n <= 6.
void for_each_reflexive(std::size_t n, EnumerationMode mode,
                        const std::function<void(const DiGraph&)>& visit);

// Canonical codes of the isomorphism classes on n vertices, sorted. Cached.
const std::vector<std::uint64_t>& iso_class_codes(std::size_t n);
std::vector<DiGraph> iso_classes(std::size_t n);
std::uint64_t count_reflexive(std::size_t n, EnumerationMode mode);

enum class ObstructionPredicate { Balanced, StableGivenBalanced, UnlockedGivenStable };

std::string predicate_name(ObstructionPredicate p);
// Accepts "balanced", "stable" / "stable-given-balanced",
// "unlocked" / "unlocked-given-stable".
std::optional<ObstructionPredicate> parse_predicate(const std::string& name);

struct ObstructionSet {
  ObstructionPredicate predicate = ObstructionPredicate::Balanced;
  std::size_t n_max = 0;
  std::vector<DiGraph> classes;
};

// Graphs within the base class (all / balanced / stable) that fail the
// predicate while every proper induced subgraph satisfies it, up to
// isomorphism. Throws BoundExceeded above 5 vertices.
ObstructionSet minimal_obstructions(ObstructionPredicate predicate, std::size_t n_max);

// True iff some induced subgraph of g is isomorphic to a member of `set`.
bool contains_induced(const DiGraph& g, const std::vector<DiGraph>& set);

nlohmann::ordered_json obstructions_to_json(const ObstructionSet& set);

// Unbalanced classes on at most n_max vertices that nevertheless admit a
// preordered expansion with at most max_extra extra vertices.
std::vector<DiGraph> unbalanced_with_preorder_expansion(std::size_t n_max, std::size_t max_extra);

/// Independent brute-force search for a preordered digraph compressing onto
/// g with at most max_extra additional vertices. Every candidate assigns each
/// vertex a fiber and each non-loop arrow a single preimage pair; the first
/// preordered candidate whose map verifies is returned.
/// Throws NotReflexive, BoundExceeded (|V| + max_extra > 8).
std::optional<std::pair<DiGraph, CompressionMap>> oracle_preorder_expansion(const DiGraph& g,
                                                                            std::size_t max_extra);

// Theorem checks on one valid map; each returns a description of the first
// violation. The transitive-inducing check: xy, yz in the source over a
// transitive triple in the target force xz. The compression-theorem check:
// balanced, stable and preordered targets have sources with the same
// property. The locked-clasp check: for a stable source, the source has a
// locked clasp iff the target does.
std::optional<std::string> transitive_inducing_violation(const CompressionMap& map);
std::optional<std::string> compression_theorem_violation(const CompressionMap& map);
std::optional<std::string> locked_transfer_violation(const CompressionMap& map);

struct CheckResult {
  std::string name;
  bool passed = true;
  std::uint64_t instances = 0;
  // Bounded checks are consistency checks over a finite slice, not proofs.
  bool bounded = false;
  std::optional<DiGraph> counterexample;
  std::string detail;
};

struct ValidationReport {
  std::size_t n_max = 0;
  std::vector<std::uint64_t> classes_per_n;  // index 0 holds n = 1
  std::vector<CheckResult> checks;

  bool all_passed() const;
  const CheckResult* find(const std::string& name) const;
};

// Check names, in report order.
namespace check {
inline constexpr const char* kMainPositive = "main-theorem-positive";
inline constexpr const char* kMainNegative = "main-theorem-negative";
inline constexpr const char* kClaspSoloist = "clasp-implies-soloist";
inline constexpr const char* kSoloistLemma = "soloist-lemma";
inline constexpr const char* kTransitiveInducing = "transitive-inducing-lemma";
inline constexpr const char* kCompressionTheorem = "compression-theorem";
inline constexpr const char* kLockedClaspTransfer = "locked-clasp-transfer";
inline constexpr const char* kArrowConservation = "arrow-conservation";
inline constexpr const char* kAcyclicCorollary = "acyclic-corollary";
}  // namespace check

// Sweeps all iso classes with 1..n_max vertices. `jobs` > 1 partitions the
// classes across threads; the merged report equals the sequential one.
// Throws BoundExceeded unless n_max <= 5.
ValidationReport validate_theorems(std::size_t n_max, unsigned jobs = 1);

// Runs the per-graph part of the sweep on one graph, as for a census member.
ValidationReport validate_graph(const DiGraph& g);

// True iff the named check fails again on the reported counterexample.
bool replay_counterexample(const CheckResult& result);

nlohmann::ordered_json report_to_json(const ValidationReport& report);
std::string report_to_text(const ValidationReport& report);

}  // namespace vsplit
