#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "vsplit/compression.hpp"
#include "vsplit/digraph.hpp"

namespace vsplit {

// Per-iteration sets for a clasp x:
//   Y = { y != x : wx, xy present and wy absent for some w }
//   A = { a != x : (a, x, y) is a transitive triple for some y in Y }
struct ClaspContext {
  Vertex clasp = 0;
  std::vector<Vertex> Y;
  std::vector<Vertex> A;
};

enum class ConstructionKind { A, B };

struct ConstructionChoice {
  ConstructionKind kind = ConstructionKind::A;
  // Construction B witnesses: a, b in A with (b, x, y) transitive and ay absent.
  Vertex a = 0;
  Vertex b = 0;
  Vertex y = 0;
};

struct IterationRecord {
  std::size_t index = 0;  // 1-based
  Vertex clasp = 0;
  ClaspContext context;
  ConstructionChoice choice;
  std::vector<Vertex> B;                      // construction A only
  std::vector<std::pair<Vertex, Vertex>> T;   // construction B only
  std::vector<Arrow> removed;
  std::vector<Arrow> added;
  Vertex new_vertex = 0;
};

struct ExpansionStep {
  DiGraph graph;
  CompressionMap map;  // graph -> previous graph, new vertex -> clasp
  IterationRecord record;
};

struct ExpansionOutcome {
  DiGraph input;
  DiGraph result;
  CompressionMap map;  // result -> input
  std::vector<IterationRecord> trace;
  std::vector<CompressionMap> steps;  // D_{i+1} -> D_i, one per iteration
};

// Throws NotReflexive, UnknownVertex, NotAClasp.
ClaspContext clasp_context(const DiGraph& g, Vertex x);

ConstructionChoice select_construction(const DiGraph& g, const ClaspContext& ctx);

// Both return the next graph (with `new_label` appended) and the partially
// filled record (index left at 0). Throw PreconditionViolated when the
// selection rule does not pick the requested construction.
std::pair<DiGraph, IterationRecord> construction_a(const DiGraph& g, const ClaspContext& ctx,
                                                   const std::string& new_label);
std::pair<DiGraph, IterationRecord> construction_b(const DiGraph& g, const ClaspContext& ctx,
                                                   Vertex y_sel, const std::string& new_label);

// "t<k>" for the smallest k >= 1 not already a label of g.
std::string fresh_vertex_label(const DiGraph& g);

// One split of the unlocked clasp x. Throws NotReflexive, NotStable,
// NotAClasp, LockedClasp; InternalInvariantBreached if the step map fails
// to verify or the new graph is not stable with unlocked clasps.
ExpansionStep expand_once(const DiGraph& g, Vertex x);

// Largest number of iterations expand_to_preorder may take on g.
std::size_t iteration_cap(const DiGraph& g);

// Repeatedly splits the smallest clasp until the graph is preordered.
// Throws NotReflexive, NotStable, LockedClasp before doing any work;
// InternalInvariantBreached on a failed runtime check.
ExpansionOutcome expand_to_preorder(const DiGraph& g);

// {input, iterations[], result, map}; vertices by label, arrays in vertex order.
nlohmann::ordered_json trace_to_json(const ExpansionOutcome& outcome);

// Structural check of a trace document; returns the first problem found.
std::optional<std::string> validate_trace_json(const nlohmann::ordered_json& doc);

}  // namespace vsplit
