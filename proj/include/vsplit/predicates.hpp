#pragma once

#include <optional>
#include <vector>

#include <nlohmann/json.hpp>

#include "vsplit/digraph.hpp"

namespace vsplit {

std::optional<Vertex> missing_loop(const DiGraph& g);
bool is_reflexive(const DiGraph& g);

// First (x, y, z) in vertex order with xy, yz present and xz absent.
std::optional<Triple> transitivity_witness(const DiGraph& g);
bool is_transitive(const DiGraph& g);
bool is_preordered(const DiGraph& g);

bool is_trans_triple(const DiGraph& g, Triple t);

enum class TripleScope { All, Distinct };

// Trans(D) in lexicographic order. `Distinct` keeps only triples of three
// different vertices.
std::vector<Triple> trans_triples(const DiGraph& g, TripleScope scope = TripleScope::All);

struct BalanceCheck {
  bool holds = true;
  // (w, x, y, z) with wx, xy, yz, wz present and exactly one of wy, xz.
  std::optional<Quadruple> witness;
};

// Quantifies over all 4-tuples, repeats allowed. Throws NotReflexive.
BalanceCheck check_balanced(const DiGraph& g);
bool is_balanced(const DiGraph& g);

enum class StabilityFailure { None, Balance, Stability };

struct StabilityCheck {
  bool holds = true;
  StabilityFailure failure = StabilityFailure::None;
  // Balance witness (w,x,y,z), or distinct (a,b,c,d) with ab, ac, bc, bd, cd
  // present and ad absent.
  std::optional<Quadruple> witness;
};

// Throws NotReflexive.
StabilityCheck check_stable(const DiGraph& g);
bool is_stable(const DiGraph& g);

enum class ClaspStatus { NotAClasp, Unlocked, Locked };

// u, v, w, y (all different from x) with (u,x,y), (u,x,v), (w,x,v) in Trans(D)
// and wy absent.
struct LockWitness {
  Vertex u = 0;
  Vertex v = 0;
  Vertex w = 0;
  Vertex y = 0;
  auto operator<=>(const LockWitness&) const = default;
};

struct LockStatus {
  ClaspStatus status = ClaspStatus::NotAClasp;
  std::optional<LockWitness> witness;
};

struct ClaspRecord {
  Vertex vertex = 0;
  // Lexicographically least (w, y) with wx, xy present and wy absent.
  Vertex w = 0;
  Vertex y = 0;
  ClaspStatus status = ClaspStatus::Unlocked;
  std::optional<LockWitness> lock;
};

// Least clasp witness (w, y) for x, if x is a clasp. Requires reflexivity
// only implicitly (loops make w = y impossible).
std::optional<std::pair<Vertex, Vertex>> clasp_witness(const DiGraph& g, Vertex x);
bool is_clasp(const DiGraph& g, Vertex x);

// Lock pattern search independent of clasp-hood.
std::optional<LockWitness> lock_witness(const DiGraph& g, Vertex x);

// Throws UnknownVertex (index out of range) or NotReflexive.
LockStatus locked_status(const DiGraph& g, Vertex x);

// Clasps in vertex order. Throws NotReflexive.
std::vector<ClaspRecord> clasps(const DiGraph& g);
bool has_locked_clasp(const DiGraph& g);

bool is_paired(const DiGraph& g, Vertex r, Vertex s);
// Throws NotReflexive.
std::vector<Vertex> soloists(const DiGraph& g);

struct PropertyReport {
  bool reflexive = false;
  std::optional<Vertex> missing_loop;
  bool transitive = false;
  std::optional<Triple> transitivity_witness;
  bool preordered = false;
  // Present only for reflexive graphs.
  std::optional<BalanceCheck> balanced;
  std::optional<StabilityCheck> stable;
  std::vector<ClaspRecord> clasps;
  std::vector<Vertex> soloists;
};

PropertyReport property_report(const DiGraph& g);

nlohmann::ordered_json report_to_json(const DiGraph& g, const PropertyReport& r);
std::string report_to_text(const DiGraph& g, const PropertyReport& r);

}  // namespace vsplit
