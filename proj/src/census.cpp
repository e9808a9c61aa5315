#include <algorithm>
#include <array>
#include <unordered_set>

#include "vsplit/census.hpp"
#include "vsplit/dg_format.hpp"
#include "vsplit/errors.hpp"
#include "vsplit/predicates.hpp"

namespace vsplit {
namespace {

bool in_base(ObstructionPredicate p, const DiGraph& g) {
  switch (p) {
    case ObstructionPredicate::Balanced:
      return true;
    case ObstructionPredicate::StableGivenBalanced:
      return is_balanced(g);
    case ObstructionPredicate::UnlockedGivenStable:
      return is_stable(g);
  }
  return false;
}

bool satisfies(ObstructionPredicate p, const DiGraph& g) {
  switch (p) {
    case ObstructionPredicate::Balanced:
      return is_balanced(g);
    case ObstructionPredicate::StableGivenBalanced:
      return is_stable(g);
    case ObstructionPredicate::UnlockedGivenStable:
      return !has_locked_clasp(g);
  }
  return false;
}

// Calls fn(subset) for every k-subset of {0..n-1} in lexicographic order
// until fn returns true; returns whether it did.
template <typename Fn>
bool any_subset(std::size_t n, std::size_t k, Fn&& fn) {
  std::vector<Vertex> subset(k);
  for (std::size_t i = 0; i < k; ++i) subset[i] = i;
  if (k > n) return false;
  for (;;) {
    if (fn(subset)) return true;
    std::size_t i = k;
    while (i > 0 && subset[i - 1] == n - k + i - 1) --i;
    if (i == 0) return false;
    ++subset[i - 1];
    for (std::size_t j = i; j < k; ++j) subset[j] = subset[j - 1] + 1;
  }
}

}  // namespace

std::string predicate_name(ObstructionPredicate p) {
  switch (p) {
    case ObstructionPredicate::Balanced:
      return "balanced";
    case ObstructionPredicate::StableGivenBalanced:
      return "stable-given-balanced";
    case ObstructionPredicate::UnlockedGivenStable:
      return "unlocked-given-stable";
  }
  return "";
}

std::optional<ObstructionPredicate> parse_predicate(const std::string& name) {
  if (name == "balanced") return ObstructionPredicate::Balanced;
  if (name == "stable" || name == "stable-given-balanced") return ObstructionPredicate::StableGivenBalanced;
  if (name == "unlocked" || name == "unlocked-given-stable") return ObstructionPredicate::UnlockedGivenStable;
  return std::nullopt;
}

ObstructionSet minimal_obstructions(ObstructionPredicate predicate, std::size_t n_max) {
  if (n_max > kMaxObstructionVertices)
    throw BoundExceeded("obstruction search supports at most " +
                        std::to_string(kMaxObstructionVertices) + " vertices");
  ObstructionSet set{predicate, n_max, {}};
  for (std::size_t n = 1; n <= n_max; ++n) {
    for (std::uint64_t code : iso_class_codes(n)) {
      DiGraph g = graph_from_code(n, code);
      if (!in_base(predicate, g) || satisfies(predicate, g)) continue;
      bool minimal = true;
      for (std::size_t k = 1; k < n && minimal; ++k)
        minimal = !any_subset(n, k, [&](const std::vector<Vertex>& s) {
          return !satisfies(predicate, induced(g, s));
        });
      if (minimal) set.classes.push_back(std::move(g));
    }
  }
  return set;
}

bool contains_induced(const DiGraph& g, const std::vector<DiGraph>& set) {
  std::vector<std::unordered_set<std::uint64_t>> by_size(g.size() + 1);
  for (const DiGraph& h : set)
    if (h.size() >= 1 && h.size() <= g.size()) by_size[h.size()].insert(canonical_code(h));
  for (std::size_t k = 1; k <= g.size(); ++k) {
    if (by_size[k].empty()) continue;
    const bool found = any_subset(g.size(), k, [&](const std::vector<Vertex>& s) {
      return by_size[k].contains(canonical_code(induced(g, s)));
    });
    if (found) return true;
  }
  return false;
}

nlohmann::ordered_json obstructions_to_json(const ObstructionSet& set) {
  nlohmann::ordered_json doc;
  doc["predicate"] = predicate_name(set.predicate);
  doc["n_max"] = set.n_max;
  auto classes = nlohmann::ordered_json::array();
  for (const DiGraph& g : set.classes) classes.push_back(emit_digraph(g));
  doc["classes"] = std::move(classes);
  return doc;
}

std::vector<DiGraph> unbalanced_with_preorder_expansion(std::size_t n_max, std::size_t max_extra) {
  std::vector<DiGraph> out;
  for (std::size_t n = 1; n <= n_max; ++n)
    for (std::uint64_t code : iso_class_codes(n)) {
      DiGraph g = graph_from_code(n, code);
      if (!is_balanced(g) && oracle_preorder_expansion(g, max_extra)) out.push_back(std::move(g));
    }
  return out;
}

namespace {

using Masks = std::array<std::uint8_t, kMaxOracleVertices>;

bool masks_transitive(const Masks& out, std::size_t n) {
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      if (((out[x] >> y) & 1U) && (out[y] & ~out[x])) return false;
  return true;
}

class OracleSearch {
 public:
  OracleSearch(const DiGraph& target, std::size_t total)
      : target_(target), total_(total), arrows_(target.star_arrows()),
        triples_(trans_triples(target)) {}

  std::optional<std::pair<DiGraph, CompressionMap>> run() {
    sizes_.assign(target_.size(), 1);
    return sizes_from(0, total_ - target_.size());
  }

 private:
  // Distributes `spare` extra copies over target vertices >= v, in
  // lexicographic order of the fiber-size vector.
  std::optional<std::pair<DiGraph, CompressionMap>> sizes_from(std::size_t v, std::size_t spare) {
    if (v + 1 == target_.size()) {
      sizes_[v] = 1 + spare;
      return with_sizes();
    }
    for (std::size_t extra = 0; extra <= spare; ++extra) {
      sizes_[v] = 1 + extra;
      if (auto hit = sizes_from(v + 1, spare - extra)) return hit;
    }
    return std::nullopt;
  }

  std::optional<std::pair<DiGraph, CompressionMap>> with_sizes() {
    offset_.assign(target_.size(), 0);
    owner_.assign(total_, 0);
    fiber_.fill(0);
    for (std::size_t a = 0, next = 0; a < target_.size(); ++a) {
      offset_[a] = next;
      for (std::size_t i = 0; i < sizes_[a]; ++i, ++next) {
        owner_[next] = a;
        fiber_[a] |= static_cast<std::uint8_t>(1U << next);
      }
    }
    std::vector<std::size_t> choice(arrows_.size(), 0);
    for (;;) {
      Masks out{};
      for (std::size_t x = 0; x < total_; ++x) out[x] = static_cast<std::uint8_t>(1U << x);
      for (std::size_t e = 0; e < arrows_.size(); ++e) {
        const auto [tail, head] = endpoints(e, choice[e]);
        out[tail] |= static_cast<std::uint8_t>(1U << head);
      }
      if (masks_transitive(out, total_) && lifts(out))
        if (auto hit = materialize(out)) return hit;
      // Odometer over preimage choices.
      std::size_t e = 0;
      for (; e < arrows_.size(); ++e) {
        if (++choice[e] < sizes_[arrows_[e].tail] * sizes_[arrows_[e].head]) break;
        choice[e] = 0;
      }
      if (e == arrows_.size()) return std::nullopt;
    }
  }

  std::pair<std::size_t, std::size_t> endpoints(std::size_t e, std::size_t c) const {
    const Arrow a = arrows_[e];
    const std::size_t k = sizes_[a.head];
    return {offset_[a.tail] + c / k, offset_[a.head] + c % k};
  }

  bool lifts(const Masks& out) const {
    for (const Triple& t : triples_) {
      bool ok = false;
      for (std::size_t x1 = 0; x1 < total_ && !ok; ++x1) {
        if (owner_[x1] != t.a) continue;
        const std::uint8_t mid = out[x1] & fiber_[t.b];
        for (std::size_t x2 = 0; x2 < total_ && !ok; ++x2)
          if ((mid >> x2) & 1U) ok = (out[x1] & out[x2] & fiber_[t.c]) != 0;
      }
      if (!ok) return false;
    }
    return true;
  }

  std::optional<std::pair<DiGraph, CompressionMap>> materialize(const Masks& out) const {
    DiGraph source;
    source.set_name(target_.name());
    std::vector<Vertex> assignment(total_);
    for (std::size_t x = 0; x < total_; ++x) {
      const Vertex a = owner_[x];
      std::string label = target_.label(a);
      if (x != offset_[a]) label += "_" + std::to_string(x - offset_[a]);
      while (source.find(label)) label += "_";
      source.add_vertex(std::move(label));
      assignment[x] = a;
    }
    for (std::size_t x = 0; x < total_; ++x)
      for (std::size_t y = 0; y < total_; ++y)
        if ((out[x] >> y) & 1U) source.add_arrow(x, y);
    CompressionMap map(source, target_, std::move(assignment));
    if (!is_valid(verify_compression(map))) return std::nullopt;
    return std::pair{std::move(source), std::move(map)};
  }

  const DiGraph& target_;
  std::size_t total_;
  std::vector<Arrow> arrows_;
  std::vector<Triple> triples_;
  std::vector<std::size_t> sizes_;
  std::vector<std::size_t> offset_;
  std::vector<std::size_t> owner_;
  Masks fiber_{};
};

}  // namespace

std::optional<std::pair<DiGraph, CompressionMap>> oracle_preorder_expansion(const DiGraph& g,
                                                                            std::size_t max_extra) {
  if (auto v = missing_loop(g)) throw NotReflexive("not reflexive: missing loop at " + g.label(*v));
  if (g.size() + max_extra > kMaxOracleVertices)
    throw BoundExceeded("oracle search needs |V| + max_extra <= " + std::to_string(kMaxOracleVertices));
  if (g.size() == 0) return std::pair{g, CompressionMap::identity(g)};
  for (std::size_t total = g.size(); total <= g.size() + max_extra; ++total)
    if (auto hit = OracleSearch(g, total).run()) return hit;
  return std::nullopt;
}

}  // namespace vsplit
