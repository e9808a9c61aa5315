#include <algorithm>
#include <array>
#include <map>
#include <mutex>
#include <unordered_set>

#include "vsplit/census.hpp"
#include "vsplit/errors.hpp"
#include "vsplit/predicates.hpp"

namespace vsplit {
namespace {

// Out-neighbour masks of a graph on at most 8 vertices; loops implicit.
struct SmallGraph {
  std::size_t n = 0;
  std::array<std::uint8_t, kMaxCanonicalVertices> out{};

  bool arrow(std::size_t i, std::size_t j) const { return (out[i] >> j) & 1U; }
};

SmallGraph small_from_code(std::size_t n, std::uint64_t code) {
  SmallGraph g{n, {}};
  std::size_t bit = n * (n - 1);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      --bit;
      if ((code >> bit) & 1U) g.out[i] |= static_cast<std::uint8_t>(1U << j);
    }
  return g;
}

std::uint64_t code_under(const SmallGraph& g, const std::array<std::uint8_t, kMaxCanonicalVertices>& order) {
  std::uint64_t code = 0;
  for (std::size_t i = 0; i < g.n; ++i)
    for (std::size_t j = 0; j < g.n; ++j)
      if (i != j) code = (code << 1) | static_cast<std::uint64_t>(g.arrow(order[i], order[j]));
  return code;
}

// Colour classes from iterated (colour, out-colours, in-colours) refinement.
std::array<std::uint32_t, kMaxCanonicalVertices> refine(const SmallGraph& g) {
  using Signature = std::vector<std::uint32_t>;
  std::array<std::uint32_t, kMaxCanonicalVertices> colour{};
  std::size_t classes = 1;
  for (;;) {
    std::vector<Signature> sig(g.n);
    for (std::size_t v = 0; v < g.n; ++v) {
      Signature outs;
      Signature ins;
      for (std::size_t u = 0; u < g.n; ++u) {
        if (u == v) continue;
        if (g.arrow(v, u)) outs.push_back(colour[u]);
        if (g.arrow(u, v)) ins.push_back(colour[u]);
      }
      std::sort(outs.begin(), outs.end());
      std::sort(ins.begin(), ins.end());
      sig[v] = {colour[v], static_cast<std::uint32_t>(outs.size()),
                static_cast<std::uint32_t>(ins.size())};
      sig[v].insert(sig[v].end(), outs.begin(), outs.end());
      sig[v].push_back(~0U);
      sig[v].insert(sig[v].end(), ins.begin(), ins.end());
    }
    std::vector<Signature> distinct(sig.begin(), sig.end());
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    for (std::size_t v = 0; v < g.n; ++v)
      colour[v] = static_cast<std::uint32_t>(
          std::lower_bound(distinct.begin(), distinct.end(), sig[v]) - distinct.begin());
    if (distinct.size() == classes) return colour;
    classes = distinct.size();
  }
}

struct Canonizer {
  const SmallGraph& g;
  std::array<std::uint8_t, kMaxCanonicalVertices> order{};
  std::vector<std::pair<std::size_t, std::size_t>> cells;  // [begin, end)
  std::uint64_t best = ~std::uint64_t{0};

  void search(std::size_t cell) {
    if (cell == cells.size()) {
      best = std::min(best, code_under(g, order));
      return;
    }
    auto [b, e] = cells[cell];
    do {
      search(cell + 1);
    } while (std::next_permutation(order.begin() + b, order.begin() + e));
  }
};

std::uint64_t canonical_small(const SmallGraph& g) {
  if (g.n <= 1) return 0;
  const auto colour = refine(g);
  Canonizer c{g, {}, {}, ~std::uint64_t{0}};
  for (std::size_t v = 0; v < g.n; ++v) c.order[v] = static_cast<std::uint8_t>(v);
  std::stable_sort(c.order.begin(), c.order.begin() + g.n,
                   [&](std::uint8_t a, std::uint8_t b) { return colour[a] < colour[b]; });
  for (std::size_t i = 0; i < g.n;) {
    std::size_t j = i;
    while (j < g.n && colour[c.order[j]] == colour[c.order[i]]) ++j;
    c.cells.emplace_back(i, j);
    i = j;
  }
  c.search(0);
  return c.best;
}

std::vector<std::uint64_t> build_classes(std::size_t n) {
  if (n == 1) return {0};
  const auto& smaller = iso_class_codes(n - 1);
  std::unordered_set<std::uint64_t> seen;
  const std::size_t m = n - 1;
  const std::uint32_t masks = 1U << m;
  for (std::uint64_t code : smaller) {
    SmallGraph base = small_from_code(m, code);
    base.n = n;
    for (std::uint32_t out_mask = 0; out_mask < masks; ++out_mask)
      for (std::uint32_t in_mask = 0; in_mask < masks; ++in_mask) {
        SmallGraph g = base;
        g.out[m] = static_cast<std::uint8_t>(out_mask);
        for (std::size_t i = 0; i < m; ++i)
          if ((in_mask >> i) & 1U) g.out[i] |= static_cast<std::uint8_t>(1U << m);
        seen.insert(canonical_small(g));
      }
  }
  std::vector<std::uint64_t> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end());
  return out;
}

void require_enumerable(std::size_t n) {
  if (n < 1 || n > kMaxEnumerationVertices)
    throw BoundExceeded("enumeration supports 1 to " + std::to_string(kMaxEnumerationVertices) +
                        " vertices, got " + std::to_string(n));
}

}  // namespace

std::uint64_t adjacency_code(const DiGraph& g) {
  if (g.size() > kMaxCanonicalVertices) throw BoundExceeded("adjacency codes need at most 8 vertices");
  std::uint64_t code = 0;
  for (Vertex i = 0; i < g.size(); ++i)
    for (Vertex j = 0; j < g.size(); ++j)
      if (i != j) code = (code << 1) | static_cast<std::uint64_t>(g.has_arrow(i, j));
  return code;
}

DiGraph graph_from_code(std::size_t n, std::uint64_t code) {
  if (n > kMaxCanonicalVertices) throw BoundExceeded("adjacency codes need at most 8 vertices");
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.emplace_back(1, static_cast<char>('a' + i));
  DiGraph g(std::move(labels));
  g.add_loops();
  const SmallGraph s = small_from_code(n, code);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && s.arrow(i, j)) g.add_arrow(i, j);
  return g;
}

std::uint64_t canonical_code(const DiGraph& g) {
  if (g.size() > kMaxCanonicalVertices) throw BoundExceeded("canonical codes need at most 8 vertices");
  if (!is_reflexive(g)) throw NotReflexive("canonical codes are defined for reflexive graphs");
  return canonical_small(small_from_code(g.size(), adjacency_code(g)));
}

const std::vector<std::uint64_t>& iso_class_codes(std::size_t n) {
  require_enumerable(n);
  static std::mutex mutex;
  static std::map<std::size_t, std::vector<std::uint64_t>> cache;
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(n); it != cache.end()) return it->second;
  }
  // Built outside the lock: construction recurses into smaller n.
  auto classes = build_classes(n);
  std::lock_guard lock(mutex);
  return cache.try_emplace(n, std::move(classes)).first->second;
}

std::vector<DiGraph> iso_classes(std::size_t n) {
  std::vector<DiGraph> out;
  for (std::uint64_t code : iso_class_codes(n)) out.push_back(graph_from_code(n, code));
  return out;
}

void for_each_reflexive(std::size_t n, EnumerationMode mode,
                        const std::function<void(const DiGraph&)>& visit) {
  require_enumerable(n);
  if (mode == EnumerationMode::UpToIsomorphism) {
    for (std::uint64_t code : iso_class_codes(n)) visit(graph_from_code(n, code));
    return;
  }
  const std::uint64_t total = std::uint64_t{1} << (n * (n - 1));
  for (std::uint64_t code = 0; code < total; ++code) visit(graph_from_code(n, code));
}

std::uint64_t count_reflexive(std::size_t n, EnumerationMode mode) {
  require_enumerable(n);
  if (mode == EnumerationMode::Labeled) return std::uint64_t{1} << (n * (n - 1));
  return iso_class_codes(n).size();
}

}  // namespace vsplit
