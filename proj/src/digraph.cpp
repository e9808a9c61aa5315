#include "vsplit/digraph.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

#include "vsplit/errors.hpp"

namespace vsplit {

bool is_valid_label(std::string_view label) {
  if (label.empty()) return false;
  return std::none_of(label.begin(), label.end(), [](unsigned char c) {
    return std::isspace(c) != 0 || std::iscntrl(c) != 0;
  });
}

DiGraph::DiGraph(std::vector<std::string> labels, std::string name)
    : name_(std::move(name)) {
  for (auto& l : labels) add_vertex(std::move(l));
}

DiGraph DiGraph::reflexive(
    std::vector<std::string> labels,
    const std::vector<std::pair<std::string, std::string>>& arrows,
    std::string name) {
  DiGraph g(std::move(labels), std::move(name));
  g.add_loops();
  for (const auto& [t, h] : arrows) g.add_arrow(g.at(t), g.at(h));
  return g;
}

std::optional<Vertex> DiGraph::find(std::string_view label) const {
  auto it = index_.find(std::string(label));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Vertex DiGraph::at(std::string_view label) const {
  if (auto v = find(label)) return *v;
  throw UnknownVertex("unknown vertex '" + std::string(label) + "'");
}

Vertex DiGraph::add_vertex(std::string label) {
  if (!is_valid_label(label)) throw InvalidLabel("invalid vertex label '" + label + "'");
  if (index_.contains(label)) throw DuplicateVertex("duplicate vertex '" + label + "'");
  const Vertex v = labels_.size();
  index_.emplace(label, v);
  labels_.push_back(std::move(label));
  for (auto& r : out_) r.push_back(false);
  for (auto& r : in_) r.push_back(false);
  out_.emplace_back(labels_.size());
  in_.emplace_back(labels_.size());
  return v;
}

void DiGraph::add_arrow(Vertex tail, Vertex head) {
  if (!insert_arrow(tail, head))
    throw DuplicateArrow("duplicate arrow " + labels_[tail] + " " + labels_[head]);
}

bool DiGraph::insert_arrow(Vertex tail, Vertex head) {
  if (out_.at(tail).test(head)) return false;
  out_[tail].set(head);
  in_.at(head).set(tail);
  return true;
}

void DiGraph::remove_arrow(Vertex tail, Vertex head) {
  out_.at(tail).reset(head);
  in_.at(head).reset(tail);
}

void DiGraph::add_loops() {
  for (Vertex v = 0; v < size(); ++v) insert_arrow(v, v);
}

std::vector<Arrow> DiGraph::arrows() const {
  std::vector<Arrow> result;
  for (Vertex t = 0; t < size(); ++t)
    for (auto h = out_[t].find_first(); h != Row::npos; h = out_[t].find_next(h))
      result.push_back({t, h});
  return result;
}

std::vector<Arrow> DiGraph::star_arrows() const {
  auto all = arrows();
  std::erase_if(all, [](const Arrow& a) { return a.is_loop(); });
  return all;
}

std::size_t DiGraph::arrow_count() const {
  return std::accumulate(out_.begin(), out_.end(), std::size_t{0},
                         [](std::size_t n, const Row& r) { return n + r.count(); });
}

std::size_t DiGraph::star_arrow_count() const {
  std::size_t loops = 0;
  for (Vertex v = 0; v < size(); ++v) loops += out_[v].test(v) ? 1 : 0;
  return arrow_count() - loops;
}

bool DiGraph::same_structure(const DiGraph& other) const {
  return labels_ == other.labels_ && out_ == other.out_;
}

std::string format_arrow(const DiGraph& g, Arrow a) {
  return g.label(a.tail) + " " + g.label(a.head);
}

DiGraph star(const DiGraph& g) {
  DiGraph s(g.labels(), g.name());
  for (const Arrow& a : g.star_arrows()) s.add_arrow(a.tail, a.head);
  return s;
}

DiGraph induced(const DiGraph& g, std::span<const Vertex> subset) {
  DiGraph h;
  h.set_name(g.name());
  for (Vertex v : subset) {
    if (v >= g.size()) throw UnknownVertex("vertex index out of range");
    h.add_vertex(g.label(v));
  }
  for (std::size_t i = 0; i < subset.size(); ++i)
    for (std::size_t j = 0; j < subset.size(); ++j)
      if (g.has_arrow(subset[i], subset[j])) h.add_arrow(i, j);
  return h;
}

DiGraph induced(const DiGraph& g, const std::vector<std::string>& labels) {
  std::vector<Vertex> subset;
  subset.reserve(labels.size());
  for (const auto& l : labels) subset.push_back(g.at(l));
  return induced(g, subset);
}

DiGraph transitive_closure(const DiGraph& g) {
  const std::size_t n = g.size();
  std::vector<Row> reach(n);
  for (Vertex v = 0; v < n; ++v) reach[v] = g.successors(v);
  // Warshall, row-parallel.
  for (Vertex k = 0; k < n; ++k)
    for (Vertex i = 0; i < n; ++i)
      if (reach[i].test(k)) reach[i] |= reach[k];

  DiGraph c(g.labels(), g.name());
  for (Vertex i = 0; i < n; ++i)
    for (auto j = reach[i].find_first(); j != Row::npos; j = reach[i].find_next(j))
      c.add_arrow(i, j);
  return c;
}

bool is_star_acyclic(const DiGraph& g) {
  const std::size_t n = g.size();
  std::vector<std::size_t> indegree(n, 0);
  for (const Arrow& a : g.star_arrows()) ++indegree[a.head];
  std::vector<Vertex> ready;
  for (Vertex v = 0; v < n; ++v)
    if (indegree[v] == 0) ready.push_back(v);
  std::size_t removed = 0;
  while (!ready.empty()) {
    const Vertex v = ready.back();
    ready.pop_back();
    ++removed;
    const Row& out = g.successors(v);
    for (auto h = out.find_first(); h != Row::npos; h = out.find_next(h))
      if (h != v && --indegree[h] == 0) ready.push_back(h);
  }
  return removed == n;
}

namespace {

struct IsoSearch {
  const DiGraph& a;
  const DiGraph& b;
  std::vector<Vertex> image;
  std::vector<bool> used;

  bool extend(Vertex v) {
    if (v == a.size()) return true;
    for (Vertex w = 0; w < b.size(); ++w) {
      if (used[w] || !compatible(v, w)) continue;
      image[v] = w;
      used[w] = true;
      if (extend(v + 1)) return true;
      used[w] = false;
    }
    return false;
  }

  bool compatible(Vertex v, Vertex w) const {
    if (a.successors(v).count() != b.successors(w).count()) return false;
    if (a.predecessors(v).count() != b.predecessors(w).count()) return false;
    if (a.has_arrow(v, v) != b.has_arrow(w, w)) return false;
    for (Vertex u = 0; u < v; ++u) {
      if (a.has_arrow(u, v) != b.has_arrow(image[u], w)) return false;
      if (a.has_arrow(v, u) != b.has_arrow(w, image[u])) return false;
    }
    return true;
  }
};

}  // namespace

std::optional<VertexBijection> is_isomorphic(const DiGraph& a, const DiGraph& b) {
  if (a.size() != b.size() || a.arrow_count() != b.arrow_count()) return std::nullopt;
  IsoSearch search{a, b, std::vector<Vertex>(a.size()), std::vector<bool>(b.size(), false)};
  if (!search.extend(0)) return std::nullopt;
  return VertexBijection{std::move(search.image)};
}

}  // namespace vsplit
