#include "vsplit/compression.hpp"

#include <map>
#include <optional>
#include <sstream>

#include "vsplit/predicates.hpp"

namespace vsplit {

CompressionMap::CompressionMap(DiGraph source, DiGraph target, std::vector<Vertex> assignment)
    : source_(std::move(source)), target_(std::move(target)), assignment_(std::move(assignment)) {
  if (assignment_.size() != source_.size())
    throw DomainMismatch("assignment covers " + std::to_string(assignment_.size()) + " of " +
                         std::to_string(source_.size()) + " source vertices");
  for (Vertex v : assignment_)
    if (v >= target_.size()) throw DomainMismatch("assignment image outside the target");
}

CompressionMap CompressionMap::identity(const DiGraph& g) {
  std::vector<Vertex> id(g.size());
  for (Vertex v = 0; v < g.size(); ++v) id[v] = v;
  return CompressionMap(g, g, std::move(id));
}

std::string condition_name(const CompressionVerdict& v) {
  struct Visitor {
    std::string operator()(const verdict::Valid&) const { return "valid"; }
    std::string operator()(const verdict::NotSurjective&) const { return "surjectivity"; }
    std::string operator()(const verdict::ArrowNotPreserved&) const { return "condition 1"; }
    std::string operator()(const verdict::TripleNotLifted&) const { return "condition 2"; }
    std::string operator()(const verdict::ArrowCollapsed&) const {
      return "condition 3 (not well defined)";
    }
    std::string operator()(const verdict::ArrowsCollide&) const {
      return "condition 3 (not injective)";
    }
  };
  return std::visit(Visitor{}, v);
}

std::string describe(const CompressionVerdict& v, const CompressionMap& map) {
  const DiGraph& s = map.source();
  const DiGraph& t = map.target();
  auto image = [&](Arrow a) { return Arrow{map(a.tail), map(a.head)}; };
  struct Visitor {
    const DiGraph& s;
    const DiGraph& t;
    decltype(image)& img;
    std::string operator()(const verdict::Valid&) const { return "Valid"; }
    std::string operator()(const verdict::NotSurjective& e) const {
      return "Violation surjectivity: no source vertex maps to " + t.label(e.target_vertex);
    }
    std::string operator()(const verdict::ArrowNotPreserved& e) const {
      return "Violation condition 1: arrow " + format_arrow(s, e.source_arrow) + " maps to " +
             format_arrow(t, img(e.source_arrow)) + " which is not an arrow of the target";
    }
    std::string operator()(const verdict::TripleNotLifted& e) const {
      const auto& tr = e.target_triple;
      return "Violation condition 2: transitive triple (" + t.label(tr.a) + "," + t.label(tr.b) +
             "," + t.label(tr.c) + ") has no transitive preimage";
    }
    std::string operator()(const verdict::ArrowCollapsed& e) const {
      return "Violation condition 3: non-loop arrow " + format_arrow(s, e.source_arrow) +
             " maps to the loop " + format_arrow(t, img(e.source_arrow));
    }
    std::string operator()(const verdict::ArrowsCollide& e) const {
      return "Violation condition 3: arrows " + format_arrow(s, e.first) + " and " +
             format_arrow(s, e.second) + " both map to " + format_arrow(t, img(e.first));
    }
  };
  return std::visit(Visitor{s, t, image}, v);
}

CompressionVerdict verify_compression(const CompressionMap& map) {
  const DiGraph& src = map.source();
  const DiGraph& tgt = map.target();
  if (auto v = missing_loop(src)) throw NotReflexive("source not reflexive at " + src.label(*v));
  if (auto v = missing_loop(tgt)) throw NotReflexive("target not reflexive at " + tgt.label(*v));

  std::vector<Row> fiber(tgt.size(), Row(src.size()));
  for (Vertex x = 0; x < src.size(); ++x) fiber[map(x)].set(x);
  for (Vertex a = 0; a < tgt.size(); ++a)
    if (fiber[a].none()) return verdict::NotSurjective{a};

  const auto arrows = src.arrows();
  for (const Arrow& e : arrows)
    if (!tgt.has_arrow(map(e.tail), map(e.head))) return verdict::ArrowNotPreserved{e};

  for (const Triple& tr : trans_triples(tgt)) {
    bool lifted = false;
    for (auto x1 = fiber[tr.a].find_first(); !lifted && x1 != Row::npos;
         x1 = fiber[tr.a].find_next(x1)) {
      const Row reach = src.successors(x1) & fiber[tr.b];
      for (auto x2 = reach.find_first(); !lifted && x2 != Row::npos; x2 = reach.find_next(x2))
        lifted = (src.successors(x1) & src.successors(x2) & fiber[tr.c]).any();
    }
    if (!lifted) return verdict::TripleNotLifted{tr};
  }

  std::map<Arrow, Arrow> preimage;
  for (const Arrow& e : arrows) {
    if (e.is_loop()) continue;
    const Arrow img{map(e.tail), map(e.head)};
    if (img.is_loop()) return verdict::ArrowCollapsed{e};
    auto [it, fresh] = preimage.emplace(img, e);
    if (!fresh) return verdict::ArrowsCollide{it->second, e};
  }
  // Onto A(target*) is implied by triple lifting: every target arrow ab
  // yields the triple (a, a, b), whose lift contains an arrow into b's fiber.
  return verdict::Valid{};
}

CompressionMap compose(const CompressionMap& outer, const CompressionMap& inner) {
  if (!inner.target().same_structure(outer.source()))
    throw ChainMismatch("inner map target does not match outer map source");
  std::vector<Vertex> assignment(inner.source().size());
  for (Vertex v = 0; v < assignment.size(); ++v) assignment[v] = outer(inner(v));
  return CompressionMap(inner.source(), outer.target(), std::move(assignment));
}

std::pair<DiGraph, CompressionMap> split_vertex(const DiGraph& g, Vertex x,
                                                const std::vector<Vertex>& in_moved,
                                                const std::vector<Vertex>& out_moved,
                                                const std::string& new_label) {
  if (x >= g.size()) throw UnknownVertex("vertex index out of range");
  DiGraph h = g;
  const Vertex t = h.add_vertex(new_label);
  h.add_arrow(t, t);
  for (Vertex a : in_moved) {
    if (a == x || a >= g.size() || !g.has_arrow(a, x))
      throw PreconditionViolated("in_moved must list in-neighbours of " + g.label(x));
    h.remove_arrow(a, x);
    h.add_arrow(a, t);
  }
  for (Vertex b : out_moved) {
    if (b == x || b >= g.size() || !g.has_arrow(x, b))
      throw PreconditionViolated("out_moved must list out-neighbours of " + g.label(x));
    h.remove_arrow(x, b);
    h.add_arrow(t, b);
  }
  std::vector<Vertex> assignment(h.size());
  for (Vertex v = 0; v < g.size(); ++v) assignment[v] = v;
  assignment[t] = x;
  CompressionMap map(h, g, std::move(assignment));
  auto verdict = verify_compression(map);
  if (!is_valid(verdict)) throw InvalidSplit(verdict, "invalid split: " + describe(verdict, map));
  return {std::move(h), std::move(map)};
}

CompressionMap parse_map(std::string_view text, const DiGraph& source, const DiGraph& target) {
  std::vector<std::optional<Vertex>> assignment(source.size());
  std::istringstream in{std::string(text)};
  std::size_t line_no = 0;
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    std::istringstream fields(line);
    std::string s;
    std::string t;
    if (!(fields >> s) || s.front() == '#') continue;
    std::string extra;
    if (!(fields >> t) || (fields >> extra)) throw ParseError(line_no, "expected '<source> <target>'");
    const Vertex sv = source.at(s);
    const Vertex tv = target.at(t);
    if (assignment[sv]) throw ParseError(line_no, "source vertex '" + s + "' mapped twice");
    assignment[sv] = tv;
  }
  std::vector<Vertex> total(source.size());
  for (Vertex v = 0; v < source.size(); ++v) {
    if (assignment[v]) {
      total[v] = *assignment[v];
    } else if (auto same = target.find(source.label(v))) {
      total[v] = *same;
    } else {
      throw DomainMismatch("map is not total: no image for source vertex '" + source.label(v) + "'");
    }
  }
  return CompressionMap(source, target, std::move(total));
}

}  // namespace vsplit
