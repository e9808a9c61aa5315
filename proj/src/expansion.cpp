#include "vsplit/expansion.hpp"

#include <algorithm>

#include "vsplit/dg_format.hpp"
#include "vsplit/errors.hpp"
#include "vsplit/predicates.hpp"

namespace vsplit {
namespace {

void require_stable(const DiGraph& g) {
  if (auto v = missing_loop(g)) throw NotReflexive("not reflexive: missing loop at " + g.label(*v));
  if (!is_stable(g)) throw NotStable("not stable");
}

bool contains(const std::vector<Vertex>& set, Vertex v) {
  return std::find(set.begin(), set.end(), v) != set.end();
}

// Applies removed/added to a copy of g extended by a fresh vertex t.
DiGraph rebuild(const DiGraph& g, IterationRecord& rec, const std::string& new_label,
                const std::vector<Vertex>& in_from, const std::vector<Vertex>& out_to) {
  const Vertex x = rec.clasp;
  DiGraph h = g;
  const Vertex t = h.add_vertex(new_label);
  h.add_arrow(t, t);
  rec.new_vertex = t;
  for (Vertex a : in_from) rec.removed.push_back({a, x});
  for (Vertex b : out_to) rec.removed.push_back({x, b});
  for (Vertex a : in_from) rec.added.push_back({a, t});
  for (Vertex b : out_to) rec.added.push_back({t, b});
  std::sort(rec.removed.begin(), rec.removed.end());
  std::sort(rec.added.begin(), rec.added.end());
  for (const Arrow& e : rec.removed) h.remove_arrow(e.tail, e.head);
  for (const Arrow& e : rec.added) h.add_arrow(e.tail, e.head);
  return h;
}

void breach_unless(bool ok, const std::string& what) {
  if (!ok) throw InternalInvariantBreached(what);
}

void check_record(const IterationRecord& rec) {
  const std::string at = " (iteration " + std::to_string(rec.index) + ")";
  breach_unless(rec.removed.size() == rec.added.size(), "removed/added arrow counts differ" + at);
  for (const Arrow& e : rec.added)
    breach_unless(e.tail == rec.new_vertex || e.head == rec.new_vertex,
                  "added arrow avoids the new vertex" + at);
  for (const Arrow& e : rec.removed)
    breach_unless(e.tail == rec.clasp || e.head == rec.clasp, "removed arrow avoids the clasp" + at);
  if (rec.choice.kind == ConstructionKind::A) {
    for (Vertex y : rec.context.Y) breach_unless(contains(rec.B, y), "Y is not contained in B" + at);
  } else {
    breach_unless(!rec.T.empty(), "T is empty" + at);
  }
}

}  // namespace

ClaspContext clasp_context(const DiGraph& g, Vertex x) {
  if (x >= g.size()) throw UnknownVertex("vertex index out of range");
  if (auto v = missing_loop(g)) throw NotReflexive("not reflexive: missing loop at " + g.label(*v));
  if (!is_clasp(g, x)) throw NotAClasp(g.label(x) + " is not a clasp");
  ClaspContext ctx{x, {}, {}};
  const Row& into_x = g.predecessors(x);
  for (Vertex y = 0; y < g.size(); ++y) {
    if (y == x || !g.has_arrow(x, y)) continue;
    // Some w with wx present and wy absent.
    Row w = into_x - g.predecessors(y);
    if (w.any()) ctx.Y.push_back(y);
  }
  for (Vertex a = 0; a < g.size(); ++a) {
    if (a == x || !g.has_arrow(a, x)) continue;
    for (Vertex y : ctx.Y)
      if (g.has_arrow(a, y)) {
        ctx.A.push_back(a);
        break;
      }
  }
  return ctx;
}

namespace {

// Construction B witnesses (a, b) for a fixed y, smallest b then a.
std::optional<std::pair<Vertex, Vertex>> b_witness(const DiGraph& g, const ClaspContext& ctx,
                                                   Vertex y) {
  const Vertex x = ctx.clasp;
  for (Vertex b : ctx.A) {
    if (!is_trans_triple(g, {b, x, y})) continue;
    for (Vertex a : ctx.A)
      if (!g.has_arrow(a, y)) return std::pair{a, b};
  }
  return std::nullopt;
}

}  // namespace

ConstructionChoice select_construction(const DiGraph& g, const ClaspContext& ctx) {
  for (Vertex y : ctx.Y)
    if (auto ab = b_witness(g, ctx, y)) return {ConstructionKind::B, ab->first, ab->second, y};
  return {};
}

std::pair<DiGraph, IterationRecord> construction_a(const DiGraph& g, const ClaspContext& ctx,
                                                   const std::string& new_label) {
  const auto choice = select_construction(g, ctx);
  if (choice.kind != ConstructionKind::A)
    throw PreconditionViolated("construction B applies at " + g.label(ctx.clasp));
  const Vertex x = ctx.clasp;
  IterationRecord rec;
  rec.clasp = x;
  rec.context = ctx;
  rec.choice = choice;
  for (Vertex b = 0; b < g.size(); ++b) {
    if (b == x) continue;
    const bool in_b = std::any_of(ctx.Y.begin(), ctx.Y.end(), [&](Vertex y) {
      return is_trans_triple(g, {x, b, y}) || is_trans_triple(g, {x, y, b});
    });
    if (in_b) rec.B.push_back(b);
  }
  DiGraph h = rebuild(g, rec, new_label, ctx.A, rec.B);
  return {std::move(h), std::move(rec)};
}

std::pair<DiGraph, IterationRecord> construction_b(const DiGraph& g, const ClaspContext& ctx,
                                                   Vertex y_sel, const std::string& new_label) {
  if (!contains(ctx.Y, y_sel))
    throw PreconditionViolated(g.label(y_sel) + " is not in Y for clasp " + g.label(ctx.clasp));
  const auto ab = b_witness(g, ctx, y_sel);
  if (!ab) throw PreconditionViolated("construction B does not apply with y = " + g.label(y_sel));
  const Vertex x = ctx.clasp;
  IterationRecord rec;
  rec.clasp = x;
  rec.context = ctx;
  rec.choice = {ConstructionKind::B, ab->first, ab->second, y_sel};
  std::vector<Vertex> tails;
  std::vector<Vertex> heads;
  for (Vertex c = 0; c < g.size(); ++c) {
    if (g.has_arrow(c, y_sel)) continue;
    for (Vertex z = 0; z < g.size(); ++z) {
      if (z == x || !is_trans_triple(g, {c, x, z})) continue;
      rec.T.emplace_back(c, z);
      if (!contains(tails, c)) tails.push_back(c);
      if (!contains(heads, z)) heads.push_back(z);
    }
  }
  std::sort(heads.begin(), heads.end());
  DiGraph h = rebuild(g, rec, new_label, tails, heads);
  return {std::move(h), std::move(rec)};
}

std::string fresh_vertex_label(const DiGraph& g) {
  for (std::size_t k = 1;; ++k) {
    std::string label = "t" + std::to_string(k);
    if (!g.find(label)) return label;
  }
}

ExpansionStep expand_once(const DiGraph& g, Vertex x) {
  require_stable(g);
  if (x >= g.size()) throw UnknownVertex("vertex index out of range");
  const auto status = locked_status(g, x);
  if (status.status == ClaspStatus::NotAClasp) throw NotAClasp(g.label(x) + " is not a clasp");
  if (status.status == ClaspStatus::Locked) throw LockedClasp(g.label(x));

  const auto ctx = clasp_context(g, x);
  const auto choice = select_construction(g, ctx);
  const std::string label = fresh_vertex_label(g);
  auto [next, rec] = choice.kind == ConstructionKind::A ? construction_a(g, ctx, label)
                                                        : construction_b(g, ctx, choice.y, label);

  std::vector<Vertex> assignment(next.size());
  for (Vertex v = 0; v < g.size(); ++v) assignment[v] = v;
  assignment[rec.new_vertex] = x;
  CompressionMap step(next, g, std::move(assignment));
  const auto verdict = verify_compression(step);
  breach_unless(is_valid(verdict), "step map is not a compression: " + describe(verdict, step));
  breach_unless(is_stable(next), "expanded graph is not stable");
  breach_unless(!has_locked_clasp(next), "expanded graph has a locked clasp");
  return {std::move(next), std::move(step), std::move(rec)};
}

std::size_t iteration_cap(const DiGraph& g) { return g.size() + 2 * g.star_arrow_count(); }

ExpansionOutcome expand_to_preorder(const DiGraph& g) {
  require_stable(g);
  for (const auto& c : clasps(g))
    if (c.status == ClaspStatus::Locked) throw LockedClasp(g.label(c.vertex));

  const std::size_t cap = iteration_cap(g);
  ExpansionOutcome out{g, g, CompressionMap::identity(g), {}, {}};
  while (!is_transitive(out.result)) {
    breach_unless(out.trace.size() < cap, "iteration cap exceeded");
    const auto cl = clasps(out.result);
    breach_unless(!cl.empty(), "non-transitive graph without a clasp");
    auto step = expand_once(out.result, cl.front().vertex);
    step.record.index = out.trace.size() + 1;
    check_record(step.record);
    out.map = compose(out.map, step.map);
    out.result = std::move(step.graph);
    out.trace.push_back(std::move(step.record));
    out.steps.push_back(std::move(step.map));
  }
  const auto verdict = verify_compression(out.map);
  breach_unless(is_valid(verdict), "composite map is not a compression: " + describe(verdict, out.map));
  breach_unless(out.result.star_arrow_count() == g.star_arrow_count(), "non-loop arrow count changed");
  return out;
}

namespace {

using nlohmann::ordered_json;

ordered_json labels_json(const DiGraph& g, const std::vector<Vertex>& vs) {
  auto out = ordered_json::array();
  for (Vertex v : vs) out.push_back(g.label(v));
  return out;
}

ordered_json arrows_json(const DiGraph& g, const std::vector<Arrow>& arrows) {
  auto out = ordered_json::array();
  for (const Arrow& a : arrows) out.push_back({g.label(a.tail), g.label(a.head)});
  return out;
}

}  // namespace

ordered_json trace_to_json(const ExpansionOutcome& outcome) {
  // Every intermediate graph is a prefix of the result, so labels resolve there.
  const DiGraph& r = outcome.result;
  ordered_json doc;
  doc["input"] = emit_digraph(outcome.input);
  auto iterations = ordered_json::array();
  for (const auto& rec : outcome.trace) {
    ordered_json it;
    it["index"] = rec.index;
    it["clasp"] = r.label(rec.clasp);
    it["construction"] = rec.choice.kind == ConstructionKind::A ? "A" : "B";
    it["Y"] = labels_json(r, rec.context.Y);
    it["A"] = labels_json(r, rec.context.A);
    if (rec.choice.kind == ConstructionKind::A) {
      it["B"] = labels_json(r, rec.B);
    } else {
      auto t = ordered_json::array();
      for (const auto& [c, z] : rec.T) t.push_back({r.label(c), r.label(z)});
      it["T"] = std::move(t);
      it["witness"] = {{"a", r.label(rec.choice.a)},
                       {"b", r.label(rec.choice.b)},
                       {"y", r.label(rec.choice.y)}};
    }
    it["removed"] = arrows_json(r, rec.removed);
    it["added"] = arrows_json(r, rec.added);
    it["new_vertex"] = r.label(rec.new_vertex);
    iterations.push_back(std::move(it));
  }
  doc["iterations"] = std::move(iterations);
  doc["result"] = emit_digraph(r);
  ordered_json map = ordered_json::object();
  for (Vertex v = 0; v < r.size(); ++v) map[r.label(v)] = outcome.input.label(outcome.map(v));
  doc["map"] = std::move(map);
  return doc;
}

std::optional<std::string> validate_trace_json(const ordered_json& doc) {
  auto is_label_array = [](const ordered_json& j) {
    return j.is_array() && std::all_of(j.begin(), j.end(), [](const auto& e) { return e.is_string(); });
  };
  auto is_pair_array = [&](const ordered_json& j) {
    return j.is_array() && std::all_of(j.begin(), j.end(), [&](const auto& e) {
             return e.size() == 2 && is_label_array(e);
           });
  };
  if (!doc.is_object()) return "document is not an object";
  for (const char* key : {"input", "iterations", "result", "map"})
    if (!doc.contains(key)) return std::string("missing key '") + key + "'";
  if (!doc["input"].is_string() || !doc["result"].is_string()) return "input/result must be dg strings";
  DiGraph input;
  DiGraph result;
  try {
    input = parse_digraph(doc["input"].get<std::string>());
    result = parse_digraph(doc["result"].get<std::string>());
  } catch (const Error& e) {
    return std::string("embedded graph does not parse: ") + e.what();
  }
  if (!doc["iterations"].is_array()) return "iterations must be an array";
  std::size_t expected = 1;
  for (const auto& it : doc["iterations"]) {
    for (const char* key : {"index", "clasp", "construction", "Y", "A", "removed", "added", "new_vertex"})
      if (!it.contains(key)) return std::string("iteration missing key '") + key + "'";
    if (!it["index"].is_number_unsigned() || it["index"].get<std::size_t>() != expected++)
      return "iteration indices must be 1, 2, ...";
    if (!it["clasp"].is_string() || !it["new_vertex"].is_string()) return "clasp/new_vertex must be labels";
    if (!result.find(it["clasp"].get<std::string>()) || !result.find(it["new_vertex"].get<std::string>()))
      return "iteration references a vertex missing from the result";
    if (!is_label_array(it["Y"]) || !is_label_array(it["A"])) return "Y/A must be label arrays";
    if (!is_pair_array(it["removed"]) || !is_pair_array(it["added"])) return "removed/added must be arrow arrays";
    if (it["removed"].size() != it["added"].size()) return "removed and added differ in size";
    const auto kind = it["construction"];
    if (kind == "A") {
      if (!it.contains("B") || !is_label_array(it["B"])) return "construction A needs label array B";
    } else if (kind == "B") {
      if (!it.contains("T") || !is_pair_array(it["T"])) return "construction B needs pair array T";
      if (!it.contains("witness") || !it["witness"].is_object()) return "construction B needs witness";
      for (const char* key : {"a", "b", "y"})
        if (!it["witness"].contains(key) || !it["witness"][key].is_string()) return "witness needs a, b, y";
    } else {
      return "construction must be \"A\" or \"B\"";
    }
  }
  const auto& map = doc["map"];
  if (!map.is_object() || map.size() != result.size()) return "map must cover every result vertex";
  for (const auto& [src, tgt] : map.items()) {
    if (!result.find(src)) return "map source '" + src + "' not in result";
    if (!tgt.is_string() || !input.find(tgt.get<std::string>())) return "map target for '" + src + "' not in input";
  }
  return std::nullopt;
}

}  // namespace vsplit
