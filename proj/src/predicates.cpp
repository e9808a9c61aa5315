#include "vsplit/predicates.hpp"

#include <sstream>
#include <string>

#include "vsplit/errors.hpp"

namespace vsplit {
namespace {

void require_reflexive(const DiGraph& g) {
  if (auto v = missing_loop(g)) throw NotReflexive("not reflexive: missing loop at " + g.label(*v));
}

template <typename Fn>
void for_each(const Row& r, Fn&& fn) {
  for (auto i = r.find_first(); i != Row::npos; i = r.find_next(i)) fn(static_cast<Vertex>(i));
}

}  // namespace

std::optional<Vertex> missing_loop(const DiGraph& g) {
  for (Vertex v = 0; v < g.size(); ++v)
    if (!g.has_arrow(v, v)) return v;
  return std::nullopt;
}

bool is_reflexive(const DiGraph& g) { return !missing_loop(g).has_value(); }

std::optional<Triple> transitivity_witness(const DiGraph& g) {
  for (Vertex x = 0; x < g.size(); ++x)
    for (Vertex y = 0; y < g.size(); ++y) {
      if (!g.has_arrow(x, y)) continue;
      // Heads reachable in two steps but not in one.
      Row missing = g.successors(y) - g.successors(x);
      if (missing.any()) return Triple{x, y, missing.find_first()};
    }
  return std::nullopt;
}

bool is_transitive(const DiGraph& g) { return !transitivity_witness(g).has_value(); }

bool is_preordered(const DiGraph& g) { return is_reflexive(g) && is_transitive(g); }

bool is_trans_triple(const DiGraph& g, Triple t) {
  return g.has_arrow(t.a, t.b) && g.has_arrow(t.b, t.c) && g.has_arrow(t.a, t.c);
}

std::vector<Triple> trans_triples(const DiGraph& g, TripleScope scope) {
  std::vector<Triple> out;
  for (Vertex a = 0; a < g.size(); ++a)
    for_each(g.successors(a), [&](Vertex b) {
      for_each(g.successors(b) & g.successors(a), [&](Vertex c) {
        if (scope == TripleScope::Distinct && (a == b || b == c || a == c)) return;
        out.push_back({a, b, c});
      });
    });
  return out;
}

BalanceCheck check_balanced(const DiGraph& g) {
  require_reflexive(g);
  const std::size_t n = g.size();
  for (Vertex w = 0; w < n; ++w)
    for (Vertex x = 0; x < n; ++x) {
      if (!g.has_arrow(w, x)) continue;
      for (Vertex y = 0; y < n; ++y) {
        if (!g.has_arrow(x, y)) continue;
        for (Vertex z = 0; z < n; ++z) {
          if (!g.has_arrow(y, z) || !g.has_arrow(w, z)) continue;
          if (g.has_arrow(w, y) != g.has_arrow(x, z)) return {false, Quadruple{w, x, y, z}};
        }
      }
    }
  return {};
}

bool is_balanced(const DiGraph& g) { return check_balanced(g).holds; }

StabilityCheck check_stable(const DiGraph& g) {
  if (auto b = check_balanced(g); !b.holds)
    return {false, StabilityFailure::Balance, b.witness};
  const std::size_t n = g.size();
  for (Vertex a = 0; a < n; ++a)
    for (Vertex b = 0; b < n; ++b) {
      if (b == a || !g.has_arrow(a, b)) continue;
      for (Vertex c = 0; c < n; ++c) {
        if (c == a || c == b || !g.has_arrow(a, c) || !g.has_arrow(b, c)) continue;
        for (Vertex d = 0; d < n; ++d) {
          if (d == a || d == b || d == c) continue;
          if (g.has_arrow(b, d) && g.has_arrow(c, d) && !g.has_arrow(a, d))
            return {false, StabilityFailure::Stability, Quadruple{a, b, c, d}};
        }
      }
    }
  return {};
}

bool is_stable(const DiGraph& g) { return check_stable(g).holds; }

std::optional<std::pair<Vertex, Vertex>> clasp_witness(const DiGraph& g, Vertex x) {
  for (Vertex w = 0; w < g.size(); ++w) {
    if (w == x || !g.has_arrow(w, x)) continue;
    for (Vertex y = 0; y < g.size(); ++y)
      if (y != x && g.has_arrow(x, y) && !g.has_arrow(w, y)) return std::pair{w, y};
  }
  return std::nullopt;
}

bool is_clasp(const DiGraph& g, Vertex x) { return clasp_witness(g, x).has_value(); }

std::optional<LockWitness> lock_witness(const DiGraph& g, Vertex x) {
  const std::size_t n = g.size();
  for (Vertex u = 0; u < n; ++u) {
    if (u == x || !g.has_arrow(u, x)) continue;
    for (Vertex v = 0; v < n; ++v) {
      if (v == x || !is_trans_triple(g, {u, x, v})) continue;
      for (Vertex w = 0; w < n; ++w) {
        if (w == x || !is_trans_triple(g, {w, x, v})) continue;
        for (Vertex y = 0; y < n; ++y) {
          if (y == x || g.has_arrow(w, y)) continue;
          if (is_trans_triple(g, {u, x, y})) return LockWitness{u, v, w, y};
        }
      }
    }
  }
  return std::nullopt;
}

LockStatus locked_status(const DiGraph& g, Vertex x) {
  if (x >= g.size()) throw UnknownVertex("vertex index out of range");
  require_reflexive(g);
  if (!is_clasp(g, x)) return {};
  if (auto lock = lock_witness(g, x)) return {ClaspStatus::Locked, lock};
  return {ClaspStatus::Unlocked, std::nullopt};
}

std::vector<ClaspRecord> clasps(const DiGraph& g) {
  require_reflexive(g);
  std::vector<ClaspRecord> out;
  for (Vertex x = 0; x < g.size(); ++x) {
    auto wit = clasp_witness(g, x);
    if (!wit) continue;
    ClaspRecord rec{x, wit->first, wit->second, ClaspStatus::Unlocked, lock_witness(g, x)};
    if (rec.lock) rec.status = ClaspStatus::Locked;
    out.push_back(rec);
  }
  return out;
}

bool has_locked_clasp(const DiGraph& g) {
  for (const auto& c : clasps(g))
    if (c.status == ClaspStatus::Locked) return true;
  return false;
}

bool is_paired(const DiGraph& g, Vertex r, Vertex s) {
  return g.has_arrow(r, s) && g.has_arrow(s, r);
}

std::vector<Vertex> soloists(const DiGraph& g) {
  require_reflexive(g);
  std::vector<Vertex> out;
  for (Vertex s = 0; s < g.size(); ++s) {
    Row partners = g.successors(s) & g.predecessors(s);
    partners.reset(s);
    if (partners.none()) out.push_back(s);
  }
  return out;
}

PropertyReport property_report(const DiGraph& g) {
  PropertyReport r;
  r.missing_loop = missing_loop(g);
  r.reflexive = !r.missing_loop;
  r.transitivity_witness = transitivity_witness(g);
  r.transitive = !r.transitivity_witness;
  r.preordered = r.reflexive && r.transitive;
  if (r.reflexive) {
    r.balanced = check_balanced(g);
    r.stable = check_stable(g);
    r.clasps = clasps(g);
    r.soloists = soloists(g);
  }
  return r;
}

namespace {

const char* status_name(ClaspStatus s) {
  switch (s) {
    case ClaspStatus::NotAClasp:
      return "not a clasp";
    case ClaspStatus::Unlocked:
      return "unlocked";
    case ClaspStatus::Locked:
      return "locked";
  }
  return "";
}

std::vector<std::string> names(const DiGraph& g, std::initializer_list<Vertex> vs) {
  std::vector<std::string> out;
  for (Vertex v : vs) out.push_back(g.label(v));
  return out;
}

std::string join(const std::vector<std::string>& parts, const char* sep = " ") {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

}  // namespace

nlohmann::ordered_json report_to_json(const DiGraph& g, const PropertyReport& r) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["graph"] = g.name();
  j["vertices"] = g.labels();
  j["reflexive"] = {{"holds", r.reflexive}};
  if (r.missing_loop) j["reflexive"]["witness"] = g.label(*r.missing_loop);
  j["transitive"] = {{"holds", r.transitive}};
  if (r.transitivity_witness) {
    const auto& t = *r.transitivity_witness;
    j["transitive"]["witness"] = names(g, {t.a, t.b, t.c});
  }
  j["preordered"] = r.preordered;
  if (!r.reflexive) {
    j["balanced"] = nullptr;
    j["stable"] = nullptr;
    j["clasps"] = nullptr;
    j["soloists"] = nullptr;
    return j;
  }
  j["balanced"] = {{"holds", r.balanced->holds}};
  if (const auto& w = r.balanced->witness) j["balanced"]["witness"] = names(g, {w->a, w->b, w->c, w->d});
  j["stable"] = {{"holds", r.stable->holds}};
  if (const auto& w = r.stable->witness) {
    j["stable"]["failure"] =
        r.stable->failure == StabilityFailure::Balance ? "balance" : "stability";
    j["stable"]["witness"] = names(g, {w->a, w->b, w->c, w->d});
  }
  auto cl = ordered_json::array();
  for (const auto& c : r.clasps) {
    ordered_json e;
    e["vertex"] = g.label(c.vertex);
    e["witness"] = names(g, {c.w, c.y});
    e["status"] = status_name(c.status);
    if (c.lock) e["lock_witness"] = names(g, {c.lock->u, c.lock->v, c.lock->w, c.lock->y});
    cl.push_back(std::move(e));
  }
  j["clasps"] = std::move(cl);
  auto so = ordered_json::array();
  for (Vertex s : r.soloists) so.push_back(g.label(s));
  j["soloists"] = std::move(so);
  return j;
}

std::string report_to_text(const DiGraph& g, const PropertyReport& r) {
  std::ostringstream out;
  auto yes = [](bool b) { return b ? "yes" : "no"; };
  if (!g.name().empty()) out << "graph: " << g.name() << "\n";
  out << "vertices: " << g.size() << ", non-loop arrows: " << g.star_arrow_count() << "\n";
  out << "reflexive: " << yes(r.reflexive);
  if (r.missing_loop) out << " (missing loop at " << g.label(*r.missing_loop) << ")";
  out << "\ntransitive: " << yes(r.transitive);
  if (const auto& t = r.transitivity_witness)
    out << " (witness " << join(names(g, {t->a, t->b, t->c})) << ")";
  out << "\npreordered: " << yes(r.preordered) << "\n";
  if (!r.reflexive) {
    out << "balanced: n/a\nstable: n/a\nclasps: n/a\nsoloists: n/a\n";
    return out.str();
  }
  out << "balanced: " << yes(r.balanced->holds);
  if (const auto& w = r.balanced->witness)
    out << " (witness " << join(names(g, {w->a, w->b, w->c, w->d})) << ")";
  out << "\nstable: " << yes(r.stable->holds);
  if (const auto& w = r.stable->witness)
    out << " (" << (r.stable->failure == StabilityFailure::Balance ? "balance" : "stability")
        << " witness " << join(names(g, {w->a, w->b, w->c, w->d})) << ")";
  out << "\nclasps: ";
  if (r.clasps.empty()) out << "none";
  std::vector<std::string> parts;
  for (const auto& c : r.clasps) parts.push_back(g.label(c.vertex) + " (" + status_name(c.status) + ")");
  out << join(parts, ", ") << "\nsoloists: ";
  std::vector<std::string> solo;
  for (Vertex s : r.soloists) solo.push_back(g.label(s));
  out << (solo.empty() ? std::string("none") : join(solo)) << "\n";
  return out.str();
}

}  // namespace vsplit
