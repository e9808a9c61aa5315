#include <algorithm>
#include <random>

#include <gtest/gtest.h>

#include "support.hpp"
#include "vsplit/errors.hpp"
#include "vsplit/predicates.hpp"

using namespace vsplit;
using namespace vsplit::testing;

namespace {

Triple triple(const DiGraph& g, const char* a, const char* b, const char* c) {
  return {g.at(a), g.at(b), g.at(c)};
}

Quadruple quad(const DiGraph& g, const char* a, const char* b, const char* c, const char* d) {
  return {g.at(a), g.at(b), g.at(c), g.at(d)};
}

// Balance restricted to four distinct vertices; used to show the repeats matter.
bool balanced_on_distinct(const DiGraph& g) {
  const std::size_t n = g.size();
  for (Vertex w = 0; w < n; ++w)
    for (Vertex x = 0; x < n; ++x)
      for (Vertex y = 0; y < n; ++y)
        for (Vertex z = 0; z < n; ++z) {
          if (w == x || w == y || w == z || x == y || x == z || y == z) continue;
          if (g.has_arrow(w, x) && g.has_arrow(x, y) && g.has_arrow(y, z) && g.has_arrow(w, z) &&
              g.has_arrow(w, y) != g.has_arrow(x, z))
            return false;
        }
  return true;
}

std::vector<std::string> clasp_labels(const DiGraph& g) {
  std::vector<std::string> out;
  for (const ClaspRecord& r : clasps(g)) out.push_back(g.label(r.vertex));
  return out;
}

}  // namespace

TEST(PropertyReport, SplitIsPreordered) {
  const DiGraph g = fixture("g_split");
  const PropertyReport r = property_report(g);
  EXPECT_TRUE(r.reflexive);
  EXPECT_TRUE(r.transitive);
  EXPECT_TRUE(r.preordered);
}

TEST(PropertyReport, PathIsNotTransitive) {
  const DiGraph g = fixture("g_path");
  const PropertyReport r = property_report(g);
  EXPECT_FALSE(r.transitive);
  ASSERT_TRUE(r.transitivity_witness);
  EXPECT_EQ(*r.transitivity_witness, triple(g, "x", "y", "z"));
  EXPECT_FALSE(r.preordered);
}

TEST(PropertyReport, WorkedExample) {
  const PropertyReport r = property_report(fixture("g_ex"));
  ASSERT_TRUE(r.balanced && r.stable);
  EXPECT_TRUE(r.balanced->holds);
  EXPECT_TRUE(r.stable->holds);
  EXPECT_FALSE(r.preordered);
}

TEST(PropertyReport, NonReflexiveSkipsBalance) {
  const DiGraph g = parse_digraph("vertices: a b\nloops: explicit\narrows:\na b\na a\n");
  const PropertyReport r = property_report(g);
  EXPECT_FALSE(r.reflexive);
  EXPECT_EQ(r.missing_loop, Vertex{1});
  EXPECT_FALSE(r.balanced);
  EXPECT_FALSE(r.stable);
  const auto j = report_to_json(g, r);
  EXPECT_TRUE(j["balanced"].is_null());
}

TEST(TransTriples, Examples) {
  const DiGraph ex = fixture("g_ex");
  EXPECT_EQ(trans_triples(ex, TripleScope::Distinct),
            (std::vector<Triple>{triple(ex, "2", "4", "6"), triple(ex, "3", "4", "7")}));
  const auto all = trans_triples(ex);
  for (Vertex v = 0; v < ex.size(); ++v)
    EXPECT_TRUE(std::binary_search(all.begin(), all.end(), Triple{v, v, v}));
  EXPECT_TRUE(trans_triples(fixture("g_path"), TripleScope::Distinct).empty());
}

TEST(Balanced, Examples) {
  const DiGraph unbal = fixture("g_unbal");
  const BalanceCheck c = check_balanced(unbal);
  EXPECT_FALSE(c.holds);
  EXPECT_EQ(c.witness, quad(unbal, "w", "x", "y", "z"));
  EXPECT_TRUE(is_balanced(fixture("g_ex")));
  EXPECT_TRUE(is_balanced(fixture("g_pair")));
}

TEST(Balanced, RepeatedVerticesCount) {
  // A pair plus one outgoing arrow: (r, s, r, e) has rs, sr, re, re with rr
  // present and se absent. No distinct quadruple exists on 3 vertices.
  const DiGraph g = graph({"r", "s", "e"}, {{"r", "s"}, {"s", "r"}, {"r", "e"}});
  EXPECT_TRUE(balanced_on_distinct(g));
  const BalanceCheck c = check_balanced(g);
  EXPECT_FALSE(c.holds);
  EXPECT_EQ(c.witness, quad(g, "r", "s", "r", "e"));
}

TEST(Stable, Examples) {
  const DiGraph ns = fixture("g_notstable");
  const StabilityCheck c = check_stable(ns);
  EXPECT_FALSE(c.holds);
  EXPECT_EQ(c.failure, StabilityFailure::Stability);
  EXPECT_EQ(c.witness, quad(ns, "a", "b", "c", "d"));
  EXPECT_TRUE(is_balanced(ns));
  EXPECT_TRUE(is_stable(fixture("g_ex")));
  EXPECT_TRUE(is_stable(fixture("g_path")));

  const StabilityCheck u = check_stable(fixture("g_unbal"));
  EXPECT_FALSE(u.holds);
  EXPECT_EQ(u.failure, StabilityFailure::Balance);
}

TEST(Stable, RequiresReflexivity) {
  const DiGraph g = parse_digraph("vertices: a b\nloops: explicit\narrows:\na b\n");
  EXPECT_THROW(is_balanced(g), NotReflexive);
  EXPECT_THROW(is_stable(g), NotReflexive);
  EXPECT_THROW(clasps(g), NotReflexive);
  EXPECT_THROW(soloists(g), NotReflexive);
  EXPECT_THROW(locked_status(g, 0), NotReflexive);
}

TEST(Clasps, Examples) {
  EXPECT_EQ(clasp_labels(fixture("g_ex")), (std::vector<std::string>{"2", "4"}));
  EXPECT_TRUE(clasps(fixture("g_split")).empty());
  const DiGraph path = fixture("g_path");
  const auto cs = clasps(path);
  ASSERT_EQ(cs.size(), 1u);
  EXPECT_EQ(path.label(cs[0].vertex), "y");
  EXPECT_EQ(cs[0].w, path.at("x"));
  EXPECT_EQ(cs[0].y, path.at("z"));
}

TEST(LockedStatus, Examples) {
  const DiGraph lock = fixture("g_lock");
  const LockStatus s = locked_status(lock, lock.at("x"));
  EXPECT_EQ(s.status, ClaspStatus::Locked);
  ASSERT_TRUE(s.witness);
  EXPECT_EQ(*s.witness, (LockWitness{lock.at("u"), lock.at("v"), lock.at("w"), lock.at("y")}));
  EXPECT_EQ(clasp_labels(lock), (std::vector<std::string>{"x"}));
  EXPECT_TRUE(is_stable(lock));
  EXPECT_TRUE(has_locked_clasp(lock));

  const DiGraph ex = fixture("g_ex");
  EXPECT_EQ(locked_status(ex, ex.at("4")).status, ClaspStatus::Unlocked);
  EXPECT_EQ(locked_status(ex, ex.at("3")).status, ClaspStatus::NotAClasp);
  EXPECT_FALSE(has_locked_clasp(ex));
  EXPECT_THROW(locked_status(ex, 99), UnknownVertex);
}

TEST(Soloists, Examples) {
  const DiGraph pair = fixture("g_pair");
  EXPECT_TRUE(soloists(pair).empty());
  EXPECT_TRUE(is_paired(pair, 0, 1));
  const DiGraph ex = fixture("g_ex");
  EXPECT_EQ(soloists(ex).size(), 6u);
  const auto solo = soloists(ex);
  for (const ClaspRecord& r : clasps(ex)) EXPECT_TRUE(std::binary_search(solo.begin(), solo.end(), r.vertex));
}

TEST(ReportText, ListsClaspsWithStatus) {
  const DiGraph ex = fixture("g_ex");
  const std::string text = report_to_text(ex, property_report(ex));
  EXPECT_NE(text.find("clasps: 2 (unlocked), 4 (unlocked)"), std::string::npos);
  const DiGraph split = fixture("g_split");
  EXPECT_NE(report_to_text(split, property_report(split)).find("preordered: yes"), std::string::npos);
}

// Properties over seeded random graphs: every witness re-checks against its
// defining condition.

TEST(PredicateProperty, PreorderedIsReflexiveAndTransitive) {
  std::mt19937 rng(5);
  for (int i = 0; i < 300; ++i) {
    const DiGraph g = random_graph(rng, 1 + i % 6, 0.45, i % 4 != 0);
    const PropertyReport r = property_report(g);
    EXPECT_EQ(r.preordered, is_reflexive(g) && is_transitive(g));
    if (r.missing_loop) EXPECT_FALSE(g.has_arrow(*r.missing_loop, *r.missing_loop));
    if (auto t = r.transitivity_witness) {
      EXPECT_TRUE(g.has_arrow(t->a, t->b));
      EXPECT_TRUE(g.has_arrow(t->b, t->c));
      EXPECT_FALSE(g.has_arrow(t->a, t->c));
    }
  }
}

TEST(PredicateProperty, WitnessesRevalidate) {
  std::mt19937 rng(11);
  for (int i = 0; i < 400; ++i) {
    const DiGraph g = random_graph(rng, 2 + i % 5, 0.45);
    const StabilityCheck s = check_stable(g);
    if (s.failure == StabilityFailure::Balance) {
      const Quadruple q = *s.witness;
      EXPECT_TRUE(g.has_arrow(q.a, q.b) && g.has_arrow(q.b, q.c) && g.has_arrow(q.c, q.d) &&
                  g.has_arrow(q.a, q.d));
      EXPECT_NE(g.has_arrow(q.a, q.c), g.has_arrow(q.b, q.d));
    } else if (s.failure == StabilityFailure::Stability) {
      const Quadruple q = *s.witness;
      EXPECT_EQ(std::set<Vertex>({q.a, q.b, q.c, q.d}).size(), 4u);
      EXPECT_TRUE(g.has_arrow(q.a, q.b) && g.has_arrow(q.a, q.c) && g.has_arrow(q.b, q.c) &&
                  g.has_arrow(q.b, q.d) && g.has_arrow(q.c, q.d));
      EXPECT_FALSE(g.has_arrow(q.a, q.d));
      EXPECT_TRUE(is_balanced(g));
    } else {
      EXPECT_TRUE(is_balanced(g));
    }
    for (const ClaspRecord& r : clasps(g)) {
      EXPECT_NE(r.w, r.vertex);
      EXPECT_NE(r.y, r.vertex);
      EXPECT_TRUE(g.has_arrow(r.w, r.vertex) && g.has_arrow(r.vertex, r.y));
      EXPECT_FALSE(g.has_arrow(r.w, r.y));
      if (r.status == ClaspStatus::Locked) {
        const LockWitness l = *r.lock;
        for (Vertex v : {l.u, l.v, l.w, l.y}) EXPECT_NE(v, r.vertex);
        EXPECT_TRUE(is_trans_triple(g, {l.u, r.vertex, l.y}));
        EXPECT_TRUE(is_trans_triple(g, {l.u, r.vertex, l.v}));
        EXPECT_TRUE(is_trans_triple(g, {l.w, r.vertex, l.v}));
        EXPECT_FALSE(g.has_arrow(l.w, l.y));
      } else {
        EXPECT_FALSE(lock_witness(g, r.vertex));
      }
    }
    if (is_transitive(g)) EXPECT_TRUE(clasps(g).empty());
  }
}
