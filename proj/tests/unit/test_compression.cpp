#include <random>

#include <gtest/gtest.h>

#include "support.hpp"
#include "vsplit/census.hpp"
#include "vsplit/compression.hpp"
#include "vsplit/errors.hpp"
#include "vsplit/predicates.hpp"

using namespace vsplit;
using namespace vsplit::testing;

namespace {

// Source g_split -> target g_path, t to `image`, others by label.
CompressionMap example1_map(const std::string& image) {
  const DiGraph split = fixture("g_split");
  const DiGraph path = fixture("g_path");
  return parse_map("t " + image + "\n", split, path);
}

DiGraph chain3() { return graph({"x", "y", "z"}, {{"x", "y"}, {"y", "z"}, {"x", "z"}}); }

}  // namespace

TEST(Verify, Example1IsValid) {
  const CompressionMap m = example1_map("y");
  EXPECT_TRUE(is_valid(verify_compression(m)));
  EXPECT_EQ(describe(verify_compression(m), m), "Valid");
}

TEST(Verify, WrongImageBreaksArrowPreservation) {
  const CompressionMap m = example1_map("x");
  const CompressionVerdict v = verify_compression(m);
  ASSERT_TRUE(std::holds_alternative<verdict::ArrowNotPreserved>(v));
  const Arrow a = std::get<verdict::ArrowNotPreserved>(v).source_arrow;
  EXPECT_EQ(format_arrow(m.source(), a), "t z");
  EXPECT_EQ(condition_name(v), "condition 1");
}

TEST(Verify, IdentityIsValid) {
  for (const char* name : {"g_path", "g_ex", "g_lock", "g_pair", "g_unbal"})
    EXPECT_TRUE(is_valid(verify_compression(CompressionMap::identity(fixture(name))))) << name;
}

TEST(Verify, UnliftedTripleBreaksCondition2) {
  const DiGraph target = chain3();
  const DiGraph source = graph({"x", "y", "y'", "z"}, {{"x", "y"}, {"y'", "z"}, {"x", "z"}});
  const CompressionMap m(source, target, {0, 1, 1, 2});
  const CompressionVerdict v = verify_compression(m);
  ASSERT_TRUE(std::holds_alternative<verdict::TripleNotLifted>(v));
  EXPECT_EQ(std::get<verdict::TripleNotLifted>(v).target_triple, (Triple{0, 1, 2}));
}

TEST(Verify, Condition3Halves) {
  // Non-loop arrow inside a fiber collapses to a loop.
  const DiGraph a = graph({"p", "q"}, {{"p", "q"}});
  const DiGraph one = graph({"o"}, {});
  EXPECT_TRUE(std::holds_alternative<verdict::ArrowCollapsed>(
      verify_compression(CompressionMap(a, one, {0, 0}))));
  // Two source arrows onto one target arrow.
  const DiGraph two = graph({"p", "p2", "q"}, {{"p", "q"}, {"p2", "q"}});
  const DiGraph target = graph({"p", "q"}, {{"p", "q"}});
  const CompressionVerdict v = verify_compression(CompressionMap(two, target, {0, 0, 1}));
  ASSERT_TRUE(std::holds_alternative<verdict::ArrowsCollide>(v));
}

TEST(Verify, SurjectivityAndPreconditions) {
  const DiGraph path = fixture("g_path");
  const DiGraph pair = graph({"x", "y"}, {{"x", "y"}});
  EXPECT_TRUE(std::holds_alternative<verdict::NotSurjective>(
      verify_compression(CompressionMap(pair, path, {0, 1}))));
  EXPECT_THROW(CompressionMap(pair, path, {0}), DomainMismatch);
  EXPECT_THROW(CompressionMap(pair, path, {0, 7}), DomainMismatch);
  const DiGraph bare = parse_digraph("vertices: x y\nloops: explicit\narrows:\nx y\n");
  EXPECT_THROW(verify_compression(CompressionMap(bare, bare, {0, 1})), NotReflexive);
}

TEST(Compose, WorkedExampleAndIdentity) {
  const CompressionMap m = example1_map("y");
  const CompressionMap left = compose(CompressionMap::identity(m.target()), m);
  EXPECT_EQ(left.assignment(), m.assignment());
  const CompressionMap right = compose(m, CompressionMap::identity(m.source()));
  EXPECT_EQ(right.assignment(), m.assignment());
  EXPECT_THROW(compose(m, m), ChainMismatch);
}

TEST(Compose, ChainOfSplitsVerifies) {
  const DiGraph path = fixture("g_path");
  auto [g1, m1] = split_vertex(path, path.at("y"), {}, {path.at("z")}, "t1");
  auto [g2, m2] = split_vertex(g1, g1.at("x"), {}, {}, "t2");
  const CompressionMap c = compose(m1, m2);
  EXPECT_TRUE(is_valid(verify_compression(c)));
  EXPECT_EQ(c(g2.at("t1")), path.at("y"));
  EXPECT_EQ(c(g2.at("t2")), path.at("x"));
}

TEST(SplitVertex, Example1) {
  const DiGraph path = fixture("g_path");
  auto [g, m] = split_vertex(path, path.at("y"), {}, {path.at("z")}, "t");
  EXPECT_TRUE(is_isomorphic(g, fixture("g_split")));
  EXPECT_TRUE(is_valid(verify_compression(m)));
  EXPECT_EQ(m(g.at("t")), path.at("y"));
}

TEST(SplitVertex, MovingNothingIsValid) {
  const DiGraph ex = fixture("g_ex");
  auto [g, m] = split_vertex(ex, ex.at("4"), {}, {}, "t");
  EXPECT_EQ(g.star_arrow_count(), ex.star_arrow_count());
  EXPECT_TRUE(is_valid(verify_compression(m)));
}

TEST(SplitVertex, RefusesInvalidSplits) {
  const DiGraph c = chain3();
  try {
    split_vertex(c, c.at("y"), {}, {c.at("z")}, "t");
    FAIL() << "expected InvalidSplit";
  } catch (const InvalidSplit& e) {
    ASSERT_TRUE(std::holds_alternative<verdict::TripleNotLifted>(e.verdict()));
    EXPECT_EQ(std::get<verdict::TripleNotLifted>(e.verdict()).target_triple, (Triple{0, 1, 2}));
  }
  EXPECT_THROW(split_vertex(c, c.at("y"), {c.at("z")}, {}, "t"), PreconditionViolated);
  EXPECT_THROW(split_vertex(c, c.at("y"), {}, {}, "x"), DuplicateVertex);
}

TEST(MapFile, ParsingRules) {
  const DiGraph split = fixture("g_split");
  const DiGraph path = fixture("g_path");
  EXPECT_THROW(parse_map("x x\n", split, path), DomainMismatch);
  EXPECT_THROW(parse_map("t y\nt y\n", split, path), ParseError);
  EXPECT_THROW(parse_map("t q\n", split, path), UnknownVertex);
  EXPECT_THROW(parse_map("t y extra\n", split, path), ParseError);
  const CompressionMap m = parse_map("# comment\n\nt y\n", split, path);
  EXPECT_EQ(m(split.at("t")), path.at("y"));
}

// Every valid split map on seeded random stable graphs satisfies the
// transitive-inducing lemma and the three parts of the compression theorem.
TEST(CompressionProperty, TheoremsHoldOnRandomSplits) {
  std::mt19937 rng(31);
  int maps = 0;
  for (int i = 0; i < 400; ++i) {
    const DiGraph g = random_graph(rng, 3 + i % 4, 0.35);
    const Vertex x = rng() % g.size();
    std::vector<Vertex> ins;
    std::vector<Vertex> outs;
    for (Vertex v = 0; v < g.size(); ++v) {
      if (v == x) continue;
      if (g.has_arrow(v, x) && rng() % 2) ins.push_back(v);
      if (g.has_arrow(x, v) && rng() % 2) outs.push_back(v);
    }
    try {
      auto [h, m] = split_vertex(g, x, ins, outs, "t");
      ++maps;
      EXPECT_FALSE(transitive_inducing_violation(m));
      EXPECT_FALSE(compression_theorem_violation(m));
      EXPECT_FALSE(locked_transfer_violation(m));
      EXPECT_EQ(h.star_arrow_count(), g.star_arrow_count());
    } catch (const InvalidSplit&) {
    }
  }
  EXPECT_GT(maps, 100);
}
