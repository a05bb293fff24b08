#include "paritylab/sign_graph.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "paritylab/errors.h"
#include "paritylab/rng.h"

namespace paritylab {
namespace {

SignGraph Fixture() {
  return ReadInstance(std::filesystem::path(PARITYLAB_TEST_DATA) / "path3.txt").graph;
}

void ExpectSymmetricWithPositiveDiagonal(const SignGraph& g) {
  for (Vertex i = 0; i < g.size(); ++i) {
    ASSERT_EQ(g.sign(i, i), 1);
    for (Vertex j = 0; j < g.size(); ++j) ASSERT_EQ(g.sign(i, j), g.sign(j, i));
  }
}

TEST(SampleGnpHalf, SingleVertex) {
  const SignGraph g = SampleGnpHalf(1, 99);
  ASSERT_EQ(g.size(), 1);
  EXPECT_EQ(g.sign(0, 0), 1);
}

TEST(SampleGnpHalf, RejectsEmpty) { EXPECT_THROW(SampleGnpHalf(0, 1), std::invalid_argument); }

TEST(SampleGnpHalf, DeterministicInSeed) {
  EXPECT_EQ(SampleGnpHalf(77, 5), SampleGnpHalf(77, 5));
  EXPECT_FALSE(SampleGnpHalf(77, 5) == SampleGnpHalf(77, 6));
}

TEST(SampleGnpHalf, EdgeFractionNearHalf) {
  const int n = 2000;
  const SignGraph g = SampleGnpHalf(n, 7);
  long long plus = 0;
  for (Vertex i = 1; i < n; ++i)
    for (Vertex j = 0; j < i; ++j) plus += g.adjacent(i, j) ? 1 : 0;
  const double pairs = n * (n - 1) / 2.0;
  const double fraction = static_cast<double>(plus) / pairs;
  EXPECT_GE(fraction, 0.49);
  EXPECT_LE(fraction, 0.51);
}

TEST(SampleGnpHalf, SymmetricWithPositiveDiagonal) {
  for (int n = 1; n <= 64; ++n) ExpectSymmetricWithPositiveDiagonal(SampleGnpHalf(n, DeriveSeed(3, {static_cast<std::uint64_t>(n)})));
}

TEST(SampleGnpHalf, PaddingBitsAreZero) {
  const SignGraph g = SampleGnpHalf(70, 1);
  for (Vertex i = 0; i < g.size(); ++i) EXPECT_EQ(g.row(i)[1] >> (70 - 64), 0U);
}

TEST(PlantClique, WholeGraphBecomesComplete) {
  const PlantedInstance inst = PlantClique(SampleGnpHalf(20, 1), 20, 2);
  EXPECT_EQ(inst.graph, CompleteGraph(20));
  EXPECT_EQ(inst.p(), 20);
}

TEST(PlantClique, SingletonLeavesGraphUnchanged) {
  const SignGraph g = SampleGnpHalf(20, 1);
  const PlantedInstance inst = PlantClique(g, 1, 2);
  EXPECT_EQ(inst.graph, g);
  EXPECT_EQ(inst.clique.size(), 1U);
}

TEST(PlantClique, RejectsBadSize) {
  const SignGraph g = SampleGnpHalf(5, 1);
  EXPECT_THROW(PlantClique(g, 0, 1), std::invalid_argument);
  EXPECT_THROW(PlantClique(g, 6, 1), std::invalid_argument);
}

TEST(PlantClique, OnlyCliquePairsChange) {
  for (std::uint64_t s = 0; s < 100; ++s) {
    const SignGraph g = SampleGnpHalf(40, s);
    const PlantedInstance inst = PlantClique(g, 1 + static_cast<int>(s % 20), s + 1000);
    ASSERT_TRUE(std::is_sorted(inst.clique.begin(), inst.clique.end()));
    ASSERT_TRUE(IsClique(inst.graph, inst.clique));
    auto in_p = [&](Vertex v) { return std::binary_search(inst.clique.begin(), inst.clique.end(), v); };
    for (Vertex i = 0; i < 40; ++i) {
      for (Vertex j = 0; j < 40; ++j) {
        if (in_p(i) && in_p(j)) continue;
        ASSERT_EQ(inst.graph.sign(i, j), g.sign(i, j));
      }
    }
    ExpectSymmetricWithPositiveDiagonal(inst.graph);
  }
}

TEST(PlantClique, Deterministic) {
  const SignGraph g = SampleGnpHalf(50, 4);
  const PlantedInstance a = PlantClique(g, 10, 9);
  const PlantedInstance b = PlantClique(g, 10, 9);
  EXPECT_EQ(a.graph, b.graph);
  EXPECT_EQ(a.clique, b.clique);
}

TEST(EdgeSign, DiagonalAndSymmetry) {
  const SignGraph g = SampleGnpHalf(10, 3);
  EXPECT_EQ(EdgeSign(g, 3, 3), 1);
  for (Vertex i = 0; i < 10; ++i)
    for (Vertex j = 0; j < 10; ++j) EXPECT_EQ(EdgeSign(g, i, j), EdgeSign(g, j, i));
  EXPECT_THROW(EdgeSign(g, 10, 0), std::invalid_argument);
  EXPECT_THROW(EdgeSign(g, 0, -1), std::invalid_argument);
}

TEST(Fixture, PathOnThreeVertices) {
  const SignGraph g = Fixture();
  EXPECT_EQ(EdgeSign(g, 0, 1), 1);
  EXPECT_EQ(EdgeSign(g, 1, 2), 1);
  EXPECT_EQ(EdgeSign(g, 0, 2), -1);
  const VertexSet q = {0, 2};
  EXPECT_EQ(CommonNeighbors(g, q), (VertexSet{1}));
  EXPECT_EQ(DegreeWithin(g, 1, q), 2);
  const VertexSet all = {0, 1, 2};
  EXPECT_FALSE(IsClique(g, all));
}

TEST(CommonNeighbors, EmptyQueryAndCompleteGraph) {
  const SignGraph g = SampleGnpHalf(9, 2);
  EXPECT_EQ(CommonNeighbors(g, {}).size(), 9U);
  const SignGraph k = CompleteGraph(9);
  const VertexSet q = {1, 4, 8};
  EXPECT_EQ(CommonNeighbors(k, q).size(), 9U);
}

TEST(CommonNeighbors, MatchesDefinition) {
  const SignGraph g = SampleGnpHalf(130, 8);
  Rng rng(1);
  for (int t = 0; t < 50; ++t) {
    const VertexSet q = SampleSubset(130, 1 + t % 4, rng);
    VertexSet expected;
    for (Vertex v = 0; v < 130; ++v) {
      if (std::all_of(q.begin(), q.end(), [&](Vertex u) { return g.sign(v, u) == 1; })) {
        expected.push_back(v);
      }
    }
    EXPECT_EQ(CommonNeighbors(g, q), expected);
  }
}

TEST(CommonNeighbors, ContainsCliqueForCliqueQueries) {
  const PlantedInstance inst = PlantClique(SampleGnpHalf(200, 3), 30, 4);
  Rng rng(5);
  for (int t = 0; t < 100; ++t) {
    const VertexSet pick = SampleSubset(30, 1 + t % 8, rng);
    VertexSet q;
    for (int i : pick) q.push_back(inst.clique[static_cast<std::size_t>(i)]);
    const VertexSet q2 = CommonNeighbors(inst.graph, q);
    EXPECT_TRUE(std::includes(q2.begin(), q2.end(), inst.clique.begin(), inst.clique.end()));
  }
}

TEST(DegreeWithin, Basics) {
  const SignGraph k = CompleteGraph(8);
  EXPECT_EQ(DegreeWithin(k, 2, {}), 0);
  const VertexSet s = {0, 2, 5, 7};
  EXPECT_EQ(DegreeWithin(k, 2, s), 3);
}

TEST(IsClique, SmallSetsAreCliques) {
  const SignGraph g = SampleGnpHalf(6, 1);
  EXPECT_TRUE(IsClique(g, {}));
  const VertexSet one = {4};
  EXPECT_TRUE(IsClique(g, one));
}

TEST(Instance, RoundTrip) {
  const PlantedInstance inst = PlantClique(SampleGnpHalf(67, 11), 9, 12);
  std::stringstream buf;
  WriteInstance(buf, inst.graph, &inst.clique);
  const PlantedInstance back = ReadInstance(buf);
  EXPECT_EQ(back.graph, inst.graph);
  EXPECT_EQ(back.clique, inst.clique);

  std::stringstream plain;
  WriteInstance(plain, inst.graph);
  EXPECT_TRUE(ReadInstance(plain).clique.empty());
}

TEST(Instance, RowsFollowTheFormat) {
  std::istringstream in("n=3\n1\n10\n");
  const SignGraph g = ReadInstance(in).graph;
  EXPECT_EQ(g.sign(1, 0), 1);
  EXPECT_EQ(g.sign(2, 0), 1);
  EXPECT_EQ(g.sign(2, 1), -1);
  ExpectSymmetricWithPositiveDiagonal(g);
}

int ParseErrorLine(const std::string& text) {
  std::istringstream in(text);
  try {
    ReadInstance(in);
  } catch (const ParseError& e) {
    return static_cast<int>(e.line());
  }
  return -1;
}

TEST(Instance, MalformedInputNamesTheLine) {
  EXPECT_EQ(ParseErrorLine("m=3\n1\n01\n"), 1);
  EXPECT_EQ(ParseErrorLine("n=3\n11\n01\n"), 2);
  EXPECT_EQ(ParseErrorLine("n=3\n1\n0x\n"), 3);
  EXPECT_GT(ParseErrorLine("n=3\n1\n"), 0);               // missing row
  EXPECT_EQ(ParseErrorLine("n=3\n1\n01\n1\n"), 4);        // trailing content
  EXPECT_EQ(ParseErrorLine("n=3\n1\n01\nP=0,2\n"), 4);    // not a clique
  EXPECT_EQ(ParseErrorLine("n=3\n1\n01\nP=1,0\n"), 4);    // not sorted
  EXPECT_EQ(ParseErrorLine("n=3\n1\n01\nP=0,3\n"), 4);    // out of range
}

TEST(Builder, SetEdgeIsSymmetric) {
  SignGraph::Builder b(4);
  b.set_edge(0, 3, true).set_edge(2, 2, false);
  const SignGraph g = std::move(b).build();
  EXPECT_EQ(g.sign(3, 0), 1);
  EXPECT_EQ(g.sign(2, 2), 1);
  EXPECT_EQ(g.degree(0), 1);
  const std::pair<Vertex, Vertex> edges[] = {{0, 3}};
  EXPECT_EQ(GraphFromEdges(4, edges), g);
}

}  // namespace
}  // namespace paritylab
