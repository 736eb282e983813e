#include "bootlab/graph.hpp"

#include <gtest/gtest.h>

#include "bootlab/generators.hpp"
#include "support/oracles.hpp"

namespace bootlab {
namespace {

VertexSet set_of(std::size_t n, std::initializer_list<Vertex> members) {
  std::vector<Vertex> v(members);
  return VertexSet(n, v);
}

TEST(GraphBuild, PathDegrees) {
  const std::vector<Edge> edges = {{0, 1}, {1, 2}};
  const Graph g = Graph::build(3, edges);
  EXPECT_EQ(g.num_vertices(), 3u);
  EXPECT_EQ(g.num_edges(), 2u);
  EXPECT_EQ(g.degree(0), 1u);
  EXPECT_EQ(g.degree(1), 2u);
  EXPECT_EQ(g.degree(2), 1u);
}

TEST(GraphBuild, SingleIsolatedVertex) {
  const Graph g = Graph::build(1, {});
  EXPECT_EQ(g.num_vertices(), 1u);
  EXPECT_EQ(g.num_edges(), 0u);
  EXPECT_EQ(g.degree(0), 0u);
}

TEST(GraphBuild, MultiEdge) {
  const std::vector<Edge> edges = {{0, 1}, {0, 1}};
  const Graph g = Graph::build(2, edges, GraphMode::multi);
  EXPECT_FALSE(g.is_simple());
  EXPECT_EQ(g.multiplicity(0, 1), 2u);
  EXPECT_EQ(g.degree(0), 2u);
  EXPECT_EQ(g.edges().size(), 2u);
}

TEST(GraphBuild, SelfLoopCountsTwiceInDegree) {
  const std::vector<Edge> edges = {{0, 0}, {0, 1}};
  const Graph g = Graph::build(2, edges, GraphMode::multi);
  EXPECT_EQ(g.degree(0), 3u);
  EXPECT_EQ(g.multiplicity(0, 0), 1u);
}

TEST(GraphBuild, RejectsBadInput) {
  const std::vector<Edge> out_of_range = {{0, 3}};
  EXPECT_THROW(Graph::build(3, out_of_range), GraphError);
  EXPECT_THROW(Graph::build(3, out_of_range, GraphMode::multi), GraphError);
  const std::vector<Edge> dup = {{0, 1}, {1, 0}};
  EXPECT_THROW(Graph::build(2, dup), GraphError);
  const std::vector<Edge> loop = {{1, 1}};
  EXPECT_THROW(Graph::build(2, loop), GraphError);
}

TEST(GraphBuild, NeighborsSortedAndSymmetric) {
  const std::vector<Edge> edges = {{3, 0}, {0, 2}, {1, 0}, {2, 3}};
  const Graph g = Graph::build(4, edges);
  const auto nb = g.neighbors(0);
  EXPECT_EQ(std::vector<Vertex>(nb.begin(), nb.end()), (std::vector<Vertex>{1, 2, 3}));
  for (Vertex v = 0; v < 4; ++v) {
    for (Vertex u : g.neighbors(v)) EXPECT_TRUE(g.has_edge(u, v));
  }
}

TEST(VertexSetTest, Basics) {
  VertexSet s(5);
  EXPECT_TRUE(s.insert(3));
  EXPECT_FALSE(s.insert(3));
  EXPECT_TRUE(s.insert(1));
  EXPECT_EQ(s.size(), 2u);
  EXPECT_EQ(s.members(), (std::vector<Vertex>{1, 3}));
  EXPECT_TRUE(s.erase(3));
  EXPECT_FALSE(s.erase(3));
  EXPECT_EQ(s.size(), 1u);
  EXPECT_THROW(s.insert(5), GraphError);
  EXPECT_EQ(VertexSet::full(4).size(), 4u);
}

TEST(Neighborhoods, Boundary) {
  const Graph p3 = path_graph(3);
  EXPECT_EQ(boundary(p3, set_of(3, {0})).members(), (std::vector<Vertex>{1}));
  EXPECT_EQ(neighborhoods(p3, set_of(3, {0}), NeighborhoodKind::boundary).members(), (std::vector<Vertex>{1}));
}

TEST(Neighborhoods, SecondOnCycle) {
  const Graph c4 = cycle_graph(4);
  EXPECT_EQ(second_neighborhood(c4, set_of(4, {0})).members(), (std::vector<Vertex>{2}));
}

TEST(Neighborhoods, ClosedIsLiteralOnTriangle) {
  // Every vertex of a triangle neighbors some member of {0, 1}, including 0 and 1 themselves.
  const Graph k3 = complete_graph(3);
  EXPECT_EQ(neighborhood(k3, set_of(3, {0, 1})).members(), (std::vector<Vertex>{0, 1, 2}));
  // A single vertex does not neighbor itself.
  EXPECT_EQ(neighborhood(k3, set_of(3, {0})).members(), (std::vector<Vertex>{1, 2}));
}

TEST(Neighborhoods, SecondMayIntersectBoundary) {
  // On C4 with S = {0, 1}: vertex 2 is adjacent to 1 and at distance 2 from 0.
  const Graph c4 = cycle_graph(4);
  const auto s = set_of(4, {0, 1});
  const auto second = second_neighborhood(c4, s);
  const auto bd = boundary(c4, s);
  EXPECT_TRUE(second.contains(2));
  EXPECT_TRUE(bd.contains(2));
  EXPECT_EQ(second.members(), (std::vector<Vertex>{2, 3}));
}

TEST(Neighborhoods, McGeeSecondNeighborhoodSize) {
  const Graph g = fixture("mcgee");
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    EXPECT_EQ(second_neighborhood(g, set_of(g.num_vertices(), {v})).size(), 6u);
  }
}

TEST(Neighborhoods, UniverseMismatchThrows) {
  const Graph g = path_graph(3);
  EXPECT_THROW(boundary(g, VertexSet(4)), GraphError);
}

TEST(EdgeCount, Examples) {
  const Graph p3 = path_graph(3);
  EXPECT_EQ(ordered_edge_count(p3, set_of(3, {0}), set_of(3, {1})), 1u);
  const Graph k4 = complete_graph(4);
  EXPECT_EQ(ordered_edge_count(k4, VertexSet::full(4), VertexSet::full(4)), 12u);
  EXPECT_EQ(induced_edge_count(k4, VertexSet::full(4)), 6u);
  const Graph c4 = cycle_graph(4);
  EXPECT_EQ(ordered_edge_count(c4, set_of(4, {0, 1}), set_of(4, {2, 3})), 2u);
}

TEST(Components, Examples) {
  const std::vector<Edge> two = {{0, 1}, {2, 3}};
  const auto comps = components(Graph::build(4, two));
  ASSERT_EQ(comps.size(), 2u);
  EXPECT_EQ(comps[0].members(), (std::vector<Vertex>{0, 1}));
  EXPECT_EQ(comps[1].members(), (std::vector<Vertex>{2, 3}));

  EXPECT_EQ(components(cycle_graph(5)).size(), 1u);

  const auto restricted = component_members(cycle_graph(6), set_of(6, {0, 1, 3, 4}));
  ASSERT_EQ(restricted.size(), 2u);
  EXPECT_EQ(restricted[0], (std::vector<Vertex>{0, 1}));
  EXPECT_EQ(restricted[1], (std::vector<Vertex>{3, 4}));
}

TEST(DegreeStatsTest, Examples) {
  const auto k4 = degree_stats(complete_graph(4));
  EXPECT_TRUE(k4.is_regular);
  EXPECT_EQ(k4.regular_degree, 3u);
  const auto p3 = degree_stats(path_graph(3));
  EXPECT_EQ(p3.min_degree, 1u);
  EXPECT_EQ(p3.max_degree, 2u);
  EXPECT_FALSE(p3.is_regular);
  EXPECT_FALSE(p3.regular_degree.has_value());
  EXPECT_EQ(degree_stats(fixture("petersen")).regular_degree, 3u);
  EXPECT_THROW(require_regular(path_graph(3), "test"), GraphError);
}

// Random properties over small G(n, p).
TEST(GraphProperties, RandomCorpus) {
  Rng rng(12345);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng.below(14);
    const Graph g = oracle::coin_flip_graph(n, rng.uniform(), rng);
    VertexSet a(n), b(n);
    for (Vertex v = 0; v < n; ++v) {
      if (rng.bernoulli(0.4)) a.insert(v);
      if (rng.bernoulli(0.4)) b.insert(v);
    }
    std::size_t degree_sum = 0;
    for (Vertex v = 0; v < n; ++v) degree_sum += g.degree(v);
    EXPECT_EQ(degree_sum, 2 * g.num_edges());
    EXPECT_EQ(ordered_edge_count(g, a, b), ordered_edge_count(g, b, a));

    const auto bd = boundary(g, a);
    const auto nb = neighborhood(g, a);
    for (Vertex v : bd.members()) {
      EXPECT_FALSE(a.contains(v));
      EXPECT_TRUE(nb.contains(v));
    }
    // N² by definition: exact distance 2 from some member.
    const auto second = second_neighborhood(g, a);
    for (Vertex v = 0; v < n; ++v) {
      bool expected = false;
      for (Vertex s : a.members()) {
        if (s == v || g.has_edge(s, v)) continue;
        for (Vertex w : g.neighbors(s)) expected = expected || g.has_edge(w, v);
      }
      EXPECT_EQ(second.contains(v), expected);
    }

    std::size_t covered = 0;
    for (const auto& c : components(g, b)) {
      covered += c.size();
      for (Vertex v : c.members()) EXPECT_TRUE(b.contains(v));
    }
    EXPECT_EQ(covered, b.size());
  }
}

}  // namespace
}  // namespace bootlab
