#include "bootlab/percolation.hpp"

#include <gtest/gtest.h>

#include "bootlab/generators.hpp"
#include "support/oracles.hpp"

namespace bootlab {
namespace {

VertexSet set_of(std::size_t n, std::vector<Vertex> members) { return VertexSet(n, members); }

TEST(Percolate, PathTwoEnds) {
  const auto res = percolate(path_graph(3), set_of(3, {0, 2}), 2);
  EXPECT_TRUE(res.complete());
  EXPECT_EQ(res.generations, 1u);
  EXPECT_EQ(res.generation, (std::vector<std::int32_t>{0, 1, 0}));
  EXPECT_EQ(res.newly_active_per_generation, (std::vector<std::size_t>{2, 1}));
}

TEST(Percolate, StarTwoLeaves) {
  const Graph star = star_graph(5);
  const auto res = percolate(star, set_of(6, {1, 2}), 2);
  EXPECT_EQ(res.active.members(), (std::vector<Vertex>{0, 1, 2}));
  EXPECT_EQ(res.generations, 1u);
  for (Vertex v = 3; v <= 5; ++v) EXPECT_EQ(res.generation[v], kNeverActive);
  EXPECT_EQ(excited_set(star, res, 2).members(), (std::vector<Vertex>{3, 4, 5}));
}

TEST(Percolate, DisjointCliques) {
  const auto res = percolate(disjoint_cliques(3, 3), set_of(12, {0, 1, 4, 5, 8, 9}), 2);
  EXPECT_TRUE(res.complete());
  EXPECT_EQ(res.generations, 1u);
}

TEST(Percolate, Errors) {
  const std::vector<Edge> multi = {{0, 1}, {0, 1}};
  EXPECT_THROW(percolate(Graph::build(2, multi, GraphMode::multi), VertexSet(2), 2), GraphError);
  EXPECT_THROW(percolate(path_graph(3), VertexSet(3), 0), GraphError);
  EXPECT_THROW(percolate(path_graph(3), VertexSet(4), 1), GraphError);
}

TEST(Contagious, Examples) {
  const Graph k4 = complete_graph(4);
  for (Vertex a = 0; a < 4; ++a) {
    for (Vertex b = a + 1; b < 4; ++b) EXPECT_TRUE(is_contagious(k4, set_of(4, {a, b}), 2));
  }
  EXPECT_FALSE(is_contagious(cycle_graph(6), set_of(6, {0, 1}), 2));
  EXPECT_TRUE(is_contagious(fixture("petersen"), VertexSet::full(10), 3));
}

TEST(Excited, Edges) {
  const Graph k4 = complete_graph(4);
  EXPECT_TRUE(excited_set(k4, percolate(k4, set_of(4, {0, 1}), 2), 2).empty());
  EXPECT_TRUE(excited_set(k4, percolate(k4, VertexSet(4), 2), 2).empty());
}

// Oracle equivalence, closure idempotence, generation soundness, degree guard.
TEST(PercolateProperties, RandomSmallGraphs) {
  Rng rng(2718);
  for (int trial = 0; trial < 120; ++trial) {
    const std::size_t n = 1 + rng.below(8);
    const Graph g = oracle::coin_flip_graph(n, 0.2 + 0.6 * rng.uniform(), rng);
    const std::size_t r = 1 + rng.below(3);
    VertexSet seeds(n);
    for (Vertex v = 0; v < n; ++v) {
      if (rng.bernoulli(0.35)) seeds.insert(v);
    }
    const auto res = percolate(g, seeds, r);
    EXPECT_EQ(res.active, oracle::naive_closure(g, seeds, r));
    EXPECT_EQ(percolate(g, res.active, r).active, res.active);

    const auto gens = oracle::naive_generations(g, seeds, r);
    ASSERT_EQ(res.generations + 1, gens.size());
    for (Vertex v = 0; v < n; ++v) {
      std::int32_t expected = kNeverActive;
      for (std::size_t i = 0; i < gens.size(); ++i) {
        if (gens[i].contains(v)) {
          expected = static_cast<std::int32_t>(i);
          break;
        }
      }
      EXPECT_EQ(res.generation[v], expected);
      if (res.generation[v] >= 1) {
        std::size_t earlier = 0;
        for (Vertex u : g.neighbors(v)) {
          earlier += (res.generation[u] != kNeverActive && res.generation[u] < res.generation[v]) ? 1 : 0;
        }
        EXPECT_GE(earlier, r);
      }
      if (g.degree(v) < r) EXPECT_EQ(res.active.contains(v), seeds.contains(v));
    }
  }
}

TEST(PercolateProperties, MonotoneInSeeds) {
  Rng rng(99);
  for (int trial = 0; trial < 50; ++trial) {
    const Graph g = gnp(60, 0.08, rng);
    VertexSet small(60), large(60);
    for (Vertex v = 0; v < 60; ++v) {
      const double u = rng.uniform();
      if (u < 0.1) small.insert(v);
      if (u < 0.2) large.insert(v);
    }
    const auto a = percolate(g, small, 2).active;
    const auto b = percolate(g, large, 2).active;
    for (Vertex v : a.members()) EXPECT_TRUE(b.contains(v));
  }
}

TEST(CascadeEngine, MatchesPercolate) {
  Rng rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    const Graph g = gnp(80, 0.06, rng);
    const std::size_t r = 1 + rng.below(3);
    Cascade c(g, r);
    VertexSet seeds(80);
    for (int step = 0; step < 10; ++step) {
      const auto v = static_cast<Vertex>(rng.below(80));
      seeds.insert(v);
      c.activate(v);
      const auto ref = percolate(g, seeds, r);
      EXPECT_EQ(c.active_set(), ref.active);
      EXPECT_EQ(c.reach_count(), ref.active.size() + boundary(g, ref.active).size());
      for (Vertex w = 0; w < 80; ++w) {
        std::size_t cnt = 0;
        for (Vertex u : g.neighbors(w)) cnt += ref.active.contains(u) ? 1 : 0;
        EXPECT_EQ(c.active_neighbors(w), cnt);
      }
    }
  }
}

TEST(CascadeEngine, TrialRollbackRestoresState) {
  Rng rng(6);
  const Graph g = gnp(100, 0.05, rng);
  Cascade c(g, 2);
  for (Vertex v : {3u, 17u, 40u}) c.activate(v);
  const auto before = c.active_set();
  const auto reach = c.reach_count();
  for (Vertex v = 0; v < 100; ++v) {
    c.begin_trial();
    c.activate(v);
    c.rollback();
    EXPECT_EQ(c.active_set(), before);
    EXPECT_EQ(c.reach_count(), reach);
  }
  EXPECT_THROW(c.rollback(), GraphError);
}

TEST(CascadeEngine, KthInactive) {
  const Graph g = empty_graph(10);
  Cascade c(g, 1);
  c.activate(0);
  c.activate(4);
  c.activate(9);
  EXPECT_EQ(c.inactive_count(), 7u);
  const std::vector<Vertex> expected = {1, 2, 3, 5, 6, 7, 8};
  for (std::size_t k = 0; k < 7; ++k) EXPECT_EQ(c.kth_inactive(k), expected[k]);
  EXPECT_THROW(c.kth_inactive(7), GraphError);
}

}  // namespace
}  // namespace bootlab
