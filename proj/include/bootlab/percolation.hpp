#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "bootlab/graph.hpp"

namespace bootlab {

inline constexpr std::int32_t kNeverActive = -1;

struct CascadeResult {
  /// <A0>, the closure of the seed set.
  VertexSet active;
  /// 0 for seeds, g >= 1 for vertices first active in A_g, kNeverActive otherwise.
  std::vector<std::int32_t> generation;
  /// Number of synchronous rounds that activated at least one vertex.
  std::size_t generations = 0;
  /// Entry g counts the vertices whose generation is g; entry 0 is |A0|.
  std::vector<std::size_t> newly_active_per_generation;

  bool complete() const noexcept { return active.size() == active.universe(); }
};

/// r-neighbor bootstrap percolation with synchronous generations:
/// A_i = A_{i-1} ∪ {v : |N(v) ∩ A_{i-1}| >= r}. O(n + m) by frontier levels.
/// Throws GraphError for multigraphs or r < 1.
CascadeResult percolate(const Graph& g, const VertexSet& seeds, std::size_t r);

bool is_contagious(const Graph& g, const VertexSet& seeds, std::size_t r);

/// Inactive vertices with exactly r - 1 active neighbors.
VertexSet excited_set(const Graph& g, const CascadeResult& result, std::size_t r);

/// Incremental closure for algorithms that add seeds one round at a time.
///
/// Tracks the active set A, per-vertex active-neighbor counts and
/// |A ∪ ∂(A)|. A trial (begin_trial / rollback) lets a caller score a
/// candidate seed and restore the previous state in time proportional to
/// the cascade it caused.
class Cascade {
 public:
  Cascade(const Graph& g, std::size_t r);

  /// Makes v a seed and closes the process. Returns the number of newly
  /// active vertices including v (0 when v was already active).
  std::size_t activate(Vertex v);
  std::size_t activate_all(std::span<const Vertex> seeds);

  bool is_active(Vertex v) const noexcept { return active_[v] != 0; }
  std::size_t active_neighbors(Vertex v) const noexcept { return count_[v]; }
  std::size_t active_count() const noexcept { return active_count_; }
  /// |A ∪ ∂(A)|
  std::size_t reach_count() const noexcept { return reach_count_; }
  std::size_t inactive_count() const noexcept { return n_ - active_count_; }
  bool complete() const noexcept { return active_count_ == n_; }

  /// The k-th smallest inactive vertex id, k in [0, inactive_count()).
  Vertex kth_inactive(std::size_t k) const;

  VertexSet active_set() const;
  const Graph& graph() const noexcept { return *g_; }
  std::size_t threshold() const noexcept { return r_; }

  void begin_trial();
  void rollback();

 private:
  void mark_active(Vertex v);
  void fenwick_add(std::size_t index, int delta);

  const Graph* g_;
  std::size_t r_;
  std::size_t n_;
  std::vector<std::uint8_t> active_;
  std::vector<std::uint32_t> count_;
  std::size_t active_count_ = 0;
  std::size_t reach_count_ = 0;
  // 1-based Fenwick tree over the inactive indicator.
  std::vector<std::int32_t> fenwick_;
  std::size_t fenwick_top_ = 1;
  std::vector<Vertex> queue_;
  std::vector<Vertex> log_;
  std::size_t trial_mark_ = 0;
  std::size_t trial_reach_ = 0;
  bool in_trial_ = false;
};

}  // namespace bootlab
