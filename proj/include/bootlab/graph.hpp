#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace bootlab {

using Vertex = std::uint32_t;
using Edge = std::pair<Vertex, Vertex>;

class GraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class GraphMode { simple, multi };

/// Membership over [0, n) with a cached cardinality.
class VertexSet {
 public:
  VertexSet() = default;
  explicit VertexSet(std::size_t universe) : member_(universe, 0) {}
  VertexSet(std::size_t universe, std::span<const Vertex> members);

  static VertexSet full(std::size_t universe);

  std::size_t universe() const noexcept { return member_.size(); }
  std::size_t size() const noexcept { return count_; }
  bool empty() const noexcept { return count_ == 0; }

  bool contains(Vertex v) const noexcept { return v < member_.size() && member_[v] != 0; }

  /// Returns true when v was newly inserted.
  bool insert(Vertex v);
  bool erase(Vertex v);

  /// Members in ascending order.
  std::vector<Vertex> members() const;

  bool operator==(const VertexSet& other) const = default;

 private:
  std::vector<std::uint8_t> member_;
  std::size_t count_ = 0;
};

/// Immutable undirected graph in compressed sparse row form.
///
/// Neighbor lists are sorted ascending. In multigraph mode a parallel edge
/// appears once per copy and a self-loop contributes its vertex twice to its
/// own list, so degree(v) always equals the length of the list.
class Graph {
 public:
  Graph() = default;

  /// Throws GraphError on out-of-range endpoints, and in simple mode on
  /// duplicate pairs or self-loops.
  static Graph build(std::size_t n, std::span<const Edge> edges, GraphMode mode = GraphMode::simple);

  std::size_t num_vertices() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t num_edges() const noexcept { return num_edges_; }
  bool is_simple() const noexcept { return mode_ == GraphMode::simple; }
  GraphMode mode() const noexcept { return mode_; }

  std::span<const Vertex> neighbors(Vertex v) const noexcept {
    return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
  }
  std::size_t degree(Vertex v) const noexcept { return offsets_[v + 1] - offsets_[v]; }

  /// Number of parallel copies of {u, v}; self-loops count once per loop.
  std::size_t multiplicity(Vertex u, Vertex v) const;
  bool has_edge(Vertex u, Vertex v) const { return multiplicity(u, v) > 0; }

  /// Every edge once with u <= v, sorted; parallel copies repeated.
  std::vector<Edge> edges() const;

  /// Throws GraphError unless the graph is simple. `what` names the caller.
  void require_simple(const char* what) const;

 private:
  std::vector<std::size_t> offsets_;
  std::vector<Vertex> adjacency_;
  std::size_t num_edges_ = 0;
  GraphMode mode_ = GraphMode::simple;
};

enum class NeighborhoodKind { boundary, closed, second };

/// ∂(S): vertices outside S with a neighbor in S.
VertexSet boundary(const Graph& g, const VertexSet& s);

/// N(S): every vertex with a neighbor in S. Members of S are included only
/// when they themselves neighbor S.
VertexSet neighborhood(const Graph& g, const VertexSet& s);

/// N²(S): vertices at distance exactly 2 from some member of S. May
/// intersect S and N(S).
VertexSet second_neighborhood(const Graph& g, const VertexSet& s);

VertexSet neighborhoods(const Graph& g, const VertexSet& s, NeighborhoodKind kind);

/// e(A, B): ordered pairs (u, v) with u in A, v in B and {u, v} an edge.
std::size_t ordered_edge_count(const Graph& g, const VertexSet& a, const VertexSet& b);

/// Number of edges with both endpoints in S.
std::size_t induced_edge_count(const Graph& g, const VertexSet& s);

/// Connected components of g, or of the subgraph induced on `restrict_to`.
/// Components are ordered by smallest member; members ascend.
std::vector<std::vector<Vertex>> component_members(const Graph& g,
                                                   const std::optional<VertexSet>& restrict_to = std::nullopt);

std::vector<VertexSet> components(const Graph& g, const std::optional<VertexSet>& restrict_to = std::nullopt);

struct DegreeStats {
  std::size_t min_degree = 0;
  std::size_t max_degree = 0;
  bool is_regular = false;
  std::optional<std::size_t> regular_degree;
};

DegreeStats degree_stats(const Graph& g);

/// Returns d when g is d-regular, otherwise throws GraphError.
std::size_t require_regular(const Graph& g, const char* what);

}  // namespace bootlab
