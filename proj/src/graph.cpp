#include "bootlab/graph.hpp"

#include <algorithm>
#include <string>

namespace bootlab {

VertexSet::VertexSet(std::size_t universe, std::span<const Vertex> members) : member_(universe, 0) {
  for (Vertex v : members) insert(v);
}

VertexSet VertexSet::full(std::size_t universe) {
  VertexSet s;
  s.member_.assign(universe, 1);
  s.count_ = universe;
  return s;
}

bool VertexSet::insert(Vertex v) {
  if (v >= member_.size()) {
    throw GraphError("vertex " + std::to_string(v) + " outside universe of size " + std::to_string(member_.size()));
  }
  if (member_[v]) return false;
  member_[v] = 1;
  ++count_;
  return true;
}

bool VertexSet::erase(Vertex v) {
  if (v >= member_.size() || !member_[v]) return false;
  member_[v] = 0;
  --count_;
  return true;
}

std::vector<Vertex> VertexSet::members() const {
  std::vector<Vertex> out;
  out.reserve(count_);
  for (std::size_t v = 0; v < member_.size(); ++v) {
    if (member_[v]) out.push_back(static_cast<Vertex>(v));
  }
  return out;
}

Graph Graph::build(std::size_t n, std::span<const Edge> edges, GraphMode mode) {
  std::vector<std::size_t> degree(n, 0);
  for (const auto& [u, v] : edges) {
    if (u >= n || v >= n) {
      throw GraphError("edge (" + std::to_string(u) + "," + std::to_string(v) + ") has an endpoint outside [0, " +
                       std::to_string(n) + ")");
    }
    if (mode == GraphMode::simple && u == v) {
      throw GraphError("self-loop at vertex " + std::to_string(u) + " in a simple graph");
    }
    ++degree[u];
    ++degree[v];
  }

  Graph g;
  g.mode_ = mode;
  g.num_edges_ = edges.size();
  g.offsets_.assign(n + 1, 0);
  for (std::size_t v = 0; v < n; ++v) g.offsets_[v + 1] = g.offsets_[v] + degree[v];
  g.adjacency_.resize(g.offsets_[n]);

  std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  for (const auto& [u, v] : edges) {
    g.adjacency_[cursor[u]++] = v;
    g.adjacency_[cursor[v]++] = u;
  }
  for (std::size_t v = 0; v < n; ++v) {
    auto first = g.adjacency_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v]);
    auto last = g.adjacency_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v + 1]);
    std::sort(first, last);
    if (mode == GraphMode::simple) {
      auto dup = std::adjacent_find(first, last);
      if (dup != last) {
        throw GraphError("duplicate edge (" + std::to_string(v) + "," + std::to_string(*dup) + ") in a simple graph");
      }
    }
  }
  return g;
}

std::size_t Graph::multiplicity(Vertex u, Vertex v) const {
  if (u >= num_vertices() || v >= num_vertices()) return 0;
  auto nb = neighbors(u);
  auto [lo, hi] = std::equal_range(nb.begin(), nb.end(), v);
  auto count = static_cast<std::size_t>(hi - lo);
  return u == v ? count / 2 : count;
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(num_edges_);
  for (Vertex u = 0; u < num_vertices(); ++u) {
    auto nb = neighbors(u);
    for (std::size_t i = 0; i < nb.size(); ++i) {
      const Vertex v = nb[i];
      if (v > u) {
        out.emplace_back(u, v);
      } else if (v == u) {
        // A loop appears twice in a row; emit it once.
        out.emplace_back(u, u);
        ++i;
      }
    }
  }
  return out;
}

void Graph::require_simple(const char* what) const {
  if (!is_simple()) throw GraphError(std::string(what) + " requires a simple graph");
}

namespace {

void check_universe(const Graph& g, const VertexSet& s) {
  if (s.universe() != g.num_vertices()) {
    throw GraphError("vertex set universe " + std::to_string(s.universe()) + " does not match graph order " +
                     std::to_string(g.num_vertices()));
  }
}

}  // namespace

VertexSet boundary(const Graph& g, const VertexSet& s) {
  VertexSet out = neighborhood(g, s);
  for (Vertex v : s.members()) out.erase(v);
  return out;
}

VertexSet neighborhood(const Graph& g, const VertexSet& s) {
  check_universe(g, s);
  VertexSet out(g.num_vertices());
  for (Vertex v : s.members()) {
    for (Vertex u : g.neighbors(v)) out.insert(u);
  }
  return out;
}

VertexSet second_neighborhood(const Graph& g, const VertexSet& s) {
  check_universe(g, s);
  const std::size_t n = g.num_vertices();
  VertexSet out(n);
  // Distances from each source separately; "exactly 2 from some member" is a
  // per-source notion, so a multi-source BFS would undercount.
  std::vector<std::uint32_t> stamp(n, 0);
  std::uint32_t epoch = 0;
  for (Vertex src : s.members()) {
    ++epoch;
    stamp[src] = epoch;
    for (Vertex a : g.neighbors(src)) {
      stamp[a] = epoch;
    }
    for (Vertex a : g.neighbors(src)) {
      if (a == src) continue;
      for (Vertex b : g.neighbors(a)) {
        if (stamp[b] != epoch) {
          stamp[b] = epoch;
          out.insert(b);
        }
      }
    }
  }
  return out;
}

VertexSet neighborhoods(const Graph& g, const VertexSet& s, NeighborhoodKind kind) {
  switch (kind) {
    case NeighborhoodKind::boundary:
      return boundary(g, s);
    case NeighborhoodKind::closed:
      return neighborhood(g, s);
    case NeighborhoodKind::second:
      return second_neighborhood(g, s);
  }
  throw GraphError("unknown neighborhood kind");
}

std::size_t ordered_edge_count(const Graph& g, const VertexSet& a, const VertexSet& b) {
  check_universe(g, a);
  check_universe(g, b);
  std::size_t count = 0;
  for (Vertex u : a.members()) {
    for (Vertex v : g.neighbors(u)) {
      if (b.contains(v)) ++count;
    }
  }
  return count;
}

std::size_t induced_edge_count(const Graph& g, const VertexSet& s) {
  std::size_t ordered = ordered_edge_count(g, s, s);
  // Loops are listed twice in their own row, so they too contribute 2.
  return ordered / 2;
}

std::vector<std::vector<Vertex>> component_members(const Graph& g, const std::optional<VertexSet>& restrict_to) {
  const std::size_t n = g.num_vertices();
  if (restrict_to) check_universe(g, *restrict_to);
  auto in_domain = [&](Vertex v) { return !restrict_to || restrict_to->contains(v); };

  std::vector<std::uint8_t> seen(n, 0);
  std::vector<std::vector<Vertex>> out;
  std::vector<Vertex> stack;
  for (Vertex root = 0; root < n; ++root) {
    if (seen[root] || !in_domain(root)) continue;
    std::vector<Vertex> comp;
    seen[root] = 1;
    stack.push_back(root);
    while (!stack.empty()) {
      Vertex v = stack.back();
      stack.pop_back();
      comp.push_back(v);
      for (Vertex u : g.neighbors(v)) {
        if (!seen[u] && in_domain(u)) {
          seen[u] = 1;
          stack.push_back(u);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

std::vector<VertexSet> components(const Graph& g, const std::optional<VertexSet>& restrict_to) {
  std::vector<VertexSet> out;
  for (const auto& comp : component_members(g, restrict_to)) out.emplace_back(g.num_vertices(), comp);
  return out;
}

DegreeStats degree_stats(const Graph& g) {
  DegreeStats stats;
  const std::size_t n = g.num_vertices();
  if (n == 0) {
    stats.is_regular = true;
    stats.regular_degree = 0;
    return stats;
  }
  stats.min_degree = g.degree(0);
  stats.max_degree = g.degree(0);
  for (Vertex v = 1; v < n; ++v) {
    stats.min_degree = std::min(stats.min_degree, g.degree(v));
    stats.max_degree = std::max(stats.max_degree, g.degree(v));
  }
  stats.is_regular = stats.min_degree == stats.max_degree;
  if (stats.is_regular) stats.regular_degree = stats.min_degree;
  return stats;
}

std::size_t require_regular(const Graph& g, const char* what) {
  auto stats = degree_stats(g);
  if (!stats.is_regular) {
    throw GraphError(std::string(what) + " requires a regular graph (degrees range " +
                     std::to_string(stats.min_degree) + ".." + std::to_string(stats.max_degree) + ")");
  }
  return *stats.regular_degree;
}

}  // namespace bootlab
