#include "bootlab/generators.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "bootlab/diagnostics.hpp"
#include "bootlab/graph_io.hpp"

namespace bootlab {
namespace {

std::size_t ipow(std::size_t base, std::size_t exp) {
  std::size_t out = 1;
  for (std::size_t i = 0; i < exp; ++i) out *= base;
  return out;
}

void add_clique(std::vector<Edge>& edges, Vertex first, std::size_t size) {
  for (std::size_t i = 0; i < size; ++i) {
    for (std::size_t j = i + 1; j < size; ++j) {
      edges.emplace_back(static_cast<Vertex>(first + i), static_cast<Vertex>(first + j));
    }
  }
}

}  // namespace

Graph config_model(std::size_t n, std::size_t d, Rng& rng) {
  if (d < 1) throw GraphError("config_model: degree must be at least 1");
  if ((n * d) % 2 != 0) throw GraphError("config_model: n*d must be even");
  std::vector<Vertex> cells(n * d);
  for (std::size_t i = 0; i < cells.size(); ++i) cells[i] = static_cast<Vertex>(i / d);
  rng.shuffle(std::span<Vertex>(cells));
  std::vector<Edge> edges;
  edges.reserve(cells.size() / 2);
  for (std::size_t i = 0; i + 1 < cells.size(); i += 2) {
    edges.emplace_back(std::min(cells[i], cells[i + 1]), std::max(cells[i], cells[i + 1]));
  }
  return Graph::build(n, edges, GraphMode::multi);
}

SimplifyReport simplify(const Graph& g) {
  SimplifyReport report;
  std::vector<Edge> kept;
  auto edges = g.edges();
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const auto& e = edges[i];
    if (e.first == e.second) {
      ++report.self_loops_removed;
    } else if (!kept.empty() && kept.back() == e) {
      ++report.parallel_collapsed;
    } else {
      kept.push_back(e);
    }
  }
  report.graph = Graph::build(g.num_vertices(), kept, GraphMode::simple);
  return report;
}

RetryResult config_model_retry(std::size_t n, std::size_t d, Rng& rng, std::size_t max_attempts) {
  for (std::size_t attempt = 1; attempt <= max_attempts; ++attempt) {
    auto report = simplify(config_model(n, d, rng));
    if (report.was_simple()) return {std::move(report.graph), attempt};
  }
  throw GraphError("config_model_retry: no simple sample in " + std::to_string(max_attempts) + " attempts");
}

Graph random_regular(std::size_t n, std::size_t d, Rng& rng) {
  if ((n * d) % 2 != 0) throw GraphError("random_regular: n*d must be even");
  if (d >= n) throw GraphError("random_regular: need d < n");
  if (d == 0) return empty_graph(n);

  std::vector<Vertex> owner(n * d);
  for (std::size_t i = 0; i < owner.size(); ++i) owner[i] = static_cast<Vertex>(i / d);

  std::vector<std::vector<Vertex>> adj(n);
  std::vector<Vertex> unpaired;
  auto adjacent = [&](Vertex u, Vertex v) {
    const auto& a = adj[u].size() <= adj[v].size() ? adj[u] : adj[v];
    const Vertex other = adj[u].size() <= adj[v].size() ? v : u;
    return std::find(a.begin(), a.end(), other) != a.end();
  };
  // Exhaustive check, run only after a streak of rejections.
  auto suitable_pair_exists = [&]() {
    std::vector<Vertex> live;
    for (std::size_t idx : unpaired) live.push_back(owner[idx]);
    std::sort(live.begin(), live.end());
    live.erase(std::unique(live.begin(), live.end()), live.end());
    for (std::size_t i = 0; i < live.size(); ++i) {
      for (std::size_t j = i + 1; j < live.size(); ++j) {
        if (!adjacent(live[i], live[j])) return true;
      }
    }
    return false;
  };

  for (;;) {
    for (auto& list : adj) list.clear();
    unpaired.resize(owner.size());
    for (std::size_t i = 0; i < unpaired.size(); ++i) unpaired[i] = static_cast<Vertex>(i);
    std::size_t rejections = 0;
    bool stuck = false;
    while (!unpaired.empty()) {
      const std::size_t i = rng.below(unpaired.size());
      std::size_t j = rng.below(unpaired.size() - 1);
      if (j >= i) ++j;
      const Vertex u = owner[unpaired[i]];
      const Vertex v = owner[unpaired[j]];
      if (u != v && !adjacent(u, v)) {
        adj[u].push_back(v);
        adj[v].push_back(u);
        // Remove the larger index first so the smaller stays valid.
        for (std::size_t idx : {std::max(i, j), std::min(i, j)}) {
          unpaired[idx] = unpaired.back();
          unpaired.pop_back();
        }
        rejections = 0;
        continue;
      }
      if (++rejections >= 64) {
        if (!suitable_pair_exists()) {
          stuck = true;
          break;
        }
        rejections = 0;
      }
    }
    if (stuck) continue;
    std::vector<Edge> edges;
    edges.reserve(n * d / 2);
    for (Vertex u = 0; u < n; ++u) {
      for (Vertex v : adj[u]) {
        if (u < v) edges.emplace_back(u, v);
      }
    }
    return Graph::build(n, edges, GraphMode::simple);
  }
}

Graph gnp(std::size_t n, double p, Rng& rng) {
  if (!(p >= 0.0 && p <= 1.0)) throw GraphError("gnp: p must lie in [0, 1]");
  if (p == 0.0 || n < 2) return empty_graph(n);
  if (p == 1.0) return complete_graph(n);
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(p * static_cast<double>(n) * static_cast<double>(n - 1) / 2.0 * 1.1) + 16);
  const double log_q = std::log1p(-p);
  // Pairs (w, v) with w < v, visited v-major; each gap is geometric.
  long long v = 1;
  long long w = -1;
  const auto nn = static_cast<long long>(n);
  while (v < nn) {
    const double r = rng.uniform();
    w += 1 + static_cast<long long>(std::floor(std::log1p(-r) / log_q));
    while (w >= v && v < nn) {
      w -= v;
      ++v;
    }
    if (v < nn) edges.emplace_back(static_cast<Vertex>(w), static_cast<Vertex>(v));
  }
  return Graph::build(n, edges, GraphMode::simple);
}

Graph pref_attach(std::size_t n, std::size_t d, Rng& rng, AttachRule rule) {
  if (d < 2) throw GraphError("pref_attach: d must be at least 2");
  if (n < d) throw GraphError("pref_attach: need n >= d");
  std::vector<Edge> edges;
  add_clique(edges, 0, d);
  // Every edge endpoint once; a uniform draw from here is degree-proportional.
  std::vector<Vertex> endpoints;
  for (const auto& [u, v] : edges) {
    endpoints.push_back(u);
    endpoints.push_back(v);
  }
  std::vector<Vertex> chosen;
  for (std::size_t t = d; t < n; ++t) {
    chosen.clear();
    const std::size_t pool = endpoints.size();
    while (chosen.size() < d) {
      const Vertex target = rule == AttachRule::uniform ? static_cast<Vertex>(rng.below(t)) : endpoints[rng.below(pool)];
      if (std::find(chosen.begin(), chosen.end(), target) == chosen.end()) chosen.push_back(target);
    }
    for (Vertex target : chosen) {
      edges.emplace_back(target, static_cast<Vertex>(t));
      endpoints.push_back(target);
      endpoints.push_back(static_cast<Vertex>(t));
    }
  }
  return Graph::build(n, edges, GraphMode::simple);
}

Graph empty_graph(std::size_t n) { return Graph::build(n, {}, GraphMode::simple); }

Graph complete_graph(std::size_t n) {
  std::vector<Edge> edges;
  add_clique(edges, 0, n);
  return Graph::build(n, edges);
}

Graph cycle_graph(std::size_t n) {
  if (n < 3) throw GraphError("cycle_graph: need at least 3 vertices");
  std::vector<Edge> edges;
  for (std::size_t i = 0; i + 1 < n; ++i) edges.emplace_back(static_cast<Vertex>(i), static_cast<Vertex>(i + 1));
  edges.emplace_back(0, static_cast<Vertex>(n - 1));
  return Graph::build(n, edges);
}

Graph path_graph(std::size_t n) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i + 1 < n; ++i) edges.emplace_back(static_cast<Vertex>(i), static_cast<Vertex>(i + 1));
  return Graph::build(n, edges);
}

Graph star_graph(std::size_t leaves) {
  std::vector<Edge> edges;
  for (std::size_t i = 1; i <= leaves; ++i) edges.emplace_back(0, static_cast<Vertex>(i));
  return Graph::build(leaves + 1, edges);
}

std::size_t complete_tree_order(std::size_t d, std::size_t k) {
  std::size_t total = 0;
  std::size_t level = 1;
  for (std::size_t depth = 0; depth <= k; ++depth) {
    total += level;
    level *= d;
  }
  return total;
}

Graph complete_tree(std::size_t d, std::size_t k) {
  if (d < 1) throw GraphError("complete_tree: branching must be at least 1");
  const std::size_t order = complete_tree_order(d, k);
  const std::size_t internal = order - ipow(d, k);
  std::vector<Edge> edges;
  edges.reserve(order - 1);
  // Level-order numbering: children of v are d*v + 1 .. d*v + d.
  for (std::size_t v = 0; v < internal; ++v) {
    for (std::size_t j = 1; j <= d; ++j) edges.emplace_back(static_cast<Vertex>(v), static_cast<Vertex>(d * v + j));
  }
  return Graph::build(order, edges);
}

Graph disjoint_cliques(std::size_t copies, std::size_t d) {
  std::vector<Edge> edges;
  for (std::size_t c = 0; c < copies; ++c) add_clique(edges, static_cast<Vertex>(c * (d + 1)), d + 1);
  return Graph::build(copies * (d + 1), edges);
}

Graph disjoint_bipartite(std::size_t copies, std::size_t d) {
  std::vector<Edge> edges;
  for (std::size_t c = 0; c < copies; ++c) {
    const std::size_t base = c * 2 * d;
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) {
        edges.emplace_back(static_cast<Vertex>(base + i), static_cast<Vertex>(base + d + j));
      }
    }
  }
  return Graph::build(copies * 2 * d, edges);
}

Graph hypercube(std::size_t dimension) {
  if (dimension < 1 || dimension > 24) throw GraphError("hypercube: dimension must be in [1, 24]");
  const std::size_t n = std::size_t{1} << dimension;
  std::vector<Edge> edges;
  for (std::size_t v = 0; v < n; ++v) {
    for (std::size_t bit = 0; bit < dimension; ++bit) {
      const std::size_t u = v ^ (std::size_t{1} << bit);
      if (v < u) edges.emplace_back(static_cast<Vertex>(v), static_cast<Vertex>(u));
    }
  }
  return Graph::build(n, edges);
}

namespace {

struct FixtureData {
  std::size_t order;
  std::size_t expected_girth;
  std::vector<Edge> edges;
};

const std::map<std::string, FixtureData, std::less<>>& fixtures() {
  static const std::map<std::string, FixtureData, std::less<>> table{
      {"petersen",
       {10, 5, {{0, 1}, {0, 4}, {0, 5}, {1, 2}, {1, 6}, {2, 3}, {2, 7}, {3, 4},
                {3, 8}, {4, 9}, {5, 7}, {5, 8}, {6, 8}, {6, 9}, {7, 9}}}},
      {"heawood",
       {14, 6, {{0, 1}, {0, 5}, {0, 13}, {1, 2}, {1, 10}, {2, 3}, {2, 7}, {3, 4}, {3, 12}, {4, 5}, {4, 9},
                {5, 6}, {6, 7}, {6, 11}, {7, 8}, {8, 9}, {8, 13}, {9, 10}, {10, 11}, {11, 12}, {12, 13}}}},
      {"mcgee",
       {24, 7, {{0, 1},   {0, 12},  {0, 23},  {1, 2},   {1, 8},   {2, 3},   {2, 19},  {3, 4},   {3, 15},
                {4, 5},   {4, 11},  {5, 6},   {5, 22},  {6, 7},   {6, 18},  {7, 8},   {7, 14},  {8, 9},
                {9, 10},  {9, 21},  {10, 11}, {10, 17}, {11, 12}, {12, 13}, {13, 14}, {13, 20}, {14, 15},
                {15, 16}, {16, 17}, {16, 23}, {17, 18}, {18, 19}, {19, 20}, {20, 21}, {21, 22}, {22, 23}}}},
  };
  return table;
}

}  // namespace

Graph fixture(std::string_view name) {
  auto it = fixtures().find(name);
  if (it == fixtures().end()) throw GraphError("unknown fixture '" + std::string(name) + "'");
  const auto& data = it->second;
  Graph g = Graph::build(data.order, data.edges);
  auto measured = girth(g);
  if (!measured || *measured != data.expected_girth) {
    throw GraphError("fixture '" + std::string(name) + "' failed its girth check");
  }
  return g;
}

std::vector<std::string> fixture_names() {
  std::vector<std::string> names;
  for (const auto& [name, data] : fixtures()) names.push_back(name);
  return names;
}

Regularized regularize(const Graph& g, std::size_t delta) {
  g.require_simple("regularize");
  const std::size_t n = g.num_vertices();
  if (delta < 2) throw GraphError("regularize: delta must be at least 2");
  const auto stats = degree_stats(g);
  if (n > 0 && stats.max_degree > delta) {
    throw GraphError("regularize: maximum degree " + std::to_string(stats.max_degree) + " exceeds delta " +
                     std::to_string(delta));
  }

  Regularized out;
  out.source_order = n;
  std::vector<Edge> edges;
  for (unsigned copy = 1; copy <= 6; ++copy) {
    for (const auto& [u, v] : g.edges()) edges.emplace_back(out.copy_of(u, copy), out.copy_of(v, copy));
    for (Vertex v = 0; v < n; ++v) out.origin.push_back({v, static_cast<std::uint8_t>(copy), HostOrigin::kNoGadget, false});
  }

  Vertex next = static_cast<Vertex>(6 * n);
  for (Vertex v = 0; v < n; ++v) {
    for (std::size_t extra = g.degree(v); extra < delta; ++extra) {
      const auto gadget = static_cast<std::uint32_t>(out.gadget_count++);
      const Vertex base = next;
      next += static_cast<Vertex>(delta + 1);
      // Vertices base..base+2 are the connectors; the triangle among them is
      // the one removed from K_{Δ+1}.
      for (std::size_t i = 0; i <= delta; ++i) {
        for (std::size_t j = i + 1; j <= delta; ++j) {
          if (j < 3) continue;
          edges.emplace_back(static_cast<Vertex>(base + i), static_cast<Vertex>(base + j));
        }
        out.origin.push_back({v, 0, gadget, i < 3});
      }
      for (unsigned copy = 1; copy <= 6; ++copy) {
        const Vertex connector = base + (copy - 1) / 2;
        edges.emplace_back(out.copy_of(v, copy), connector);
      }
    }
  }
  out.host = Graph::build(next, edges);
  return out;
}

VertexSet lift_to_host(const Regularized& r, const VertexSet& in_source) {
  VertexSet out(r.host.num_vertices());
  for (Vertex v : in_source.members()) {
    for (unsigned copy = 1; copy <= 6; ++copy) out.insert(r.copy_of(v, copy));
  }
  return out;
}

VertexSet project_to_source(const Regularized& r, const VertexSet& in_host) {
  VertexSet out(r.source_order);
  for (Vertex h : in_host.members()) out.insert(r.origin.at(h).source);
  return out;
}

Graph generate(const GenSpec& spec, std::uint64_t seed) {
  Rng rng(seed);
  const auto& f = spec.family;
  if (f == "config-regular") {
    if (spec.variant.empty() || spec.variant == "retry") return config_model_retry(spec.n, spec.d, rng).graph;
    if (spec.variant == "raw") return config_model(spec.n, spec.d, rng);
    if (spec.variant == "simplify") return simplify(config_model(spec.n, spec.d, rng)).graph;
    throw GraphError("config-regular: unknown variant '" + spec.variant + "'");
  }
  if (f == "random-regular") return random_regular(spec.n, spec.d, rng);
  if (f == "gnp") return gnp(spec.n, spec.p, rng);
  if (f == "tree") return complete_tree(spec.d, spec.k);
  if (f == "cliques") return disjoint_cliques(spec.c, spec.d);
  if (f == "bipartite") return disjoint_bipartite(spec.c, spec.d);
  if (f == "hypercube") return hypercube(spec.k);
  if (f == "fixture") return fixture(spec.name);
  if (f == "prefattach") {
    if (spec.variant.empty() || spec.variant == "degree") return pref_attach(spec.n, spec.d, rng);
    if (spec.variant == "uniform") return pref_attach(spec.n, spec.d, rng, AttachRule::uniform);
    throw GraphError("prefattach: unknown variant '" + spec.variant + "'");
  }
  if (f == "regularized") return regularize(load_graph(spec.name), spec.delta).host;
  if (f == "complete") return complete_graph(spec.n);
  if (f == "cycle") return cycle_graph(spec.n);
  if (f == "path") return path_graph(spec.n);
  if (f == "star") return star_graph(spec.n);
  if (f == "empty") return empty_graph(spec.n);
  throw GraphError("unknown generator family '" + f + "'");
}

}  // namespace bootlab
