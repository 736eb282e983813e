#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "bootlab/graph.hpp"
#include "bootlab/rng.hpp"

namespace bootlab {

// --- Configuration model -----------------------------------------------------

/// G*(n, d): shuffle the n*d cells (cell i belongs to vertex i / d) with
/// Fisher-Yates and pair cells 2j, 2j+1. The result is a multigraph in which
/// every vertex has degree exactly d (a loop counts twice).
Graph config_model(std::size_t n, std::size_t d, Rng& rng);

struct SimplifyReport {
  Graph graph;
  std::size_t self_loops_removed = 0;
  /// Surplus copies dropped when collapsing parallel edges.
  std::size_t parallel_collapsed = 0;

  bool was_simple() const noexcept { return self_loops_removed == 0 && parallel_collapsed == 0; }
};

SimplifyReport simplify(const Graph& g);

struct RetryResult {
  Graph graph;
  std::size_t attempts = 0;
};

/// Resamples G*(n, d) until the multigraph is simple; conditioned on that,
/// the output is uniform over simple d-regular graphs. Only practical for
/// small d since the acceptance rate is about exp(-(d*d - 1) / 4).
RetryResult config_model_retry(std::size_t n, std::size_t d, Rng& rng, std::size_t max_attempts = 1'000'000);

/// Simple d-regular graph by the Steger-Wormald pairing process: pick two
/// unpaired cells uniformly, pair them if they join distinct non-adjacent
/// vertices, restart when no suitable pair remains. Asymptotically uniform
/// for moderate d; used where retry-until-simple is hopeless.
Graph random_regular(std::size_t n, std::size_t d, Rng& rng);

// --- Other random models -----------------------------------------------------

/// G(n, p) by geometric skipping over the pairs in colex order.
Graph gnp(std::size_t n, double p, Rng& rng);

enum class AttachRule { degree_proportional, uniform };

/// Starts from K_d on 0..d-1; vertex t >= d then links to d distinct earlier
/// vertices drawn with probability proportional to current degree (or
/// uniformly), redrawing duplicates.
Graph pref_attach(std::size_t n, std::size_t d, Rng& rng, AttachRule rule = AttachRule::degree_proportional);

// --- Deterministic families --------------------------------------------------

Graph empty_graph(std::size_t n);
Graph complete_graph(std::size_t n);
Graph cycle_graph(std::size_t n);
Graph path_graph(std::size_t n);
/// K_{1,leaves} with the center at vertex 0.
Graph star_graph(std::size_t leaves);

/// T_{d,k}: root 0 with d children, every internal vertex has d children,
/// leaves at depth k. Numbered level by level, so the leaves are the last
/// d^k ids.
Graph complete_tree(std::size_t d, std::size_t k);
std::size_t complete_tree_order(std::size_t d, std::size_t k);

/// c disjoint copies of K_{d+1}.
Graph disjoint_cliques(std::size_t copies, std::size_t d);
/// c disjoint copies of K_{d,d}.
Graph disjoint_bipartite(std::size_t copies, std::size_t d);
/// Q_q on 2^q vertices; u ~ v iff they differ in exactly one bit.
Graph hypercube(std::size_t dimension);

/// "petersen" (girth 5), "heawood" (girth 6) or "mcgee" (girth 7). The
/// embedded edge list is checked against its girth on every load.
Graph fixture(std::string_view name);
std::vector<std::string> fixture_names();

// --- Regularization gadget reduction -----------------------------------------

struct HostOrigin {
  static constexpr std::uint32_t kNoGadget = std::numeric_limits<std::uint32_t>::max();

  /// Vertex of G this host vertex belongs to (its copy or its gadget owner).
  Vertex source = 0;
  /// 1..6 for a copy of `source`, 0 for a gadget vertex.
  std::uint8_t copy = 0;
  std::uint32_t gadget = kNoGadget;
  bool connector = false;
};

struct Regularized {
  Graph host;
  std::vector<HostOrigin> origin;
  std::size_t source_order = 0;
  std::size_t gadget_count = 0;

  /// Host id of copy `copy` (1..6) of source vertex v.
  Vertex copy_of(Vertex v, unsigned copy) const noexcept {
    return static_cast<Vertex>((copy - 1) * source_order + v);
  }
};

/// Builds a Δ-regular host from six disjoint copies of g. For each vertex v
/// with degree below Δ, Δ - deg(v) fresh gadgets (K_{Δ+1} minus a triangle on
/// its three connectors) are attached: connector c (1..3) is joined to copies
/// 2c-1 and 2c of v.
Regularized regularize(const Graph& g, std::size_t delta);

/// Six copies of a vertex set of g, one in each copy of g inside the host.
VertexSet lift_to_host(const Regularized& r, const VertexSet& in_source);

/// v belongs to the projection iff some copy of v or some vertex of one of
/// v's gadgets is in `in_host`.
VertexSet project_to_source(const Regularized& r, const VertexSet& in_host);

// --- Declarative generation --------------------------------------------------

/// Family tags: config-regular, random-regular, gnp, tree, cliques,
/// bipartite, hypercube, fixture, prefattach, regularized, complete, cycle,
/// path, star, empty.
struct GenSpec {
  std::string family;
  std::size_t n = 0;
  std::size_t d = 0;
  double p = 0.0;
  std::size_t k = 0;
  std::size_t c = 0;
  std::size_t delta = 0;
  /// Fixture name, or the source graph path for "regularized".
  std::string name;
  /// config-regular: "retry" (default), "raw" or "simplify".
  /// prefattach: "degree" (default) or "uniform".
  std::string variant;
};

Graph generate(const GenSpec& spec, std::uint64_t seed);

}  // namespace bootlab
