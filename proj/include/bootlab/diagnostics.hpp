#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bootlab/graph.hpp"

namespace bootlab {

/// Shortest cycle length; std::nullopt stands for an acyclic graph (infinite
/// girth). Exact, by a BFS from every vertex.
std::optional<std::size_t> girth(const Graph& g);

/// "inf" for acyclic graphs.
std::string girth_to_string(const std::optional<std::size_t>& girth);

/// A 4-cycle a-b-c-d-a, or nullopt when the graph has none.
std::optional<std::array<Vertex, 4>> find_4cycle(const Graph& g);
inline bool has_4cycle(const Graph& g) { return find_4cycle(g).has_value(); }

class SpectrumError : public std::runtime_error {
 public:
  SpectrumError(const std::string& what, double residual, std::size_t iterations)
      : std::runtime_error(what), residual_(residual), iterations_(iterations) {}

  double residual() const noexcept { return residual_; }
  std::size_t iterations() const noexcept { return iterations_; }

 private:
  double residual_;
  std::size_t iterations_;
};

struct SpectrumOptions {
  double tolerance = 1e-8;
  std::size_t max_iterations = 100'000;
  std::uint64_t seed = 0x5eed;
};

struct SpectrumReport {
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  double lambda_min = 0.0;
  /// max(|lambda2|, |lambda_min|)
  double lambda = 0.0;
  /// lambda / d for regular graphs.
  std::optional<double> delta;
  /// Largest relative change of the Rayleigh quotient over the final step.
  double tolerance_achieved = 0.0;
  /// Matrix-vector products used in total.
  std::size_t iterations = 0;
  bool regular = false;
  bool connected = true;
};

/// Second-largest and smallest adjacency eigenvalues by shifted power
/// iteration. On regular graphs the all-ones eigenvector is projected out a
/// priori; otherwise the top pair is found first and deflated. Disconnected
/// regular graphs get lambda2 = d exactly.
///
/// Throws SpectrumError when an iteration does not settle within the cap.
SpectrumReport spectrum(const Graph& g, const SpectrumOptions& options = {});

/// e(B, V \ B) >= (d - lambda2) |B| |V \ B| / n, with `slack` subtracted
/// from (d - lambda2) to absorb eigenvalue error. Requires a regular graph.
bool expansion_check(const Graph& g, const VertexSet& b, double lambda2, double slack = 1e-6);

struct DensityWitness {
  std::size_t threshold = 0;
  /// Seeds first (ascending), then the remaining vertices in activation
  /// order (generation, then id).
  std::vector<Vertex> order;
  std::size_t seed_count = 0;
  /// induced_edges[i] = edges spanned by the first seed_count + i vertices,
  /// i.e. by B_t for t = seed_count + i.
  std::vector<std::size_t> induced_edges;

  /// True iff every recorded prefix spans at least r (t - t0) edges.
  bool satisfied() const;
};

/// Throws GraphError when `seeds` is not contagious for threshold r.
DensityWitness density_witness(const Graph& g, const VertexSet& seeds, std::size_t r);

}  // namespace bootlab
