#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bootlab/diagnostics.hpp"
#include "bootlab/graph.hpp"
#include "bootlab/rng.hpp"

namespace bootlab {

class SelectionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SelectionRound {
  std::size_t index = 0;
  /// Seeds added this round, ascending.
  std::vector<Vertex> added;
  /// |A| after the round's cascade.
  std::size_t active_after = 0;
  /// |A ∪ ∂(A)| after the round's cascade.
  std::size_t reach_after = 0;
};

struct SeedSelection {
  std::string algorithm;
  std::size_t threshold = 0;
  std::uint64_t rng_seed = 0;
  VertexSet seeds;
  std::vector<SelectionRound> rounds;
  /// Parameters as the formulas give them, and as actually used.
  std::map<std::string, double> params_raw;
  std::map<std::string, double> params_used;
  /// Re-checked with percolate before returning.
  bool contagious = false;
  /// greedy_two_phase: first round scored by |A_t|.
  std::optional<std::size_t> phase_switch_round;
  /// gnp_two_stage: seeds of the two stages alone, whether they sufficed,
  /// and how many the sequential fallback added.
  std::optional<std::size_t> two_stage_seeds;
  std::optional<bool> two_stage_complete;
  std::optional<std::size_t> fallback_seeds;
  std::vector<std::string> warnings;
};

/// One uniform per vertex in ascending order; v is a seed iff U_v < p. Two
/// calls with the same stream and p' > p return nested sets.
VertexSet random_parallel(const Graph& g, double p, Rng& rng);

/// Seeds a uniformly random inactive vertex per round until everything is
/// active. The draw is below(#inactive) mapped to the k-th smallest inactive id.
SeedSelection random_sequential_basic(const Graph& g, std::size_t r, Rng& rng);

/// A randomized seed sampler. The returned list may contain active vertices
/// and duplicates; sequential_wrap filters them.
using Sampler = std::function<std::vector<Vertex>(Rng&)>;

inline constexpr std::size_t kDefaultRoundCap = 100'000;

/// Calls `inner` once per round with fresh draws from `rng`, adds the drawn
/// vertices that are still inactive, and stops once everything is active.
/// Throws SelectionError after `round_cap` rounds.
SeedSelection sequential_wrap(const Graph& g, std::size_t r, const Sampler& inner, Rng& rng,
                              std::size_t round_cap = kDefaultRoundCap);

struct GreedyOptions {
  /// Score only this many uniformly chosen inactive candidates per round.
  std::optional<std::size_t> sample_candidates;
};

/// r = 2. Each round picks the inactive vertex maximizing |A_t ∪ ∂(A_t)|
/// while that is below n/2 and |A_t| afterwards; ties go to the smallest id.
SeedSelection greedy_two_phase(const Graph& g, Rng& rng, const GreedyOptions& options = {});

/// One uniformly random member of every component of G[layer] with at least
/// `min_size` vertices; components in order of smallest member.
std::vector<Vertex> seed_large_components(const Graph& g, const VertexSet& layer, std::size_t min_size, Rng& rng);

/// 4 ln(d) / d^2.
double girth7_default_p(std::size_t d);

/// r = 2 on a d-regular graph. A round runs two independent experiments:
/// sample A with probability p, take the layer of non-seeds adjacent to A,
/// and add one random vertex from each component of the layer of size >= d.
/// Rounds are combined by sequential_wrap.
SeedSelection girth7_select(const Graph& g, Rng& rng, std::optional<double> p_override = std::nullopt,
                            std::size_t round_cap = kDefaultRoundCap);

struct TwoStageParams {
  double eps_raw = 0.0;
  double eps = 0.0;
  std::size_t first_stage = 0;
  double k_raw = 0.0;
  double k = 0.0;
};

/// eps = log log d / log d and k = log d / (6 log log d), base 2, with the
/// overrides applied and k clamped to at least 2, |A| = ceil(eps n / d^2)
/// clamped to [1, n].
TwoStageParams two_stage_params(std::size_t n, double d, std::optional<double> eps_override = std::nullopt,
                                std::optional<double> k_override = std::nullopt);

/// r = 2. Random A of the stage-one size, then one seed in every component of
/// G[∂(A)] of size >= k, then random_sequential_basic to finish if needed.
SeedSelection gnp_two_stage(const Graph& g, double d, Rng& rng, std::optional<double> eps_override = std::nullopt,
                            std::optional<double> k_override = std::nullopt);

enum class SpectralMode { standard, three_halves };

struct SpectralOptions {
  std::size_t r = 2;
  double c = 10.0;
  std::optional<double> p_override;
  SpectralMode mode = SpectralMode::standard;
  /// Measured spectrum; computed when absent.
  std::optional<SpectrumReport> spectrum;
  std::size_t round_cap = kDefaultRoundCap;
};

/// Standard mode: l = floor((d / lambda)^2) clamped to >= 2, p = min(1, c / l^2).
/// Three-halves mode: p = min(1, 4 sqrt(c') / d^1.5) with c' = 1 / (1 - delta) + 1.
/// Round 1 is a random_parallel(p) sample; further rounds (sequential_wrap
/// with the same sampler) only happen when it is not contagious.
/// Throws SelectionError when lambda >= d.
SeedSelection spectral_parallel_select(const Graph& g, Rng& rng, const SpectralOptions& options = {});

struct BruteForceResult {
  std::size_t m = 0;
  VertexSet witness;
  /// Seed sets tested.
  std::uint64_t evaluated = 0;
};

inline constexpr std::size_t kBruteForceCap = 25;

/// Exact m(G, r) by increasing subset size; vertices of degree < r are put
/// in every candidate. Returns the lexicographically first minimum set over
/// the free vertices. Throws SelectionError when n > n_cap (n_cap <= 64).
BruteForceResult brute_force_m(const Graph& g, std::size_t r, std::size_t n_cap = kBruteForceCap);

/// Algorithm tags: random_parallel, random_sequential_basic, sequential_wrap,
/// greedy_two_phase, girth7, gnp_two_stage, spectral_parallel,
/// spectral_parallel_32.
struct SelectorSpec {
  std::string algorithm;
  std::size_t r = 2;
  std::optional<double> p;
  std::optional<double> c;
  std::optional<double> k;
  std::optional<double> eps;
  /// Average degree for gnp_two_stage; 2m/n when absent.
  std::optional<double> d;
  std::size_t round_cap = kDefaultRoundCap;
  std::optional<std::size_t> sample_candidates;
};

std::vector<std::string> selector_names();

/// Runs the named selector with Rng(seed).
SeedSelection run_selector(const Graph& g, const SelectorSpec& spec, std::uint64_t seed);

}  // namespace bootlab
