#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "bootlab/graph.hpp"
#include "bootlab/rng.hpp"

namespace bootlab {

class AnalyticsError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Pr(Bin(n, p) >= r), summing whichever tail is shorter with log-space
/// binomial terms.
double binom_tail(std::size_t n, double p, std::size_t r);

enum class Regime {
  /// g_j = p_j d^2 < 10: the quadratic amplification bound does not apply.
  below_amplification,
  /// g_j >= 10: g_{j+1} >= g_j^2 / 10 is expected to hold.
  amplifying,
  /// p_j d >= 1: a typical vertex already has an active child.
  saturated,
};

struct RecursionTrace {
  std::size_t d = 0;
  std::size_t r = 0;
  std::size_t k = 0;
  double p0 = 0.0;
  bool infinite = false;
  std::vector<double> p;
  std::vector<double> q;
  /// regime[j] classifies the step from p_j to p_{j+1}.
  std::vector<Regime> regime;
};

const char* regime_name(Regime regime);

/// p_{j+1} = binom_tail(d, p_j, r) for j < k: the exact root probability of
/// T_{d,k} when only leaves are seeded, each with probability p0.
RecursionTrace tree_recursion_finite(std::size_t d, std::size_t k, double p0, std::size_t r = 2);

/// Infinite d-ary tree, every vertex a seed with probability p:
/// q_0 = 1 - p, q_i = q_0 Pr(Bin(d, p_{i-1}) < r).
RecursionTrace tree_recursion_infinite(std::size_t d, double p, std::size_t i_max, std::size_t r = 2);

/// 10 d^(1 / 2^(k-1)).
double g_threshold(double d, std::size_t k);
/// (2e r!)^(2/r) d^(1 / r^(k-1)).
double h_threshold(double d, std::size_t k, std::size_t r);
/// ceil(log2 log2 d) + 1.
std::size_t amplification_depth(double d);

struct BoundsReport {
  double n = 0;
  double d = 0;
  std::size_t r = 0;
  std::optional<double> delta;
  /// r n / (d + 1)
  double clique_cover = 0;
  /// n / ((1 - delta) d)
  std::optional<double> spectral_threshold;
  /// (r - 1) n / ((1 - delta) d)
  std::optional<double> spectral_threshold_r;
  /// n d^(-r / (r - 1)); absent for r = 1.
  std::optional<double> general_r_order;
  /// n log log d / (d^2 log d), base 2; absent for d <= 2.
  std::optional<double> gnp_order;
};

/// Throws AnalyticsError for d < 1, r < 1 or delta outside [0, 1).
BoundsReport closed_form_bounds(double n, double d, std::size_t r, std::optional<double> delta = std::nullopt);

/// C(d, 2)^(2^k - 1).
boost::multiprecision::cpp_int count_2k_trees(std::size_t d, std::size_t k);

struct PcEstimate {
  double lower = 0.0;
  double upper = 1.0;
  double freq_lower = 0.0;
  double freq_upper = 1.0;
  std::size_t trials = 0;
  std::size_t bisection_steps = 0;

  double midpoint() const noexcept { return 0.5 * (lower + upper); }
};

/// Bisection on p for the point where the fraction of fully activating trials
/// crosses 1/2. Trial t draws one uniform per vertex from
/// derive_stream(seed, t) and seeds v iff U_v < p, so every probed p uses the
/// same draws. Stops once upper - lower <= tol.
PcEstimate estimate_pc(const Graph& g, std::size_t r, std::size_t trials, double tol, std::uint64_t seed);

/// Fraction of coupled trials that fully activate at probability p.
double activation_frequency(const Graph& g, std::size_t r, std::size_t trials, double p, std::uint64_t seed);

}  // namespace bootlab
