#include "bootlab/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "bootlab/percolation.hpp"

namespace bootlab {
namespace {

double log_binom_term(std::size_t n, std::size_t j, double log_p, double log_q) {
  const auto nn = static_cast<double>(n);
  const auto jj = static_cast<double>(j);
  return std::lgamma(nn + 1) - std::lgamma(jj + 1) - std::lgamma(nn - jj + 1) + jj * log_p + (nn - jj) * log_q;
}

void check_probability(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) throw AnalyticsError(std::string(what) + ": probability outside [0, 1]");
}

Regime classify(double p, std::size_t d) {
  const auto fd = static_cast<double>(d);
  if (p * fd >= 1.0) return Regime::saturated;
  if (p * fd * fd >= 10.0) return Regime::amplifying;
  return Regime::below_amplification;
}

}  // namespace

double binom_tail(std::size_t n, double p, std::size_t r) {
  check_probability(p, "binom_tail");
  if (r == 0) return 1.0;
  if (r > n) return 0.0;
  if (p == 0.0) return 0.0;
  if (p == 1.0) return 1.0;
  const double log_p = std::log(p);
  const double log_q = std::log1p(-p);
  const auto mode = static_cast<std::size_t>(std::floor((static_cast<double>(n) + 1.0) * p));

  // Terms fall off monotonically away from the mode, so sum outward and stop
  // once they no longer register.
  double sum = 0.0;
  if (r > mode) {
    for (std::size_t j = r; j <= n; ++j) {
      const double term = std::exp(log_binom_term(n, j, log_p, log_q));
      sum += term;
      if (term <= sum * 1e-18) break;
    }
    return std::min(1.0, sum);
  }
  for (std::size_t j = r; j-- > 0;) {
    const double term = std::exp(log_binom_term(n, j, log_p, log_q));
    sum += term;
    if (term <= sum * 1e-18) break;
  }
  return std::clamp(1.0 - sum, 0.0, 1.0);
}

const char* regime_name(Regime regime) {
  switch (regime) {
    case Regime::below_amplification:
      return "below_amplification";
    case Regime::amplifying:
      return "amplifying";
    case Regime::saturated:
      return "saturated";
  }
  return "unknown";
}

RecursionTrace tree_recursion_finite(std::size_t d, std::size_t k, double p0, std::size_t r) {
  if (d < 1) throw AnalyticsError("tree_recursion_finite: d must be at least 1");
  if (r < 1) throw AnalyticsError("tree_recursion_finite: r must be at least 1");
  check_probability(p0, "tree_recursion_finite");
  RecursionTrace t;
  t.d = d;
  t.r = r;
  t.k = k;
  t.p0 = p0;
  t.p.push_back(p0);
  for (std::size_t j = 0; j < k; ++j) {
    t.regime.push_back(classify(t.p.back(), d));
    t.p.push_back(binom_tail(d, t.p.back(), r));
  }
  for (double x : t.p) t.q.push_back(1.0 - x);
  return t;
}

RecursionTrace tree_recursion_infinite(std::size_t d, double p, std::size_t i_max, std::size_t r) {
  if (d < 1) throw AnalyticsError("tree_recursion_infinite: d must be at least 1");
  if (r < 1) throw AnalyticsError("tree_recursion_infinite: r must be at least 1");
  check_probability(p, "tree_recursion_infinite");
  RecursionTrace t;
  t.d = d;
  t.r = r;
  t.k = i_max;
  t.p0 = p;
  t.infinite = true;
  const double q0 = 1.0 - p;
  t.q.push_back(q0);
  t.p.push_back(p);
  for (std::size_t i = 1; i <= i_max; ++i) {
    const double prev = t.p.back();
    t.regime.push_back(classify(prev, d));
    const double q = q0 * (1.0 - binom_tail(d, prev, r));
    t.q.push_back(q);
    t.p.push_back(1.0 - q);
  }
  return t;
}

double g_threshold(double d, std::size_t k) {
  if (k < 1) throw AnalyticsError("g_threshold: k must be at least 1");
  return 10.0 * std::pow(d, std::ldexp(1.0, -static_cast<int>(k - 1)));
}

double h_threshold(double d, std::size_t k, std::size_t r) {
  if (k < 1 || r < 1) throw AnalyticsError("h_threshold: k and r must be at least 1");
  const double r_factorial = std::tgamma(static_cast<double>(r) + 1.0);
  const double fr = static_cast<double>(r);
  return std::pow(2.0 * std::numbers::e * r_factorial, 2.0 / fr) *
         std::pow(d, 1.0 / std::pow(fr, static_cast<double>(k - 1)));
}

std::size_t amplification_depth(double d) {
  if (!(d > 2.0)) throw AnalyticsError("amplification_depth: d must exceed 2");
  return static_cast<std::size_t>(std::ceil(std::log2(std::log2(d)))) + 1;
}

BoundsReport closed_form_bounds(double n, double d, std::size_t r, std::optional<double> delta) {
  if (!(d >= 1.0)) throw AnalyticsError("closed_form_bounds: d must be at least 1");
  if (r < 1) throw AnalyticsError("closed_form_bounds: r must be at least 1");
  if (delta && !(*delta >= 0.0 && *delta < 1.0)) throw AnalyticsError("closed_form_bounds: delta must lie in [0, 1)");
  BoundsReport b;
  b.n = n;
  b.d = d;
  b.r = r;
  b.delta = delta;
  const auto fr = static_cast<double>(r);
  b.clique_cover = fr * n / (d + 1.0);
  if (delta) {
    b.spectral_threshold = n / ((1.0 - *delta) * d);
    b.spectral_threshold_r = (fr - 1.0) * n / ((1.0 - *delta) * d);
  }
  if (r >= 2) b.general_r_order = n * std::pow(d, -fr / (fr - 1.0));
  if (d > 2.0) {
    const double log_d = std::log2(d);
    b.gnp_order = n * std::log2(log_d) / (d * d * log_d);
  }
  return b;
}

boost::multiprecision::cpp_int count_2k_trees(std::size_t d, std::size_t k) {
  if (d < 2) throw AnalyticsError("count_2k_trees: d must be at least 2");
  if (k >= 32) throw AnalyticsError("count_2k_trees: k too large");
  const boost::multiprecision::cpp_int base = static_cast<std::uint64_t>(d) * (d - 1) / 2;
  const auto exponent = static_cast<unsigned>((std::uint64_t{1} << k) - 1);
  return boost::multiprecision::pow(base, exponent);
}

namespace {

bool trial_activates(const Graph& g, std::size_t r, double p, std::uint64_t stream) {
  Rng rng(stream);
  VertexSet seeds(g.num_vertices());
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    if (rng.uniform() < p) seeds.insert(v);
  }
  return percolate(g, seeds, r).complete();
}

}  // namespace

double activation_frequency(const Graph& g, std::size_t r, std::size_t trials, double p, std::uint64_t seed) {
  if (trials == 0) throw AnalyticsError("activation_frequency: trials must be positive");
  check_probability(p, "activation_frequency");
  std::size_t hits = 0;
  for (std::size_t t = 0; t < trials; ++t) hits += trial_activates(g, r, p, derive_stream(seed, t)) ? 1 : 0;
  return static_cast<double>(hits) / static_cast<double>(trials);
}

PcEstimate estimate_pc(const Graph& g, std::size_t r, std::size_t trials, double tol, std::uint64_t seed) {
  if (trials == 0) throw AnalyticsError("estimate_pc: trials must be positive");
  if (!(tol > 0.0)) throw AnalyticsError("estimate_pc: tol must be positive");
  PcEstimate est;
  est.trials = trials;
  est.freq_lower = activation_frequency(g, r, trials, 0.0, seed);
  est.freq_upper = activation_frequency(g, r, trials, 1.0, seed);
  while (est.upper - est.lower > tol) {
    const double mid = 0.5 * (est.lower + est.upper);
    const double f = activation_frequency(g, r, trials, mid, seed);
    ++est.bisection_steps;
    if (f >= 0.5) {
      est.upper = mid;
      est.freq_upper = f;
    } else {
      est.lower = mid;
      est.freq_lower = f;
    }
  }
  return est;
}

}  // namespace bootlab
