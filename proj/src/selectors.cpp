#include "bootlab/selectors.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

#include "bootlab/percolation.hpp"

namespace bootlab {
namespace {

void record_round(SeedSelection& out, const Cascade& cascade, std::vector<Vertex> added) {
  std::sort(added.begin(), added.end());
  for (Vertex v : added) out.seeds.insert(v);
  SelectionRound round;
  round.index = out.rounds.size() + 1;
  round.added = std::move(added);
  round.active_after = cascade.active_count();
  round.reach_after = cascade.reach_count();
  out.rounds.push_back(std::move(round));
}

SeedSelection start(const Graph& g, const char* algorithm, std::size_t r) {
  g.require_simple(algorithm);
  if (r < 1) throw SelectionError(std::string(algorithm) + ": threshold r must be at least 1");
  SeedSelection out;
  out.algorithm = algorithm;
  out.threshold = r;
  out.seeds = VertexSet(g.num_vertices());
  return out;
}

void finish(const Graph& g, SeedSelection& out) { out.contagious = is_contagious(g, out.seeds, out.threshold); }

void require_probability(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) throw SelectionError(std::string(what) + ": p must lie in [0, 1]");
}

// Runs the wrapper loop on an existing cascade, appending to `out`.
void wrap_rounds(SeedSelection& out, Cascade& cascade, const Sampler& inner, Rng& rng, std::size_t round_cap) {
  while (!cascade.complete()) {
    if (out.rounds.size() >= round_cap) {
      throw SelectionError("sequential_wrap: round cap of " + std::to_string(round_cap) + " exceeded");
    }
    std::vector<Vertex> drawn = inner(rng);
    std::sort(drawn.begin(), drawn.end());
    drawn.erase(std::unique(drawn.begin(), drawn.end()), drawn.end());
    std::vector<Vertex> added;
    for (Vertex v : drawn) {
      if (v >= cascade.graph().num_vertices()) throw SelectionError("sequential_wrap: sampler returned a bad vertex");
      if (!cascade.is_active(v)) added.push_back(v);
    }
    // S_j is fixed against the previous rounds' closure before any of it is activated.
    for (Vertex v : added) cascade.activate(v);
    record_round(out, cascade, std::move(added));
  }
}

void finish_sequentially(SeedSelection& out, Cascade& cascade, Rng& rng) {
  while (!cascade.complete()) {
    const Vertex v = cascade.kth_inactive(rng.below(cascade.inactive_count()));
    cascade.activate(v);
    record_round(out, cascade, {v});
  }
}

}  // namespace

VertexSet random_parallel(const Graph& g, double p, Rng& rng) {
  require_probability(p, "random_parallel");
  VertexSet out(g.num_vertices());
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    if (rng.uniform() < p) out.insert(v);
  }
  return out;
}

SeedSelection random_sequential_basic(const Graph& g, std::size_t r, Rng& rng) {
  SeedSelection out = start(g, "random_sequential_basic", r);
  Cascade cascade(g, r);
  finish_sequentially(out, cascade, rng);
  finish(g, out);
  return out;
}

SeedSelection sequential_wrap(const Graph& g, std::size_t r, const Sampler& inner, Rng& rng, std::size_t round_cap) {
  SeedSelection out = start(g, "sequential_wrap", r);
  Cascade cascade(g, r);
  wrap_rounds(out, cascade, inner, rng, round_cap);
  finish(g, out);
  return out;
}

SeedSelection greedy_two_phase(const Graph& g, Rng& rng, const GreedyOptions& options) {
  SeedSelection out = start(g, "greedy_two_phase", 2);
  const std::size_t n = g.num_vertices();
  Cascade cascade(g, 2);
  if (options.sample_candidates) {
    if (*options.sample_candidates == 0) throw SelectionError("greedy_two_phase: sample_candidates must be positive");
    out.params_used["sample_candidates"] = static_cast<double>(*options.sample_candidates);
  }

  bool phase_two = false;
  std::vector<Vertex> candidates;
  std::vector<std::size_t> ranks;
  while (!cascade.complete()) {
    if (!phase_two && 2 * cascade.reach_count() >= n) {
      phase_two = true;
      out.phase_switch_round = out.rounds.size() + 1;
    }
    const std::size_t inactive = cascade.inactive_count();
    candidates.clear();
    if (options.sample_candidates && *options.sample_candidates < inactive) {
      const std::size_t q = *options.sample_candidates;
      ranks.resize(inactive);
      std::iota(ranks.begin(), ranks.end(), std::size_t{0});
      for (std::size_t i = 0; i < q; ++i) std::swap(ranks[i], ranks[i + rng.below(inactive - i)]);
      for (std::size_t i = 0; i < q; ++i) candidates.push_back(cascade.kth_inactive(ranks[i]));
      std::sort(candidates.begin(), candidates.end());
    } else {
      for (Vertex v = 0; v < n; ++v) {
        if (!cascade.is_active(v)) candidates.push_back(v);
      }
    }

    Vertex best = candidates.front();
    std::size_t best_score = 0;
    bool have_best = false;
    for (Vertex v : candidates) {
      cascade.begin_trial();
      cascade.activate(v);
      const std::size_t score = phase_two ? cascade.active_count() : cascade.reach_count();
      cascade.rollback();
      if (!have_best || score > best_score) {
        best = v;
        best_score = score;
        have_best = true;
      }
    }
    cascade.activate(best);
    record_round(out, cascade, {best});
  }
  finish(g, out);
  return out;
}

std::vector<Vertex> seed_large_components(const Graph& g, const VertexSet& layer, std::size_t min_size, Rng& rng) {
  std::vector<Vertex> out;
  for (const auto& members : component_members(g, layer)) {
    if (members.size() >= min_size) out.push_back(members[rng.below(members.size())]);
  }
  return out;
}

double girth7_default_p(std::size_t d) {
  const auto x = static_cast<double>(d);
  return 4.0 * std::log(x) / (x * x);
}

SeedSelection girth7_select(const Graph& g, Rng& rng, std::optional<double> p_override, std::size_t round_cap) {
  SeedSelection out = start(g, "girth7", 2);
  const std::size_t d = require_regular(g, "girth7_select");
  if (d < 2) throw SelectionError("girth7_select: needs d >= 2");
  const double p_raw = girth7_default_p(d);
  const double p = p_override.value_or(p_raw);
  if (!(p > 0.0 && p <= 1.0)) throw SelectionError("girth7_select: p must lie in (0, 1]");
  out.params_raw["p"] = p_raw;
  out.params_used["p"] = p;
  out.params_used["d"] = static_cast<double>(d);
  const auto gir = girth(g);
  if (gir && *gir < 7) out.warnings.push_back("girth " + std::to_string(*gir) + " is below 7");

  const Sampler composite = [&g, p, d](Rng& draw) {
    std::vector<Vertex> sample;
    for (int experiment = 0; experiment < 2; ++experiment) {
      const VertexSet a = random_parallel(g, p, draw);
      const VertexSet layer = boundary(g, a);
      const auto members = a.members();
      sample.insert(sample.end(), members.begin(), members.end());
      const auto extra = seed_large_components(g, layer, d, draw);
      sample.insert(sample.end(), extra.begin(), extra.end());
    }
    return sample;
  };
  Cascade cascade(g, 2);
  wrap_rounds(out, cascade, composite, rng, round_cap);
  finish(g, out);
  return out;
}

TwoStageParams two_stage_params(std::size_t n, double d, std::optional<double> eps_override,
                                std::optional<double> k_override) {
  if (!(d > 4.0)) throw SelectionError("gnp_two_stage: needs average degree d > 4");
  TwoStageParams out;
  const double log_d = std::log2(d);
  const double loglog_d = std::log2(log_d);
  out.eps_raw = loglog_d / log_d;
  out.eps = eps_override.value_or(out.eps_raw);
  if (!(out.eps > 0.0)) throw SelectionError("gnp_two_stage: eps must be positive");
  const double size = std::ceil(out.eps * static_cast<double>(n) / (d * d));
  out.first_stage = static_cast<std::size_t>(std::clamp(size, 1.0, static_cast<double>(std::max<std::size_t>(n, 1))));
  out.k_raw = log_d / (6.0 * loglog_d);
  out.k = std::max(2.0, k_override.value_or(out.k_raw));
  return out;
}

SeedSelection gnp_two_stage(const Graph& g, double d, Rng& rng, std::optional<double> eps_override,
                            std::optional<double> k_override) {
  SeedSelection out = start(g, "gnp_two_stage", 2);
  const std::size_t n = g.num_vertices();
  const TwoStageParams params = two_stage_params(n, d, eps_override, k_override);
  out.params_raw["d"] = d;
  out.params_raw["eps"] = params.eps_raw;
  out.params_raw["k"] = params.k_raw;
  out.params_used["d"] = d;
  out.params_used["eps"] = params.eps;
  out.params_used["k"] = params.k;
  out.params_used["first_stage"] = static_cast<double>(params.first_stage);

  Cascade cascade(g, 2);
  if (n == 0) {
    out.two_stage_seeds = 0;
    out.two_stage_complete = true;
    out.fallback_seeds = 0;
    finish(g, out);
    return out;
  }

  // Stage 1: the first |A| entries of a partial Fisher-Yates over 0..n-1.
  std::vector<Vertex> order(n);
  std::iota(order.begin(), order.end(), Vertex{0});
  for (std::size_t i = 0; i < params.first_stage; ++i) std::swap(order[i], order[i + rng.below(n - i)]);
  std::vector<Vertex> first(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(params.first_stage));
  const VertexSet a(n, first);

  // Stage 2 looks at ∂(A) of the seed set itself, before any cascade.
  const auto min_size = static_cast<std::size_t>(std::ceil(params.k));
  std::vector<Vertex> second = seed_large_components(g, boundary(g, a), min_size, rng);

  for (Vertex v : first) cascade.activate(v);
  record_round(out, cascade, first);
  std::vector<Vertex> added;
  for (Vertex v : second) {
    if (!cascade.is_active(v)) added.push_back(v);
  }
  for (Vertex v : added) cascade.activate(v);
  record_round(out, cascade, std::move(added));

  out.two_stage_seeds = out.seeds.size();
  out.two_stage_complete = cascade.complete();
  finish_sequentially(out, cascade, rng);
  out.fallback_seeds = out.seeds.size() - *out.two_stage_seeds;
  finish(g, out);
  return out;
}

SeedSelection spectral_parallel_select(const Graph& g, Rng& rng, const SpectralOptions& options) {
  SeedSelection out = start(g, options.mode == SpectralMode::standard ? "spectral_parallel" : "spectral_parallel_32",
                            options.r);
  const std::size_t d = require_regular(g, "spectral_parallel_select");
  const auto fd = static_cast<double>(d);
  const SpectrumReport report = options.spectrum ? *options.spectrum : spectrum(g);
  const double lambda = report.lambda;
  out.params_used["lambda"] = lambda;
  out.params_used["d"] = fd;

  double p_raw = 1.0;
  if (options.mode == SpectralMode::standard) {
    if (lambda >= fd * (1.0 - 1e-6)) {
      if (!options.p_override) throw SelectionError("spectral_parallel_select: lambda >= d, no spectral gap");
      out.warnings.push_back("lambda >= d: l undefined");
    } else {
      const double ratio = fd / std::max(lambda, 1e-300);
      const double l_raw = std::floor(ratio * ratio);
      const double l = std::max(2.0, l_raw);
      out.params_raw["l"] = l_raw;
      out.params_used["l"] = l;
      p_raw = options.c / (l_raw * l_raw);
      out.params_raw["p"] = p_raw;
      out.params_used["c"] = options.c;
      out.params_used["p"] = std::min(1.0, options.c / (l * l));
      if (l_raw < 2.0) out.warnings.push_back("l clamped to 2: degenerate small-d regime");
    }
  } else {
    const double delta = lambda / fd;
    if (delta >= 1.0 - 1e-6) {
      if (!options.p_override) throw SelectionError("spectral_parallel_select: lambda >= d, no spectral gap");
      out.warnings.push_back("lambda >= d: c' undefined");
    } else {
      const double c_prime = 1.0 / (1.0 - delta) + 1.0;
      p_raw = 4.0 * std::sqrt(c_prime) / std::pow(fd, 1.5);
      out.params_raw["c_prime"] = c_prime;
      out.params_raw["p"] = p_raw;
      out.params_used["c_prime"] = c_prime;
      out.params_used["p"] = std::min(1.0, p_raw);
    }
  }
  if (options.p_override) {
    require_probability(*options.p_override, "spectral_parallel_select");
    out.params_used["p"] = *options.p_override;
  }
  if (out.params_used["p"] >= 1.0 && !options.p_override) out.warnings.push_back("p clamped to 1");
  const double p = out.params_used["p"];

  const Sampler inner = [&g, p](Rng& draw) { return random_parallel(g, p, draw).members(); };
  Cascade cascade(g, options.r);
  wrap_rounds(out, cascade, inner, rng, options.round_cap);
  finish(g, out);
  return out;
}

BruteForceResult brute_force_m(const Graph& g, std::size_t r, std::size_t n_cap) {
  g.require_simple("brute_force_m");
  if (r < 1) throw SelectionError("brute_force_m: threshold r must be at least 1");
  const std::size_t n = g.num_vertices();
  if (n > std::min<std::size_t>(n_cap, 64)) {
    throw SelectionError("brute_force_m: " + std::to_string(n) + " vertices exceed the cap of " +
                         std::to_string(std::min<std::size_t>(n_cap, 64)));
  }
  const std::uint64_t all = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  std::vector<std::uint64_t> adj(n, 0);
  std::uint64_t forced = 0;
  std::vector<Vertex> free;
  for (Vertex v = 0; v < n; ++v) {
    for (Vertex u : g.neighbors(v)) adj[v] |= std::uint64_t{1} << u;
    if (g.degree(v) < r) {
      forced |= std::uint64_t{1} << v;
    } else {
      free.push_back(v);
    }
  }
  const auto closes = [&](std::uint64_t active) {
    bool changed = true;
    while (changed && active != all) {
      changed = false;
      std::uint64_t next = active;
      for (std::size_t v = 0; v < n; ++v) {
        if ((active >> v) & 1) continue;
        if (static_cast<std::size_t>(std::popcount(adj[v] & active)) >= r) next |= std::uint64_t{1} << v;
      }
      changed = next != active;
      active = next;
    }
    return active == all;
  };

  BruteForceResult out;
  const std::size_t f = free.size();
  std::vector<std::size_t> idx;
  for (std::size_t s = 0; s <= f; ++s) {
    idx.resize(s);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    while (true) {
      std::uint64_t seeds = forced;
      for (std::size_t i : idx) seeds |= std::uint64_t{1} << free[i];
      ++out.evaluated;
      if (closes(seeds)) {
        out.m = static_cast<std::size_t>(std::popcount(seeds));
        out.witness = VertexSet(n);
        for (Vertex v = 0; v < n; ++v) {
          if ((seeds >> v) & 1) out.witness.insert(v);
        }
        return out;
      }
      // Next s-combination of 0..f-1 in lexicographic order.
      std::size_t i = s;
      while (i > 0 && idx[i - 1] == f - s + i - 1) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < s; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  throw SelectionError("brute_force_m: no contagious set found");
}

std::vector<std::string> selector_names() {
  return {"random_parallel", "random_sequential_basic", "sequential_wrap", "greedy_two_phase",
          "girth7",          "gnp_two_stage",           "spectral_parallel", "spectral_parallel_32"};
}

SeedSelection run_selector(const Graph& g, const SelectorSpec& spec, std::uint64_t seed) {
  Rng rng(seed);
  SeedSelection out;
  const auto& algo = spec.algorithm;
  if (algo == "random_parallel") {
    if (!spec.p) throw SelectionError("random_parallel needs p");
    out = start(g, "random_parallel", spec.r);
    Cascade cascade(g, spec.r);
    const auto seeds = random_parallel(g, *spec.p, rng).members();
    for (Vertex v : seeds) cascade.activate(v);
    record_round(out, cascade, seeds);
    out.params_used["p"] = *spec.p;
    finish(g, out);
  } else if (algo == "random_sequential_basic") {
    out = random_sequential_basic(g, spec.r, rng);
  } else if (algo == "sequential_wrap") {
    if (!spec.p) throw SelectionError("sequential_wrap needs p for its random_parallel inner sampler");
    const double p = *spec.p;
    require_probability(p, "sequential_wrap");
    out = sequential_wrap(
        g, spec.r, [&g, p](Rng& draw) { return random_parallel(g, p, draw).members(); }, rng, spec.round_cap);
    out.params_used["p"] = p;
  } else if (algo == "greedy_two_phase") {
    if (spec.r != 2) throw SelectionError("greedy_two_phase is defined for r = 2 only");
    out = greedy_two_phase(g, rng, GreedyOptions{spec.sample_candidates});
  } else if (algo == "girth7") {
    if (spec.r != 2) throw SelectionError("girth7 is defined for r = 2 only");
    out = girth7_select(g, rng, spec.p, spec.round_cap);
  } else if (algo == "gnp_two_stage") {
    if (spec.r != 2) throw SelectionError("gnp_two_stage is defined for r = 2 only");
    const double d = spec.d.value_or(g.num_vertices() == 0 ? 0.0
                                                           : 2.0 * static_cast<double>(g.num_edges()) /
                                                                 static_cast<double>(g.num_vertices()));
    out = gnp_two_stage(g, d, rng, spec.eps, spec.k);
  } else if (algo == "spectral_parallel" || algo == "spectral_parallel_32") {
    SpectralOptions options;
    options.r = spec.r;
    options.c = spec.c.value_or(10.0);
    options.p_override = spec.p;
    options.mode = algo == "spectral_parallel" ? SpectralMode::standard : SpectralMode::three_halves;
    options.round_cap = spec.round_cap;
    out = spectral_parallel_select(g, rng, options);
  } else {
    throw SelectionError("unknown selector: " + algo);
  }
  out.rng_seed = seed;
  return out;
}

}  // namespace bootlab
