// Acceptance run: one PASS/FAIL line per criterion. Pass criterion numbers
// as arguments to run a subset.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "bootlab/analytics.hpp"
#include "bootlab/diagnostics.hpp"
#include "bootlab/generators.hpp"
#include "bootlab/percolation.hpp"
#include "bootlab/selectors.hpp"
#include "support/oracles.hpp"

using namespace bootlab;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

template <typename... Args>
std::string fmt(const char* pattern, Args... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, pattern, args...);
  return buf;
}

VertexSet random_subset(std::size_t n, std::size_t size, Rng& rng) {
  std::vector<Vertex> ids(n);
  for (Vertex v = 0; v < n; ++v) ids[v] = v;
  for (std::size_t i = 0; i < size; ++i) std::swap(ids[i], ids[i + rng.below(n - i)]);
  return VertexSet(n, std::vector<Vertex>(ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(size)));
}

// All subsets of {0..n-1} with at most max_size members.
void for_each_small_subset(std::size_t n, std::size_t max_size, const std::function<void(const VertexSet&)>& f) {
  std::vector<Vertex> pick;
  std::function<void(Vertex)> rec = [&](Vertex start) {
    f(VertexSet(n, pick));
    if (pick.size() == max_size) return;
    for (Vertex v = start; v < n; ++v) {
      pick.push_back(v);
      rec(v + 1);
      pick.pop_back();
    }
  };
  rec(0);
}

Outcome ac1() {
  Rng rng(101);
  const double ps[] = {0.2, 0.4, 0.6, 0.8};
  std::size_t checks = 0, mismatches = 0;
  for (int i = 0; i < 200; ++i) {
    const std::size_t n = 1 + static_cast<std::size_t>(i % 8);
    const Graph g = gnp(n, ps[(i / 8) % 4], rng);
    for (std::size_t r = 1; r <= 3; ++r) {
      for_each_small_subset(n, 3, [&](const VertexSet& s) {
        ++checks;
        const auto res = percolate(g, s, r);
        const auto gens = oracle::naive_generations(g, s, r);
        if (res.active != oracle::naive_closure(g, s, r) || res.generations + 1 != gens.size()) ++mismatches;
      });
    }
  }
  return {mismatches == 0, fmt("%zu graph/seed/r cases, %zu mismatches", checks, mismatches)};
}

struct Extremal {
  const char* label;
  Graph graph;
  std::size_t expected;
};

std::vector<Extremal> extremal_family() {
  return {{"3xK4", disjoint_cliques(3, 3), 6},
          {"2xK33", disjoint_bipartite(2, 3), 4},
          {"Q3", hypercube(3), 3},
          {"C6", cycle_graph(6), 3}};
}

Outcome ac2() {
  bool ok = true;
  std::string detail;
  for (const auto& e : extremal_family()) {
    const auto res = brute_force_m(e.graph, 2);
    ok = ok && res.m == e.expected;
    detail += fmt("%s m=%zu (want %zu) ", e.label, res.m, e.expected);
  }
  return {ok, detail};
}

Outcome ac3() {
  std::size_t failures = 0, sets = 0;
  std::string detail;
  for (std::size_t d : {8u, 16u}) {
    double worst_size = 0;
    for (std::uint64_t i = 0; i < 10; ++i) {
      Rng rng(derive_stream(300 + d, i));
      const Graph g = random_regular(1000, d, rng);
      const double lambda2 = spectrum(g).lambda2;
      const auto size = static_cast<std::size_t>(std::ceil(1000.0 / ((1.0 - lambda2 / d) * d))) + 1;
      worst_size = std::max(worst_size, static_cast<double>(size));
      for (int s = 0; s < 50; ++s) {
        ++sets;
        if (!is_contagious(g, random_subset(1000, std::min<std::size_t>(size, 1000), rng), 2)) ++failures;
      }
    }
    detail += fmt("d=%zu max set size %.0f; ", d, worst_size);
  }
  return {failures == 0, detail + fmt("%zu sets, %zu not contagious", sets, failures)};
}

Outcome ac4() {
  bool ok = true;
  std::string detail = "(a)";
  for (double d : {100.0, 1000.0, 10000.0}) {
    const std::size_t k = amplification_depth(d);
    const double pk = tree_recursion_finite(static_cast<std::size_t>(d), k, g_threshold(d, k) / (d * d), 2).p.back();
    ok = ok && pk >= 1.0 / (2.0 * std::exp(1.0));
    detail += fmt(" d=%.0f p_k=%.4f", d, pk);
  }
  detail += "; (b)";
  const Graph tree = complete_tree(10, 3);
  const std::size_t first_leaf = complete_tree_order(10, 2);
  const std::size_t trials = 10000;
  for (double p : {0.02, 0.035, 0.05}) {
    const double expected = tree_recursion_finite(10, 3, p, 2).p.back();
    Rng rng(derive_stream(404, static_cast<std::uint64_t>(p * 1e6)));
    std::size_t hits = 0;
    for (std::size_t t = 0; t < trials; ++t) {
      VertexSet seeds(tree.num_vertices());
      for (Vertex v = static_cast<Vertex>(first_leaf); v < tree.num_vertices(); ++v) {
        if (rng.uniform() < p) seeds.insert(v);
      }
      hits += percolate(tree, seeds, 2).active.contains(0) ? 1 : 0;
    }
    const double freq = static_cast<double>(hits) / trials;
    const double se = std::sqrt(expected * (1.0 - expected) / trials);
    ok = ok && std::abs(freq - expected) <= 3.0 * se;
    detail += fmt(" p0=%.4f sim=%.4f rec=%.4f se=%.4f", p, freq, expected, se);
  }
  return {ok, detail};
}

Outcome ac5() {
  const Graph g = fixture("mcgee");
  const std::size_t n = g.num_vertices();
  std::size_t checked = 0, violations = 0, tightest = n;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u; v < n; ++v) {
      const std::vector<Vertex> members = u == v ? std::vector<Vertex>{u} : std::vector<Vertex>{u, v};
      const std::size_t size = second_neighborhood(g, VertexSet(n, members)).size();
      ++checked;
      tightest = std::min(tightest, size);
      if (2 * size < 9 * members.size()) ++violations;
    }
  }
  return {violations == 0, fmt("%zu sets, %zu violations, smallest |N2(S)|=%zu", checked, violations, tightest)};
}

Outcome ac6() {
  bool ok = true;
  std::string detail;
  for (std::size_t d : {3u, 4u}) {
    for (std::size_t k : {1u, 2u}) {
      const auto formula = count_2k_trees(d, k);
      const auto enumerated = oracle::enumerate_2k_subtrees(complete_tree(d, k), d, k);
      ok = ok && formula == enumerated;
      detail += fmt("(%zu,%zu): %s vs %llu ", d, k, formula.str().c_str(), static_cast<unsigned long long>(enumerated));
    }
  }
  return {ok, detail};
}

Outcome ac7() {
  std::size_t violations = 0;
  std::string detail;
  for (std::size_t d : {8u, 16u}) {
    std::size_t max_seeds = 0;
    for (std::uint64_t i = 0; i < 5; ++i) {
      Rng rng(derive_stream(700 + d, i));
      const Graph g = random_regular(2000, d, rng);
      const auto sel = greedy_two_phase(g, rng);
      max_seeds = std::max(max_seeds, sel.seeds.size());
      const std::size_t horizon = 2000 / d;
      for (std::size_t t = 1; t <= horizon; ++t) {
        // Past the last round the cascade is complete and |B_t| = n.
        const std::size_t reach = t <= sel.rounds.size() ? sel.rounds[t - 1].reach_after : g.num_vertices();
        if (2 * reach < d * t) ++violations;
      }
      if (!sel.contagious) ++violations;
    }
    detail += fmt("d=%zu max seeds %zu; ", d, max_seeds);
  }
  return {violations == 0, detail + fmt("%zu violations", violations)};
}

Outcome ac8() {
  const std::size_t n = 100000;
  const double d = 64.0;
  std::vector<std::size_t> counts;
  std::size_t complete = 0;
  for (std::uint64_t i = 0; i < 20; ++i) {
    Rng rng(derive_stream(800, i));
    const Graph g = gnp(n, d / static_cast<double>(n), rng);
    const auto sel = gnp_two_stage(g, d, rng);
    counts.push_back(*sel.two_stage_seeds);
    complete += *sel.two_stage_complete ? 1 : 0;
  }
  std::sort(counts.begin(), counts.end());
  const double median = 0.5 * static_cast<double>(counts[9] + counts[10]);
  const double baseline = 1.25 * static_cast<double>(n) / (2.0 * d * d);
  const bool ok = complete >= 16 && median < baseline;
  return {ok, fmt("two-stage complete %zu/20, median seeds %.1f vs baseline %.2f (min %zu, max %zu)", complete,
                  median, baseline, counts.front(), counts.back())};
}

Outcome ac9() {
  Rng rng(derive_stream(900, 0));
  const Graph g = random_regular(std::size_t{1} << 16, 3, rng);
  const auto bound = static_cast<std::size_t>(std::ceil(std::log(std::log2(65536.0)) / std::log(3.0)));
  std::size_t enough = 0, complete = 0;
  for (int t = 0; t < 100; ++t) {
    const auto res = percolate(g, random_parallel(g, 0.25, rng), 2);
    enough += res.generations >= bound ? 1 : 0;
    complete += res.complete() ? 1 : 0;
  }
  return {enough >= 95, fmt("generations >= %zu in %zu/100 trials (%zu fully active)", bound, enough, complete)};
}

Outcome ac10() {
  const auto names = fixture_names();
  const double p = 0.25;
  std::size_t failures = 0;
  for (std::size_t run = 0; run < 1000; ++run) {
    const Graph g = fixture(names[run % names.size()]);
    Rng rng(derive_stream(1000, run));
    const auto sel = sequential_wrap(g, 2, [&](Rng& r) { return random_parallel(g, p, r).members(); }, rng);
    if (!sel.contagious || !is_contagious(g, sel.seeds, 2)) ++failures;
  }

  const Graph petersen = fixture("petersen");
  const std::size_t n = petersen.num_vertices();
  const std::size_t trials = 20000;
  Rng rng(derive_stream(1001, 0));
  double activated = 0, total = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    activated += static_cast<double>(percolate(petersen, random_parallel(petersen, p, rng), 2).active.size());
    const auto sel =
        sequential_wrap(petersen, 2, [&](Rng& r) { return random_parallel(petersen, p, r).members(); }, rng);
    total += static_cast<double>(sel.seeds.size());
  }
  const double q_hat = activated / static_cast<double>(trials * n);
  const double mean = total / static_cast<double>(trials);
  const double bound = p / q_hat * static_cast<double>(n) * 1.15;
  return {failures == 0 && mean <= bound,
          fmt("%zu fixtures, %zu/1000 not contagious; Petersen q=%.4f mean size %.3f <= %.3f", names.size(), failures,
              q_hat, mean, bound)};
}

Outcome ac11() {
  const Graph g = star_graph(3);
  const auto reg = regularize(g, 3);
  const auto minimal = brute_force_m(g, 2);
  const auto lifted = lift_to_host(reg, minimal.witness);
  const bool lifted_ok = lifted.size() == 6 * minimal.m && is_contagious(reg.host, lifted, 2);
  std::size_t bad = 0;
  for (std::uint64_t i = 0; i < 20; ++i) {
    Rng rng(derive_stream(1100, i));
    const auto sel = random_sequential_basic(reg.host, 2, rng);
    if (!is_contagious(reg.host, sel.seeds, 2) || !is_contagious(g, project_to_source(reg, sel.seeds), 2)) ++bad;
  }
  return {lifted_ok && bad == 0, fmt("|H|=%zu, lifted %zu seeds contagious=%d; %zu/20 projections failed",
                                     reg.host.num_vertices(), lifted.size(), lifted_ok ? 1 : 0, bad)};
}

Outcome ac12() {
  std::size_t failures = 0, pairs = 0;
  for (std::size_t d : {2u, 3u, 4u}) {
    for (std::uint64_t i = 0; i < 20; ++i) {
      Rng rng(derive_stream(1200 + d, i));
      const Graph g = pref_attach(1000, d, rng);
      for (Vertex a = 0; a < d; ++a) {
        for (Vertex b = a + 1; b < d; ++b) {
          ++pairs;
          if (!is_contagious(g, VertexSet(1000, std::vector<Vertex>{a, b}), 2)) ++failures;
        }
      }
    }
  }
  return {failures == 0, fmt("%zu pairs, %zu not contagious", pairs, failures)};
}

Outcome ac13() {
  bool ok = true;
  std::string detail;
  for (const auto& e : extremal_family()) {
    const auto res = brute_force_m(e.graph, 2);
    const auto w = density_witness(e.graph, res.witness, 2);
    // Recount induced edges of each prefix independently of the witness.
    std::vector<char> in(e.graph.num_vertices(), 0);
    std::size_t edges = 0;
    bool prefix_ok = w.order.size() == e.graph.num_vertices();
    for (std::size_t i = 0; i < w.order.size(); ++i) {
      for (Vertex u : e.graph.neighbors(w.order[i])) edges += in[u] ? 1 : 0;
      in[w.order[i]] = 1;
      if (i + 1 >= w.seed_count) {
        const std::size_t t = i + 1 - w.seed_count;
        prefix_ok = prefix_ok && edges >= 2 * t && w.induced_edges[t] == edges;
      }
    }
    ok = ok && prefix_ok && w.satisfied();
    detail += fmt("%s %s ", e.label, prefix_ok ? "ok" : "violated");
  }
  return {ok, detail};
}

Outcome ac14() {
  Rng rng(1400);
  const std::size_t samples = 10000;
  std::size_t simple = 0;
  for (std::size_t i = 0; i < samples; ++i) simple += simplify(config_model(1000, 3, rng)).was_simple() ? 1 : 0;
  const double freq = static_cast<double>(simple) / samples;
  return {std::abs(freq - std::exp(-2.0)) <= 0.02, fmt("simple frequency %.4f vs %.4f", freq, std::exp(-2.0))};
}

Outcome ac15() {
  bool ok = true;
  std::string detail;
  const std::pair<const char*, Graph> cases[] = {
      {"petersen", fixture("petersen")}, {"heawood", fixture("heawood")}, {"C6", cycle_graph(6)}, {"K6", complete_graph(6)}};
  for (const auto& [label, g] : cases) {
    const auto eig = oracle::adjacency_eigenvalues(g);
    const auto rep = spectrum(g);
    const double e2 = std::abs(rep.lambda2 - eig[eig.size() - 2]);
    const double emin = std::abs(rep.lambda_min - eig.front());
    ok = ok && e2 <= 1e-6 && emin <= 1e-6;
    detail += fmt("%s (%.6f, %.6f) ", label, rep.lambda2, rep.lambda_min);
  }
  return {ok, detail};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::function<Outcome()>> criteria = {ac1, ac2,  ac3,  ac4,  ac5,  ac6,  ac7, ac8,
                                                          ac9, ac10, ac11, ac12, ac13, ac14, ac15};
  std::set<std::size_t> only;
  for (int i = 1; i < argc; ++i) only.insert(std::strtoul(argv[i], nullptr, 10));

  std::size_t failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (!only.empty() && !only.count(i + 1)) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = criteria[i]();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failed += out.pass ? 0 : 1;
    std::printf("%s AC%zu: %s [%.2fs]\n", out.pass ? "PASS" : "FAIL", i + 1, out.detail.c_str(), secs);
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
