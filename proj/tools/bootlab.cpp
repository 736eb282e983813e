#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "bootlab/analytics.hpp"
#include "bootlab/diagnostics.hpp"
#include "bootlab/generators.hpp"
#include "bootlab/graph_io.hpp"
#include "bootlab/harness.hpp"
#include "bootlab/percolation.hpp"
#include "bootlab/selectors.hpp"

using json = nlohmann::json;
using namespace bootlab;

namespace {

std::vector<Vertex> parse_vertex_list(const std::string& arg) {
  std::string text = arg;
  if (!text.empty() && text[0] == '@') {
    std::ifstream in(text.substr(1));
    if (!in) throw std::runtime_error("cannot open seed file " + text.substr(1));
    std::ostringstream buf;
    buf << in.rdbuf();
    text = buf.str();
  }
  for (char& c : text) {
    if (c == ',' || c == '\n' || c == '\r' || c == '\t') c = ' ';
  }
  std::istringstream in(text);
  std::vector<Vertex> out;
  long long v = 0;
  while (in >> v) {
    if (v < 0 || v > static_cast<long long>(std::numeric_limits<Vertex>::max())) {
      throw std::runtime_error("bad vertex id " + std::to_string(v));
    }
    out.push_back(static_cast<Vertex>(v));
  }
  if (!in.eof()) throw std::runtime_error("cannot parse seed list");
  return out;
}

json cascade_json(const CascadeResult& c) {
  json j;
  j["active"] = c.active.members();
  j["active_count"] = c.active.size();
  j["complete"] = c.complete();
  j["generation"] = c.generation;
  j["generations"] = c.generations;
  j["newly_active_per_generation"] = c.newly_active_per_generation;
  return j;
}

json selection_json(const SeedSelection& s) {
  json j;
  j["algorithm"] = s.algorithm;
  j["r"] = s.threshold;
  j["rng_seed"] = s.rng_seed;
  j["seeds"] = s.seeds.members();
  j["seed_count"] = s.seeds.size();
  j["contagious"] = s.contagious;
  j["params_raw"] = s.params_raw;
  j["params_used"] = s.params_used;
  json rounds = json::array();
  for (const auto& r : s.rounds) {
    rounds.push_back({{"index", r.index}, {"added", r.added}, {"active_after", r.active_after},
                      {"reach_after", r.reach_after}});
  }
  j["rounds"] = rounds;
  if (s.phase_switch_round) j["phase_switch_round"] = *s.phase_switch_round;
  if (s.two_stage_seeds) j["two_stage_seeds"] = *s.two_stage_seeds;
  if (s.two_stage_complete) j["two_stage_complete"] = *s.two_stage_complete;
  if (s.fallback_seeds) j["fallback_seeds"] = *s.fallback_seeds;
  j["warnings"] = s.warnings;
  return j;
}

json trace_json(const RecursionTrace& t) {
  json j;
  j["d"] = t.d;
  j["r"] = t.r;
  j["k"] = t.k;
  j["p0"] = t.p0;
  j["infinite"] = t.infinite;
  j["p"] = t.p;
  j["q"] = t.q;
  json regimes = json::array();
  for (auto r : t.regime) regimes.push_back(regime_name(r));
  j["regime"] = regimes;
  return j;
}

void emit(const json& j) { std::cout << j.dump(2) << '\n'; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bootlab: r-neighbor bootstrap percolation experiments"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "Generate a graph");
  GenSpec spec;
  std::uint64_t gen_seed = 0;
  std::string gen_out;
  std::string gen_format = "text";
  gen->add_option("--family", spec.family, "Graph family")->required();
  gen->add_option("--n", spec.n);
  gen->add_option("--d", spec.d);
  gen->add_option("--p", spec.p);
  gen->add_option("--k", spec.k);
  gen->add_option("--c", spec.c);
  gen->add_option("--delta", spec.delta);
  gen->add_option("--name", spec.name, "Fixture name, or source graph path for 'regularized'");
  gen->add_option("--variant", spec.variant);
  gen->add_option("--rng-seed", gen_seed);
  gen->add_option("--out", gen_out, "Output path (stdout when omitted)");
  gen->add_option("--format", gen_format)->check(CLI::IsMember({"text", "json"}));

  // diagnose
  auto* diag = app.add_subcommand("diagnose", "Structural report for a graph");
  std::string diag_graph;
  SpectrumOptions spec_opts;
  bool skip_spectrum = false;
  diag->add_option("--graph", diag_graph)->required();
  diag->add_option("--spectrum-tol", spec_opts.tolerance);
  diag->add_option("--max-iterations", spec_opts.max_iterations);
  diag->add_flag("--skip-spectrum", skip_spectrum);

  // percolate
  auto* perc = app.add_subcommand("percolate", "Run the process from a seed set");
  std::string perc_graph;
  std::string perc_seeds;
  std::size_t perc_r = 2;
  perc->add_option("--graph", perc_graph)->required();
  perc->add_option("--seeds", perc_seeds, "Comma list, or @file")->required();
  perc->add_option("--r", perc_r)->required();

  // select
  auto* sel = app.add_subcommand("select", "Choose a contagious seed set");
  std::string sel_graph;
  SelectorSpec sel_spec;
  std::uint64_t sel_seed = 0;
  std::optional<double> sel_p, sel_c, sel_k, sel_eps, sel_d;
  std::optional<std::size_t> sel_sample;
  sel->add_option("--graph", sel_graph)->required();
  sel->add_option("--algo", sel_spec.algorithm)->required()->check(CLI::IsMember(selector_names()));
  sel->add_option("--r", sel_spec.r);
  sel->add_option("--rng-seed", sel_seed);
  sel->add_option("--p", sel_p);
  sel->add_option("--c", sel_c);
  sel->add_option("--k", sel_k);
  sel->add_option("--eps", sel_eps);
  sel->add_option("--d", sel_d, "Average degree for gnp_two_stage");
  sel->add_option("--round-cap", sel_spec.round_cap);
  sel->add_option("--sample-candidates", sel_sample);

  // oracle
  auto* oracle = app.add_subcommand("oracle", "Exact m(G, r) for small graphs");
  std::string oracle_graph;
  std::size_t oracle_r = 2;
  std::size_t oracle_cap = kBruteForceCap;
  oracle->add_option("--graph", oracle_graph)->required();
  oracle->add_option("--r", oracle_r)->required();
  oracle->add_option("--n-cap", oracle_cap);

  // analytics
  auto* analytics = app.add_subcommand("analytics", "Recursions and closed-form bounds");
  analytics->require_subcommand(1);
  auto* rec = analytics->add_subcommand("recursion", "Tree recursion trace");
  std::size_t rec_d = 0, rec_k = 0, rec_r = 2, rec_imax = 10;
  double rec_p0 = 0.0;
  bool rec_infinite = false;
  rec->add_option("--d", rec_d)->required();
  rec->add_option("--k", rec_k);
  rec->add_option("--p0", rec_p0)->required();
  rec->add_option("--r", rec_r);
  rec->add_flag("--infinite", rec_infinite);
  rec->add_option("--i-max", rec_imax);
  auto* bounds = analytics->add_subcommand("bounds", "Closed-form reference magnitudes");
  double b_n = 0, b_d = 0;
  std::size_t b_r = 2;
  std::optional<double> b_delta;
  bounds->add_option("--n", b_n)->required();
  bounds->add_option("--d", b_d)->required();
  bounds->add_option("--r", b_r);
  bounds->add_option("--delta", b_delta);
  auto* pc = analytics->add_subcommand("pc", "Estimate the critical seed probability");
  std::string pc_graph;
  std::size_t pc_r = 2, pc_trials = 1000;
  double pc_tol = 0.01;
  std::uint64_t pc_seed = 0;
  pc->add_option("--graph", pc_graph)->required();
  pc->add_option("--r", pc_r);
  pc->add_option("--trials", pc_trials);
  pc->add_option("--tol", pc_tol);
  pc->add_option("--rng-seed", pc_seed);

  // sweep
  auto* sw = app.add_subcommand("sweep", "Run an experiment config");
  std::string sw_config;
  std::string sw_out = ".";
  sw->add_option("--config", sw_config)->required();
  sw->add_option("--out-dir", sw_out);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      const Graph g = generate(spec, gen_seed);
      const auto fmt = parse_graph_format(gen_format);
      if (gen_out.empty()) {
        write_graph(std::cout, g, fmt);
      } else {
        save_graph(gen_out, g, fmt);
      }
    } else if (*diag) {
      const Graph g = load_graph(diag_graph);
      const auto stats = degree_stats(g);
      json j;
      j["n"] = g.num_vertices();
      j["m"] = g.num_edges();
      j["simple"] = g.is_simple();
      j["degrees"] = {{"min", stats.min_degree}, {"max", stats.max_degree}};
      j["regular"] = stats.is_regular;
      j["connected"] = component_members(g).size() <= 1;
      if (g.is_simple()) {
        j["girth"] = girth_to_string(girth(g));
        j["has_4cycle"] = has_4cycle(g);
      }
      if (!skip_spectrum && g.num_vertices() >= 2) {
        const auto s = spectrum(g, spec_opts);
        j["lambda1"] = s.lambda1;
        j["lambda2"] = s.lambda2;
        j["lambda_min"] = s.lambda_min;
        j["lambda"] = s.lambda;
        j["delta"] = s.delta ? json(*s.delta) : json(nullptr);
        j["tolerance_achieved"] = s.tolerance_achieved;
        j["iterations"] = s.iterations;
      }
      emit(j);
    } else if (*perc) {
      const Graph g = load_graph(perc_graph);
      const VertexSet seeds(g.num_vertices(), parse_vertex_list(perc_seeds));
      const auto result = percolate(g, seeds, perc_r);
      json j = cascade_json(result);
      j["excited"] = excited_set(g, result, perc_r).members();
      emit(j);
    } else if (*sel) {
      const Graph g = load_graph(sel_graph);
      sel_spec.p = sel_p;
      sel_spec.c = sel_c;
      sel_spec.k = sel_k;
      sel_spec.eps = sel_eps;
      sel_spec.d = sel_d;
      sel_spec.sample_candidates = sel_sample;
      const auto s = run_selector(g, sel_spec, sel_seed);
      const auto cascade = percolate(g, s.seeds, sel_spec.r);
      json j;
      j["selection"] = selection_json(s);
      j["cascade"] = {{"active_count", cascade.active.size()},
                      {"complete", cascade.complete()},
                      {"generations", cascade.generations}};
      emit(j);
    } else if (*oracle) {
      const Graph g = load_graph(oracle_graph);
      const auto result = brute_force_m(g, oracle_r, oracle_cap);
      emit({{"m", result.m}, {"witness", result.witness.members()}, {"evaluated", result.evaluated}});
    } else if (*rec) {
      const auto trace =
          rec_infinite ? tree_recursion_infinite(rec_d, rec_p0, rec_imax, rec_r) : tree_recursion_finite(rec_d, rec_k, rec_p0, rec_r);
      emit(trace_json(trace));
    } else if (*bounds) {
      const auto b = closed_form_bounds(b_n, b_d, b_r, b_delta);
      json j;
      j["n"] = b.n;
      j["d"] = b.d;
      j["r"] = b.r;
      j["delta"] = b.delta ? json(*b.delta) : json(nullptr);
      j["clique_cover"] = b.clique_cover;
      j["spectral_threshold"] = b.spectral_threshold ? json(*b.spectral_threshold) : json(nullptr);
      j["spectral_threshold_r"] = b.spectral_threshold_r ? json(*b.spectral_threshold_r) : json(nullptr);
      j["general_r_order"] = b.general_r_order ? json(*b.general_r_order) : json(nullptr);
      j["gnp_order"] = b.gnp_order ? json(*b.gnp_order) : json(nullptr);
      emit(j);
    } else if (*pc) {
      const Graph g = load_graph(pc_graph);
      const auto est = estimate_pc(g, pc_r, pc_trials, pc_tol, pc_seed);
      emit({{"lower", est.lower},
            {"upper", est.upper},
            {"estimate", est.midpoint()},
            {"freq_lower", est.freq_lower},
            {"freq_upper", est.freq_upper},
            {"trials", est.trials},
            {"bisection_steps", est.bisection_steps}});
    } else if (*sw) {
      SweepSpec config;
      try {
        config = load_config(sw_config);
      } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
      }
      const auto result = sweep(config);
      std::filesystem::create_directories(sw_out);
      const auto csv_path = std::filesystem::path(sw_out) / config.csv_name;
      const auto jsonl_path = std::filesystem::path(sw_out) / config.jsonl_name;
      std::ofstream(csv_path, std::ios::binary) << result.csv;
      std::ofstream(jsonl_path, std::ios::binary) << result.jsonl;
      std::size_t errors = 0;
      for (const auto& r : result.records) errors += r.errors;
      std::cerr << "wrote " << csv_path.string() << " and " << jsonl_path.string() << " (" << result.records.size()
                << " records, " << errors << " error rows)\n";
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
