#include "bootlab/harness.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "bootlab/graph_io.hpp"
#include "bootlab/percolation.hpp"

namespace bootlab {

using json = nlohmann::json;

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

Aggregate aggregate(const std::vector<double>& values) {
  Aggregate a;
  a.count = values.size();
  if (values.empty()) return a;
  double sum = 0.0;
  for (double v : values) sum += v;
  a.mean = sum / static_cast<double>(a.count);
  double ss = 0.0;
  for (double v : values) ss += (v - a.mean) * (v - a.mean);
  a.sd = a.count > 1 ? std::sqrt(ss / static_cast<double>(a.count - 1)) : 0.0;
  const double half = 1.96 * a.sd / std::sqrt(static_cast<double>(a.count));
  a.ci_low = a.mean - half;
  a.ci_high = a.mean + half;
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  a.min = *lo;
  a.max = *hi;
  return a;
}

std::uint64_t trial_stream(std::uint64_t master, std::size_t trial) { return derive_stream(master, trial); }

namespace {

struct TrialOutcome {
  TrialRow row;
  std::map<std::string, double> params_used;
  std::map<std::string, double> params_raw;
};

TrialOutcome run_trial(const ExperimentSpec& spec, const Graph* shared, std::size_t trial) {
  TrialOutcome out;
  out.row.trial = trial;
  const auto started = std::chrono::steady_clock::now();
  try {
    const std::uint64_t stream = trial_stream(spec.seed, trial);
    Graph generated;
    const Graph* g = shared;
    if (!g) {
      generated = generate(*spec.generator, derive_stream(stream, 0));
      g = &generated;
    }
    out.row.n = g->num_vertices();
    out.row.m = g->num_edges();
    const SeedSelection sel = run_selector(*g, spec.selector, derive_stream(stream, 1));
    out.row.seed_count = sel.seeds.size();
    out.row.rounds = sel.rounds.size();
    out.row.two_stage_seeds = sel.two_stage_seeds;
    out.row.two_stage_success = sel.two_stage_complete;
    const CascadeResult check = percolate(*g, sel.seeds, spec.selector.r);
    out.row.success = check.complete();
    out.row.active = check.active.size();
    out.row.generations = check.generations;
    out.params_used = sel.params_used;
    out.params_raw = sel.params_raw;
  } catch (const std::exception& e) {
    out.row.error = e.what();
    if (out.row.error.empty()) out.row.error = "error";
  }
  out.row.wall_time_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
  return out;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string optional_count(const std::optional<std::size_t>& v) { return v ? std::to_string(*v) : std::string(); }

}  // namespace

ExperimentRecord run_experiment(const ExperimentSpec& spec) {
  if (spec.generator.has_value() == !spec.graph_path.empty()) {
    throw ConfigError("experiment needs exactly one of a generator or a graph path");
  }
  ExperimentRecord record;
  record.spec = spec;
  std::optional<Graph> shared;
  if (!spec.graph_path.empty()) shared = load_graph(spec.graph_path);

  std::vector<TrialOutcome> outcomes(spec.trials);
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next++; i < spec.trials; i = next++) {
      outcomes[i] = run_trial(spec, shared ? &*shared : nullptr, i);
    }
  };
  const std::size_t threads = std::clamp<std::size_t>(spec.threads, 1, std::max<std::size_t>(spec.trials, 1));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  std::map<std::string, std::vector<double>> metrics;
  bool have_params = false;
  for (auto& o : outcomes) {
    if (o.row.ok()) {
      metrics["seed_count"].push_back(static_cast<double>(o.row.seed_count));
      metrics["success"].push_back(o.row.success ? 1.0 : 0.0);
      metrics["active"].push_back(static_cast<double>(o.row.active));
      metrics["generations"].push_back(static_cast<double>(o.row.generations));
      metrics["rounds"].push_back(static_cast<double>(o.row.rounds));
      if (o.row.two_stage_seeds) metrics["two_stage_seeds"].push_back(static_cast<double>(*o.row.two_stage_seeds));
      if (o.row.two_stage_success) metrics["two_stage_success"].push_back(*o.row.two_stage_success ? 1.0 : 0.0);
      if (spec.wall_time) metrics["wall_time_ms"].push_back(o.row.wall_time_ms);
      if (!have_params) {
        record.params_used = o.params_used;
        record.params_raw = o.params_raw;
        have_params = true;
      }
    } else {
      ++record.errors;
    }
    record.rows.push_back(std::move(o.row));
  }
  for (const auto& [name, values] : metrics) record.aggregates[name] = aggregate(values);
  return record;
}

std::vector<std::string> csv_header(bool wall_time) {
  std::vector<std::string> h = {"trial",  "n",      "m",          "seed_count", "success", "active", "generations",
                                "rounds", "two_stage_seeds", "two_stage_success", "error"};
  if (wall_time) h.emplace_back("wall_time_ms");
  return h;
}

void write_csv_row(std::ostream& out, const TrialRow& row, bool wall_time, const std::optional<std::string>& axis_value) {
  if (axis_value) out << *axis_value << ',';
  out << row.trial << ',' << row.n << ',' << row.m << ',' << row.seed_count << ',' << (row.success ? 1 : 0) << ','
      << row.active << ',' << row.generations << ',' << row.rounds << ',' << optional_count(row.two_stage_seeds) << ','
      << (row.two_stage_success ? (*row.two_stage_success ? "1" : "0") : "") << ',' << csv_escape(row.error);
  if (wall_time) out << ',' << format_double(row.wall_time_ms);
  out << '\n';
}

namespace {

void write_header(std::ostream& out, bool wall_time, const std::optional<std::string>& axis) {
  bool first = true;
  if (axis) {
    out << csv_escape(*axis);
    first = false;
  }
  for (const auto& h : csv_header(wall_time)) {
    if (!first) out << ',';
    out << h;
    first = false;
  }
  out << '\n';
}

json gen_json(const GenSpec& g) {
  json j;
  j["family"] = g.family;
  j["n"] = g.n;
  j["d"] = g.d;
  j["p"] = g.p;
  j["k"] = g.k;
  j["c"] = g.c;
  j["delta"] = g.delta;
  j["name"] = g.name;
  j["variant"] = g.variant;
  return j;
}

json selector_json(const SelectorSpec& s) {
  json j;
  j["algorithm"] = s.algorithm;
  j["r"] = s.r;
  if (s.p) j["p"] = *s.p;
  if (s.c) j["c"] = *s.c;
  if (s.k) j["k"] = *s.k;
  if (s.eps) j["eps"] = *s.eps;
  if (s.d) j["d"] = *s.d;
  j["round_cap"] = s.round_cap;
  if (s.sample_candidates) j["sample_candidates"] = *s.sample_candidates;
  return j;
}

}  // namespace

std::string experiment_csv(const ExperimentRecord& record) {
  std::ostringstream out;
  write_header(out, record.spec.wall_time, std::nullopt);
  for (const auto& row : record.rows) write_csv_row(out, row, record.spec.wall_time);
  return out.str();
}

std::string record_json(const ExperimentRecord& record, const std::optional<std::string>& axis,
                        std::optional<double> axis_value) {
  json j;
  j["version"] = record.version;
  j["name"] = record.spec.name;
  if (axis) j["axis"] = *axis;
  if (axis_value) j["value"] = *axis_value;
  if (record.spec.generator) j["generator"] = gen_json(*record.spec.generator);
  if (!record.spec.graph_path.empty()) j["graph"] = record.spec.graph_path;
  j["selector"] = selector_json(record.spec.selector);
  j["trials"] = record.spec.trials;
  j["seed"] = record.spec.seed;
  j["errors"] = record.errors;
  j["params_raw"] = record.params_raw;
  j["params_used"] = record.params_used;
  json aggs = json::object();
  for (const auto& [name, a] : record.aggregates) {
    aggs[name] = {{"count", a.count}, {"mean", a.mean}, {"sd", a.sd}, {"ci_low", a.ci_low},
                  {"ci_high", a.ci_high}, {"min", a.min}, {"max", a.max}};
  }
  j["aggregates"] = aggs;
  return j.dump();
}

namespace {

bool selector_takes_p(const std::string& algo) {
  return algo == "random_parallel" || algo == "sequential_wrap" || algo == "girth7" || algo == "spectral_parallel" ||
         algo == "spectral_parallel_32";
}

std::size_t as_count(double value, const std::string& axis) {
  if (!(value >= 0.0) || value != std::floor(value)) throw ConfigError("axis " + axis + " needs whole numbers");
  return static_cast<std::size_t>(value);
}

}  // namespace

ExperimentSpec apply_axis(const ExperimentSpec& base, const std::string& axis, double value) {
  ExperimentSpec spec = base;
  std::string scope;
  std::string field = axis;
  if (const auto dot = axis.find('.'); dot != std::string::npos) {
    scope = axis.substr(0, dot);
    field = axis.substr(dot + 1);
  } else if (field == "p") {
    scope = selector_takes_p(spec.selector.algorithm) ? "selector" : "generator";
  } else if (field == "r" || field == "eps") {
    scope = "selector";
  } else {
    scope = "generator";
  }

  if (scope == "generator") {
    if (!spec.generator) throw ConfigError("axis " + axis + " needs a generator");
    auto& g = *spec.generator;
    if (field == "n") g.n = as_count(value, axis);
    else if (field == "d") g.d = as_count(value, axis);
    else if (field == "p") g.p = value;
    else if (field == "k") g.k = as_count(value, axis);
    else if (field == "c") g.c = as_count(value, axis);
    else if (field == "delta") g.delta = as_count(value, axis);
    else throw ConfigError("unknown generator axis: " + axis);
  } else if (scope == "selector") {
    auto& s = spec.selector;
    if (field == "p") s.p = value;
    else if (field == "c") s.c = value;
    else if (field == "k") s.k = value;
    else if (field == "eps") s.eps = value;
    else if (field == "d") s.d = value;
    else if (field == "r") s.r = as_count(value, axis);
    else throw ConfigError("unknown selector axis: " + axis);
  } else {
    throw ConfigError("unknown axis scope: " + axis);
  }
  return spec;
}

SweepResult sweep(const SweepSpec& spec) {
  SweepResult result;
  std::ostringstream csv;
  std::ostringstream jsonl;
  const bool wall = spec.base.wall_time;
  if (spec.axis.empty()) {
    auto record = run_experiment(spec.base);
    csv << experiment_csv(record);
    jsonl << record_json(record) << '\n';
    result.records.push_back(std::move(record));
  } else {
    write_header(csv, wall, spec.axis);
    for (double value : spec.values) {
      auto record = run_experiment(apply_axis(spec.base, spec.axis, value));
      const std::string label = format_double(value);
      for (const auto& row : record.rows) write_csv_row(csv, row, wall, label);
      jsonl << record_json(record, spec.axis, value) << '\n';
      result.records.push_back(std::move(record));
    }
  }
  result.csv = csv.str();
  result.jsonl = jsonl.str();
  return result;
}

namespace {

template <class T>
T get_or(const json& j, const char* key, T fallback) {
  return j.contains(key) ? j.at(key).get<T>() : fallback;
}

template <class T>
std::optional<T> get_opt(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<T>();
}

void reject_unknown(const json& j, std::initializer_list<const char*> allowed, const char* where) {
  for (const auto& [key, _] : j.items()) {
    if (std::find_if(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; }) == allowed.end()) {
      throw ConfigError(std::string("unknown key '") + key + "' in " + where);
    }
  }
}

}  // namespace

SweepSpec parse_config(std::string_view text) {
  SweepSpec out;
  try {
    const json j = json::parse(text);
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    reject_unknown(j, {"name", "generator", "graph", "selector", "trials", "seed", "wall_time", "threads", "sweep", "output"},
                   "config");
    auto& base = out.base;
    base.name = get_or<std::string>(j, "name", "experiment");
    if (j.contains("generator")) {
      const auto& g = j.at("generator");
      reject_unknown(g, {"family", "n", "d", "p", "k", "c", "delta", "name", "variant"}, "generator");
      GenSpec gen;
      gen.family = g.at("family").get<std::string>();
      gen.n = get_or<std::size_t>(g, "n", 0);
      gen.d = get_or<std::size_t>(g, "d", 0);
      gen.p = get_or<double>(g, "p", 0.0);
      gen.k = get_or<std::size_t>(g, "k", 0);
      gen.c = get_or<std::size_t>(g, "c", 0);
      gen.delta = get_or<std::size_t>(g, "delta", 0);
      gen.name = get_or<std::string>(g, "name", "");
      gen.variant = get_or<std::string>(g, "variant", "");
      base.generator = gen;
    }
    base.graph_path = get_or<std::string>(j, "graph", "");
    if (base.generator.has_value() == !base.graph_path.empty()) {
      throw ConfigError("config needs exactly one of 'generator' or 'graph'");
    }
    if (!j.contains("selector")) throw ConfigError("config needs a 'selector'");
    const auto& s = j.at("selector");
    reject_unknown(s, {"algorithm", "r", "p", "c", "k", "eps", "d", "round_cap", "sample_candidates"}, "selector");
    auto& sel = base.selector;
    sel.algorithm = s.at("algorithm").get<std::string>();
    const auto names = selector_names();
    if (std::find(names.begin(), names.end(), sel.algorithm) == names.end()) {
      throw ConfigError("unknown selector: " + sel.algorithm);
    }
    sel.r = get_or<std::size_t>(s, "r", 2);
    sel.p = get_opt<double>(s, "p");
    sel.c = get_opt<double>(s, "c");
    sel.k = get_opt<double>(s, "k");
    sel.eps = get_opt<double>(s, "eps");
    sel.d = get_opt<double>(s, "d");
    sel.round_cap = get_or<std::size_t>(s, "round_cap", kDefaultRoundCap);
    sel.sample_candidates = get_opt<std::size_t>(s, "sample_candidates");
    base.trials = get_or<std::size_t>(j, "trials", 1);
    base.seed = get_or<std::uint64_t>(j, "seed", 0);
    base.wall_time = get_or<bool>(j, "wall_time", false);
    base.threads = get_or<std::size_t>(j, "threads", 1);
    if (j.contains("sweep")) {
      const auto& sw = j.at("sweep");
      reject_unknown(sw, {"axis", "values"}, "sweep");
      out.axis = sw.at("axis").get<std::string>();
      out.values = sw.at("values").get<std::vector<double>>();
      for (double v : out.values) apply_axis(base, out.axis, v);
      if (out.values.empty()) apply_axis(base, out.axis, 0.0);
    }
    if (j.contains("output")) {
      const auto& o = j.at("output");
      reject_unknown(o, {"csv", "jsonl"}, "output");
      out.csv_name = get_or<std::string>(o, "csv", out.csv_name);
      out.jsonl_name = get_or<std::string>(o, "jsonl", out.jsonl_name);
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  return out;
}

SweepSpec load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

}  // namespace bootlab
