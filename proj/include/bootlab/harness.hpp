#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "bootlab/generators.hpp"
#include "bootlab/selectors.hpp"

namespace bootlab {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::string_view kVersion = "0.1.0";

struct ExperimentSpec {
  std::string name = "experiment";
  /// Exactly one of generator / graph_path is set.
  std::optional<GenSpec> generator;
  std::string graph_path;
  SelectorSpec selector;
  std::size_t trials = 1;
  std::uint64_t seed = 0;
  /// Adds a wall_time_ms column; off by default since it breaks byte-identical reruns.
  bool wall_time = false;
  std::size_t threads = 1;
};

struct TrialRow {
  std::size_t trial = 0;
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t seed_count = 0;
  /// From an independent percolate call, not the selector's own flag.
  bool success = false;
  std::size_t active = 0;
  std::size_t generations = 0;
  std::size_t rounds = 0;
  std::optional<std::size_t> two_stage_seeds;
  std::optional<bool> two_stage_success;
  std::string error;
  double wall_time_ms = 0.0;

  bool ok() const noexcept { return error.empty(); }
};

struct Aggregate {
  std::size_t count = 0;
  double mean = 0.0;
  /// Sample standard deviation (n - 1); 0 for a single value.
  double sd = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  double min = 0.0;
  double max = 0.0;
};

/// Mean, sample sd, mean +- 1.96 sd / sqrt(count), min and max.
Aggregate aggregate(const std::vector<double>& values);

struct ExperimentRecord {
  ExperimentSpec spec;
  std::vector<TrialRow> rows;
  /// Keyed by metric name over rows without errors.
  std::map<std::string, Aggregate> aggregates;
  std::size_t errors = 0;
  /// Selector parameters after clamping, from the first successful trial.
  std::map<std::string, double> params_used;
  std::map<std::string, double> params_raw;
  std::string version{kVersion};
};

/// Seeds of trial i: generator derive_stream(s_i, 0) and selector
/// derive_stream(s_i, 1), with s_i = derive_stream(spec.seed, i).
std::uint64_t trial_stream(std::uint64_t master, std::size_t trial);

ExperimentRecord run_experiment(const ExperimentSpec& spec);

std::vector<std::string> csv_header(bool wall_time);
void write_csv_row(std::ostream& out, const TrialRow& row, bool wall_time,
                   const std::optional<std::string>& axis_value = std::nullopt);
std::string experiment_csv(const ExperimentRecord& record);

/// 17 significant digits.
std::string format_double(double value);

struct SweepSpec {
  ExperimentSpec base;
  std::string axis;
  std::vector<double> values;
  std::string csv_name = "results.csv";
  std::string jsonl_name = "records.jsonl";
};

/// Axis names: generator.<n|d|p|k|c|delta>, selector.<p|c|k|eps|d|r>, or a
/// bare name; bare p means selector.p for selectors that take one and
/// generator.p otherwise.
ExperimentSpec apply_axis(const ExperimentSpec& base, const std::string& axis, double value);

struct SweepResult {
  std::vector<ExperimentRecord> records;
  std::string csv;
  std::string jsonl;
};

SweepResult sweep(const SweepSpec& spec);

/// Reads a JSON config (schema in docs/schema.md). Throws ConfigError.
SweepSpec parse_config(std::string_view text);
SweepSpec load_config(const std::filesystem::path& path);

std::string record_json(const ExperimentRecord& record, const std::optional<std::string>& axis = std::nullopt,
                        std::optional<double> axis_value = std::nullopt);

}  // namespace bootlab
