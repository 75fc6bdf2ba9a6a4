#pragma once

// Monte Carlo experiment driver: sweeps, seeded trials, aggregation and
// CSV/JSON emission.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "noma_mec/scenario.hpp"
#include "noma_mec/schedulers.hpp"

namespace nomamec {

enum class SweepVar { NUds, RrbsPerAp, TaskSizeRange, Density };

std::string_view sweep_var_name(SweepVar v);

/// One sweep point. Ranges are written "lo:hi".
struct SweepValue {
  double lo = 0.0;
  double hi = 0.0;  // equal to lo for scalar variables
  std::string text;
};

/// Parses "<var>=<v1>,<v2>,..."; throws ConfigError naming "sweep".
std::pair<SweepVar, std::vector<SweepValue>> parse_sweep(std::string_view text);

/// Copy of `base` with the sweep variable set to `value`.
ScenarioConfig apply_sweep(ScenarioConfig base, SweepVar var, const SweepValue& value);

struct ExperimentSpec {
  Config base;
  SweepVar sweep_var = SweepVar::NUds;
  std::vector<SweepValue> values;
  std::vector<Scheme> schemes;
  std::size_t trials = 1;
  std::uint64_t master_seed = 1;
  int workers = 0;      // 0: OpenMP default
  bool timing = false;  // record wall time (makes output run-dependent)
};

struct ResultRow {
  std::string scheme;
  std::string sweep_var;
  std::string sweep_value;
  std::size_t trial = 0;
  bool ok = true;
  std::string error;  // set when !ok; numeric fields are then meaningless
  double latency_s = 0.0;
  double energy_j = 0.0;
  double cost = 0.0;
  std::size_t capacity = 0;
  std::size_t scheduled = 0;
  double wall_time_s = 0.0;
  std::size_t vertices = 0;

  friend bool operator==(const ResultRow&, const ResultRow&) = default;
};

/// Seed of trial `trial` at sweep point `value_index`.
std::uint64_t trial_seed(std::uint64_t master, std::size_t value_index, std::size_t trial);

/// Rows ordered by sweep value, then trial, then scheme as listed. A trial
/// that throws yields error rows instead of aborting. Throws ConfigError on
/// an invalid spec.
std::vector<ResultRow> run_experiment(const ExperimentSpec& spec);

struct Stat {
  double mean = 0.0;
  double std = 0.0;  // population
};

struct SummaryRow {
  std::string scheme;
  std::string sweep_var;
  std::string sweep_value;
  std::size_t count = 0;   // successful rows
  std::size_t errors = 0;  // error rows
  Stat latency_s, energy_j, cost, capacity, scheduled, wall_time_s, vertices;
};

/// Mean and population standard deviation per (scheme, sweep_var,
/// sweep_value), in order of first appearance.
std::vector<SummaryRow> summarize(const std::vector<ResultRow>& rows);

enum class Format { Csv, Json };

inline constexpr std::string_view kCsvHeader =
    "scheme,sweep_var,sweep_value,trial,latency_s,energy_j,cost,capacity,scheduled,wall_time_s,"
    "vertices";

void write_csv(const std::vector<ResultRow>& rows, std::ostream& out);
void write_json(const std::vector<ResultRow>& rows, std::ostream& out);
std::vector<ResultRow> read_csv(std::istream& in);
void write_summary_csv(const std::vector<SummaryRow>& rows, std::ostream& out);
void write_summary_json(const std::vector<SummaryRow>& rows, std::ostream& out);

/// Writes to `path`; throws IoError mentioning the path on failure.
void emit(const std::vector<ResultRow>& rows, const std::string& path, Format format);
void emit(const std::vector<SummaryRow>& rows, const std::string& path, Format format);

}  // namespace nomamec
