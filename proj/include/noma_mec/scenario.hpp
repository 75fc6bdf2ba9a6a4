#pragma once

// Configuration documents and random instance generation.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "noma_mec/model.hpp"
#include "noma_mec/mwis.hpp"
#include "noma_mec/power_alloc.hpp"

namespace nomamec {

struct ScenarioConfig {
  std::size_t n_uds = 24;
  std::size_t n_aps = 9;
  std::size_t n_mecs = 4;
  std::size_t rrbs_per_ap = 3;
  double cell_radius_m = 1500.0;
  double ap_coverage_m = 750.0;
  std::pair<double, double> task_size_range_bits{400.0, 600.0};
  double density = 100.0;
  double deadline_s = 0.01;
  double f_mec_cps = 3e9;
  double f_loc_max_cps = 5e7;
  double alpha = 1e-27;
  double rate_threshold_bps = 5e4;
  double bandwidth_hz = 1e7;
  double noise_dbm_hz = -174.0;
  double p_max_dbm_hz = -42.60;
  double shadowing_std_db = 4.0;
  std::uint64_t seed = 1;

  double w_latency = 0.5;
  double w_energy = 0.5;
  double q_idle_ratio = 0.1;          // Q_idle = ratio * Q_m
  bool backhaul_bandwidth_scaling = true;  // false: backhaul rate in bits/s/Hz
  std::optional<std::vector<Point>> ap_positions;
  std::optional<std::vector<Point>> mec_positions;
  bool redraw_shadowing_per_trial = false;
  std::size_t max_placement_attempts = 1000;
};

/// Settings of the scheduling pipeline that travel in the same document.
struct SolverSettings {
  bool include_singletons = true;
  bool strict_cc2 = false;
  MwisOrdering mwis_ordering = MwisOrdering::Original;
  bool fallback_local = true;
  std::size_t max_iters = 5;
  PowerObjective power_objective = PowerObjective::SumRate;
  std::size_t mec_task_cap = 2;  // all-offload baseline only
};

struct Config {
  ScenarioConfig scenario;
  SolverSettings solver;
};

/// Parses a flat JSON object. Omitted keys keep their defaults; unknown keys,
/// wrong types and out-of-range values throw ConfigError naming the key.
/// An empty or all-whitespace document yields the defaults.
Config load_config(std::string_view text);

/// Throws ConfigError on the first invalid field.
void validate(const ScenarioConfig& config);

/// Converts a power spectral density in dBm/Hz to watts over `bandwidth_hz`.
double dbm_per_hz_to_watts(double dbm_per_hz, double bandwidth_hz);

/// Path loss in dB; distances below 10 m are clamped to 10 m.
double access_path_loss_db(double distance_m);
double backhaul_path_loss_db(double distance_m);

/// Default deterministic layouts.
std::vector<Point> default_ap_positions(std::size_t n_aps, double cell_radius_m);
std::vector<Point> default_mec_positions(std::size_t n_mecs, double cell_radius_m);

/// Draws a complete instance; a pure function of the config (seed included).
Scenario generate(const ScenarioConfig& config);

/// New fast-fading realization (and shadowing, if requested) for one trial.
ChannelState realize_channels(const Scenario& scenario, std::uint64_t trial_seed,
                              bool redraw_shadowing = false, double shadowing_std_db = 4.0);

/// 64-bit mixing function used for every seed derivation.
std::uint64_t splitmix64(std::uint64_t x);

}  // namespace nomamec
