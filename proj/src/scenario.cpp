#include "noma_mec/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include <json.hpp>

#include "noma_mec/errors.hpp"

namespace nomamec {
namespace {

using nlohmann::json;

constexpr double kMinDistanceM = 10.0;

// Independent streams derived from the scenario seed.
enum Stream : std::uint64_t { kPlacement = 1, kShadowing = 2, kFading = 3, kTasks = 4 };

std::mt19937_64 stream(std::uint64_t seed, std::uint64_t id) {
  return std::mt19937_64(splitmix64(seed ^ splitmix64(id)));
}

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

// Box-Muller; written out so the draw sequence does not depend on the
// standard library's distribution implementations.
struct Normal {
  bool has_spare = false;
  double spare = 0.0;
  double operator()(std::mt19937_64& rng) {
    if (has_spare) {
      has_spare = false;
      return spare;
    }
    double u1 = 0.0;
    do {
      u1 = uniform01(rng);
    } while (u1 <= 0.0);
    const double u2 = uniform01(rng);
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double th = 2.0 * std::numbers::pi * u2;
    spare = r * std::sin(th);
    has_spare = true;
    return r * std::cos(th);
  }
};

bool in_hexagon(Point p, double r) {
  // Flat-top hexagon with circumradius r centred at the origin.
  const double ax = std::abs(p.x);
  const double ay = std::abs(p.y);
  const double s3 = std::numbers::sqrt3;
  return ay <= 0.5 * s3 * r && s3 * ax + ay <= s3 * r;
}

Point sample_hexagon(std::mt19937_64& rng, double r) {
  for (;;) {
    Point p{(2.0 * uniform01(rng) - 1.0) * r, (2.0 * uniform01(rng) - 1.0) * 0.5 * std::numbers::sqrt3 * r};
    if (in_hexagon(p, r)) return p;
  }
}

std::vector<Point> ring(std::size_t count, double radius, double phase, bool centre_first) {
  std::vector<Point> out;
  if (count == 0) return out;
  std::size_t on_ring = count;
  if (centre_first || count == 1) {
    out.push_back({0.0, 0.0});
    on_ring = count - 1;
  }
  for (std::size_t i = 0; i < on_ring; ++i) {
    const double a = phase + 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(on_ring);
    out.push_back({radius * std::cos(a), radius * std::sin(a)});
  }
  return out;
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

// ---- config parsing -------------------------------------------------------

[[noreturn]] void fail(const std::string& key, const std::string& why) {
  throw ConfigError(key, "config field '" + key + "': " + why);
}

double get_real(const json& v, const std::string& key) {
  if (!v.is_number()) fail(key, "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) fail(key, "must be finite");
  return d;
}

std::size_t get_count(const json& v, const std::string& key) {
  if (v.is_number_unsigned()) return v.get<std::size_t>();
  if (v.is_number_integer()) fail(key, "must not be negative");
  fail(key, "expected a non-negative integer");
}

bool get_bool(const json& v, const std::string& key) {
  if (!v.is_boolean()) fail(key, "expected true or false");
  return v.get<bool>();
}

std::vector<Point> get_points(const json& v, const std::string& key) {
  if (!v.is_array()) fail(key, "expected an array of [x, y] pairs");
  std::vector<Point> out;
  for (const auto& p : v) {
    if (!p.is_array() || p.size() != 2) fail(key, "expected an array of [x, y] pairs");
    out.push_back({get_real(p[0], key), get_real(p[1], key)});
  }
  return out;
}

void positive(double v, const std::string& key) {
  if (!(v > 0.0)) fail(key, "must be positive");
}

}  // namespace

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double dbm_per_hz_to_watts(double dbm_per_hz, double bandwidth_hz) {
  return std::pow(10.0, (dbm_per_hz - 30.0) / 10.0) * bandwidth_hz;
}

double access_path_loss_db(double distance_m) {
  return 128.1 + 37.6 * std::log10(std::max(distance_m, kMinDistanceM) / 1000.0);
}

double backhaul_path_loss_db(double distance_m) {
  return 148.0 + 40.0 * std::log10(std::max(distance_m, kMinDistanceM) / 1000.0);
}

std::vector<Point> default_ap_positions(std::size_t n_aps, double cell_radius_m) {
  return ring(n_aps, 0.5 * cell_radius_m, 0.0, n_aps > 1);
}

std::vector<Point> default_mec_positions(std::size_t n_mecs, double cell_radius_m) {
  const std::size_t on_ring = n_mecs > 1 ? n_mecs - 1 : 1;
  return ring(n_mecs, 0.2 * cell_radius_m, std::numbers::pi / static_cast<double>(on_ring),
              n_mecs > 1);
}

void validate(const ScenarioConfig& c) {
  if (c.n_uds == 0) fail("n_uds", "must be at least 1");
  if (c.n_aps == 0) fail("n_aps", "must be at least 1");
  if (c.n_mecs == 0) fail("n_mecs", "must be at least 1");
  if (c.rrbs_per_ap == 0) fail("rrbs_per_ap", "must be at least 1");
  positive(c.cell_radius_m, "cell_radius_m");
  positive(c.ap_coverage_m, "ap_coverage_m");
  positive(c.task_size_range_bits.first, "task_size_range_bits");
  if (!(c.task_size_range_bits.second >= c.task_size_range_bits.first)) {
    fail("task_size_range_bits", "upper bound below lower bound");
  }
  positive(c.density, "density");
  positive(c.deadline_s, "deadline_s");
  positive(c.f_mec_cps, "f_mec_cps");
  positive(c.f_loc_max_cps, "f_loc_max_cps");
  positive(c.alpha, "alpha");
  if (!(c.rate_threshold_bps >= 0.0)) fail("rate_threshold_bps", "must be non-negative");
  positive(c.bandwidth_hz, "bandwidth_hz");
  if (!(c.shadowing_std_db >= 0.0)) fail("shadowing_std_db", "must be non-negative");
  if (!(c.w_latency >= 0.0)) fail("w_latency", "must be non-negative");
  if (!(c.w_energy >= 0.0)) fail("w_energy", "must be non-negative");
  if (!(c.w_latency + c.w_energy > 0.0)) fail("w_latency", "weights must not both be zero");
  positive(c.q_idle_ratio, "q_idle_ratio");
  if (c.ap_positions && c.ap_positions->size() != c.n_aps) {
    fail("ap_positions", "needs exactly n_aps entries");
  }
  if (c.mec_positions && c.mec_positions->size() != c.n_mecs) {
    fail("mec_positions", "needs exactly n_mecs entries");
  }
  if (c.max_placement_attempts == 0) fail("max_placement_attempts", "must be at least 1");
}

Config load_config(std::string_view text) {
  Config cfg;
  const bool blank = std::all_of(text.begin(), text.end(),
                                 [](char ch) { return std::isspace(static_cast<unsigned char>(ch)); });
  if (blank) return cfg;
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("", std::string("config parse error: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("", "config document must be a JSON object");

  auto& s = cfg.scenario;
  auto& v = cfg.solver;
  for (const auto& [key, val] : doc.items()) {
    if (key == "n_uds") s.n_uds = get_count(val, key);
    else if (key == "n_aps") s.n_aps = get_count(val, key);
    else if (key == "n_mecs") s.n_mecs = get_count(val, key);
    else if (key == "rrbs_per_ap") s.rrbs_per_ap = get_count(val, key);
    else if (key == "cell_radius_m") s.cell_radius_m = get_real(val, key);
    else if (key == "ap_coverage_m") s.ap_coverage_m = get_real(val, key);
    else if (key == "task_size_range_bits") {
      if (!val.is_array() || val.size() != 2) fail(key, "expected [low, high]");
      s.task_size_range_bits = {get_real(val[0], key), get_real(val[1], key)};
    }
    else if (key == "density") s.density = get_real(val, key);
    else if (key == "deadline_s") s.deadline_s = get_real(val, key);
    else if (key == "f_mec_cps") s.f_mec_cps = get_real(val, key);
    else if (key == "f_loc_max_cps") s.f_loc_max_cps = get_real(val, key);
    else if (key == "alpha") s.alpha = get_real(val, key);
    else if (key == "rate_threshold_bps") s.rate_threshold_bps = get_real(val, key);
    else if (key == "bandwidth_hz") s.bandwidth_hz = get_real(val, key);
    else if (key == "noise_dbm_hz") s.noise_dbm_hz = get_real(val, key);
    else if (key == "p_max_dbm_hz") s.p_max_dbm_hz = get_real(val, key);
    else if (key == "shadowing_std_db") s.shadowing_std_db = get_real(val, key);
    else if (key == "seed") {
      if (!val.is_number_unsigned()) fail(key, "expected an unsigned integer");
      s.seed = val.get<std::uint64_t>();
    }
    else if (key == "w_latency") s.w_latency = get_real(val, key);
    else if (key == "w_energy") s.w_energy = get_real(val, key);
    else if (key == "q_idle_ratio") s.q_idle_ratio = get_real(val, key);
    else if (key == "backhaul_bandwidth_scaling") s.backhaul_bandwidth_scaling = get_bool(val, key);
    else if (key == "ap_positions") s.ap_positions = get_points(val, key);
    else if (key == "mec_positions") s.mec_positions = get_points(val, key);
    else if (key == "redraw_shadowing_per_trial") s.redraw_shadowing_per_trial = get_bool(val, key);
    else if (key == "max_placement_attempts") s.max_placement_attempts = get_count(val, key);
    else if (key == "include_singletons") v.include_singletons = get_bool(val, key);
    else if (key == "strict_cc2") v.strict_cc2 = get_bool(val, key);
    else if (key == "fallback_local") v.fallback_local = get_bool(val, key);
    else if (key == "max_iters") {
      v.max_iters = get_count(val, key);
      if (v.max_iters == 0) fail(key, "must be at least 1");
    }
    else if (key == "mec_task_cap") {
      v.mec_task_cap = get_count(val, key);
      if (v.mec_task_cap == 0) fail(key, "must be at least 1");
    }
    else if (key == "mwis_ordering") {
      const auto str = val.is_string() ? val.get<std::string>() : std::string{};
      if (str == "original") v.mwis_ordering = MwisOrdering::Original;
      else if (str == "modified") v.mwis_ordering = MwisOrdering::Modified;
      else fail(key, "expected \"original\" or \"modified\"");
    }
    else if (key == "power_objective") {
      const auto str = val.is_string() ? val.get<std::string>() : std::string{};
      if (str == "sum_rate") v.power_objective = PowerObjective::SumRate;
      else if (str == "max_min") v.power_objective = PowerObjective::MaxMin;
      else fail(key, "expected \"sum_rate\" or \"max_min\"");
    }
    else fail(key, "unknown key");
  }
  validate(s);
  return cfg;
}

Scenario generate(const ScenarioConfig& config) {
  validate(config);
  Scenario sc;
  sc.seed = config.seed;
  sc.weights = CostWeights{config.w_latency, config.w_energy, config.alpha, config.rate_threshold_bps};

  const double p_max = dbm_per_hz_to_watts(config.p_max_dbm_hz, config.bandwidth_hz);
  const double noise = dbm_per_hz_to_watts(config.noise_dbm_hz, config.bandwidth_hz);

  const auto ap_pos = config.ap_positions ? *config.ap_positions
                                          : default_ap_positions(config.n_aps, config.cell_radius_m);
  const auto mec_pos = config.mec_positions
                           ? *config.mec_positions
                           : default_mec_positions(config.n_mecs, config.cell_radius_m);
  for (std::size_t m = 0; m < config.n_aps; ++m) {
    sc.aps.push_back(AccessPoint{m, ap_pos[m], config.rrbs_per_ap, config.f_loc_max_cps, p_max,
                                 config.q_idle_ratio * p_max, config.ap_coverage_m});
  }
  for (std::size_t k = 0; k < config.n_mecs; ++k) {
    sc.mecs.push_back(MecServer{k, mec_pos[k], config.f_mec_cps});
  }

  auto place = stream(config.seed, kPlacement);
  auto tasks = stream(config.seed, kTasks);
  const auto [lo, hi] = config.task_size_range_bits;
  for (std::size_t n = 0; n < config.n_uds; ++n) {
    UserDevice ud;
    ud.id = n;
    ud.p_max_w = p_max;
    bool covered = false;
    for (std::size_t attempt = 0; attempt < config.max_placement_attempts && !covered; ++attempt) {
      ud.position = sample_hexagon(place, config.cell_radius_m);
      covered = std::any_of(sc.aps.begin(), sc.aps.end(), [&](const AccessPoint& ap) {
        return distance(ap.position, ud.position) <= ap.coverage_radius_m;
      });
    }
    if (!covered) sc.unservable.push_back(n);
    ud.task = Task{lo + uniform01(tasks) * (hi - lo), config.density, config.deadline_s};
    sc.devices.push_back(ud);
  }
  sc.coverage = compute_coverage(sc.devices, sc.aps);

  auto shadow = stream(config.seed, kShadowing);
  Normal normal;
  sc.large_scale_access.resize(config.n_uds * config.n_aps);
  for (std::size_t n = 0; n < config.n_uds; ++n) {
    for (std::size_t m = 0; m < config.n_aps; ++m) {
      const double pl = access_path_loss_db(distance(sc.devices[n].position, sc.aps[m].position));
      sc.large_scale_access[n * config.n_aps + m] =
          db_to_linear(-pl + config.shadowing_std_db * normal(shadow));
    }
  }
  sc.large_scale_backhaul.resize(config.n_aps * config.n_mecs);
  for (std::size_t m = 0; m < config.n_aps; ++m) {
    for (std::size_t k = 0; k < config.n_mecs; ++k) {
      const double pl = backhaul_path_loss_db(distance(sc.aps[m].position, sc.mecs[k].position));
      sc.large_scale_backhaul[m * config.n_mecs + k] =
          db_to_linear(-pl + config.shadowing_std_db * normal(shadow));
    }
  }

  sc.channel = ChannelState(config.n_uds, config.n_aps, config.rrbs_per_ap, config.n_mecs, noise,
                            config.bandwidth_hz,
                            config.backhaul_bandwidth_scaling ? config.bandwidth_hz : 1.0);
  sc.channel = realize_channels(sc, config.seed);
  return sc;
}

ChannelState realize_channels(const Scenario& scenario, std::uint64_t trial_seed,
                              bool redraw_shadowing, double shadowing_std_db) {
  ChannelState ch = scenario.channel;
  const std::size_t n_uds = scenario.n_uds();
  const std::size_t n_aps = scenario.n_aps();
  const std::size_t n_mecs = scenario.n_mecs();
  if (ch.n_uds() != n_uds || ch.n_aps() != n_aps || ch.n_mecs() != n_mecs) {
    throw InvalidTopology("scenario channel does not match its devices");
  }
  if (scenario.large_scale_access.size() != n_uds * n_aps ||
      scenario.large_scale_backhaul.size() != n_aps * n_mecs) {
    throw InvalidTopology("scenario has no large-scale gains");
  }

  auto fading = stream(trial_seed, kFading);
  auto shadow = stream(trial_seed, kShadowing);
  Normal normal;
  Normal shadow_normal;
  auto large_access = [&](std::size_t n, std::size_t m) {
    if (!redraw_shadowing) return scenario.large_scale_access[n * n_aps + m];
    const double pl =
        access_path_loss_db(distance(scenario.devices[n].position, scenario.aps[m].position));
    return db_to_linear(-pl + shadowing_std_db * shadow_normal(shadow));
  };
  auto large_backhaul = [&](std::size_t m, std::size_t k) {
    if (!redraw_shadowing) return scenario.large_scale_backhaul[m * n_mecs + k];
    const double pl =
        backhaul_path_loss_db(distance(scenario.aps[m].position, scenario.mecs[k].position));
    return db_to_linear(-pl + shadowing_std_db * shadow_normal(shadow));
  };
  auto rayleigh_power = [&] {
    const double x = normal(fading);
    const double y = normal(fading);
    return 0.5 * (x * x + y * y);
  };

  for (std::size_t n = 0; n < n_uds; ++n) {
    for (std::size_t m = 0; m < n_aps; ++m) {
      const double ls = large_access(n, m);
      for (std::size_t z = 0; z < ch.n_rrbs(); ++z) ch.set_access_gain(n, m, z, ls * rayleigh_power());
    }
  }
  for (std::size_t m = 0; m < n_aps; ++m) {
    for (std::size_t k = 0; k < n_mecs; ++k) {
      ch.set_backhaul_gain(m, k, large_backhaul(m, k) * rayleigh_power());
    }
  }
  return ch;
}

}  // namespace nomamec
