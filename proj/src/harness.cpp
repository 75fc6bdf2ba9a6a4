#include "noma_mec/harness.hpp"

#include <chrono>
#include <cmath>
#include <tuple>
#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include <json.hpp>
#include <omp.h>

#include "noma_mec/errors.hpp"

namespace nomamec {
namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_double(const std::string& s, const std::string& field) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw ConfigError(field, "'" + s + "' is not a number");
  }
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    out.emplace_back(s.substr(start, pos == std::string_view::npos ? s.npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

}  // namespace

std::string_view sweep_var_name(SweepVar v) {
  switch (v) {
    case SweepVar::NUds: return "n_uds";
    case SweepVar::RrbsPerAp: return "rrbs_per_ap";
    case SweepVar::TaskSizeRange: return "task_size_range_bits";
    case SweepVar::Density: return "density";
  }
  return "unknown";
}

std::pair<SweepVar, std::vector<SweepValue>> parse_sweep(std::string_view text) {
  const auto eq = text.find('=');
  if (eq == std::string_view::npos) throw ConfigError("sweep", "expected <var>=<v1>,<v2>,...");
  const auto name = text.substr(0, eq);
  SweepVar var;
  if (name == "n_uds") var = SweepVar::NUds;
  else if (name == "rrbs_per_ap") var = SweepVar::RrbsPerAp;
  else if (name == "task_size_range_bits") var = SweepVar::TaskSizeRange;
  else if (name == "density") var = SweepVar::Density;
  else throw ConfigError("sweep", "unknown sweep variable '" + std::string(name) + "'");

  std::vector<SweepValue> values;
  for (const auto& tok : split(text.substr(eq + 1), ',')) {
    if (tok.empty()) throw ConfigError("sweep", "empty sweep value");
    SweepValue v;
    if (var == SweepVar::TaskSizeRange) {
      const auto parts = split(tok, ':');
      if (parts.size() != 2) throw ConfigError("sweep", "ranges are written lo:hi");
      v.lo = parse_double(parts[0], "sweep");
      v.hi = parse_double(parts[1], "sweep");
      v.text = num(v.lo) + ":" + num(v.hi);
    } else {
      v.lo = v.hi = parse_double(tok, "sweep");
      if (var != SweepVar::Density) {
        if (v.lo < 1 || v.lo != static_cast<double>(static_cast<std::uint64_t>(v.lo))) {
          throw ConfigError("sweep", "'" + tok + "' is not a positive integer");
        }
        v.text = std::to_string(static_cast<std::uint64_t>(v.lo));
      } else {
        v.text = num(v.lo);
      }
    }
    values.push_back(std::move(v));
  }
  return {var, values};
}

ScenarioConfig apply_sweep(ScenarioConfig base, SweepVar var, const SweepValue& value) {
  switch (var) {
    case SweepVar::NUds: base.n_uds = static_cast<std::size_t>(value.lo); break;
    case SweepVar::RrbsPerAp: base.rrbs_per_ap = static_cast<std::size_t>(value.lo); break;
    case SweepVar::TaskSizeRange: base.task_size_range_bits = {value.lo, value.hi}; break;
    case SweepVar::Density: base.density = value.lo; break;
  }
  return base;
}

std::uint64_t trial_seed(std::uint64_t master, std::size_t value_index, std::size_t trial) {
  std::uint64_t h = splitmix64(master);
  h = splitmix64(h ^ static_cast<std::uint64_t>(value_index));
  return splitmix64(h ^ (static_cast<std::uint64_t>(trial) * 0x9e3779b97f4a7c15ULL));
}

std::vector<ResultRow> run_experiment(const ExperimentSpec& spec) {
  if (spec.values.empty()) throw ConfigError("sweep", "no sweep values");
  if (spec.trials == 0) throw ConfigError("trials", "must be at least 1");
  if (spec.schemes.empty()) throw ConfigError("schemes", "no schemes selected");
  for (const auto& v : spec.values) validate(apply_sweep(spec.base.scenario, spec.sweep_var, v));

  const std::size_t n_s = spec.schemes.size();
  const std::size_t jobs = spec.values.size() * spec.trials;
  std::vector<ResultRow> rows(jobs * n_s);
  const auto base_options = SchedulerOptions::from(spec.base.solver);
  const int threads = spec.workers > 0 ? spec.workers : 0;

#pragma omp parallel for schedule(dynamic, 1) num_threads(threads > 0 ? threads : omp_get_max_threads())
  for (std::int64_t job = 0; job < static_cast<std::int64_t>(jobs); ++job) {
    const std::size_t vi = static_cast<std::size_t>(job) / spec.trials;
    const std::size_t t = static_cast<std::size_t>(job) % spec.trials;
    const auto& value = spec.values[vi];
    const std::uint64_t seed = trial_seed(spec.master_seed, vi, t);
    for (std::size_t s = 0; s < n_s; ++s) {
      auto& row = rows[static_cast<std::size_t>(job) * n_s + s];
      row.scheme = scheme_name(spec.schemes[s]);
      row.sweep_var = sweep_var_name(spec.sweep_var);
      row.sweep_value = value.text;
      row.trial = t;
    }
    try {
      auto cfg = apply_sweep(spec.base.scenario, spec.sweep_var, value);
      cfg.seed = seed;
      Scenario sc = generate(cfg);
      sc.channel = realize_channels(sc, splitmix64(seed + 1), cfg.redraw_shadowing_per_trial,
                                    cfg.shadowing_std_db);
      auto options = base_options;
      options.seed = seed;
      for (std::size_t s = 0; s < n_s; ++s) {
        auto& row = rows[static_cast<std::size_t>(job) * n_s + s];
        try {
          const auto start = std::chrono::steady_clock::now();
          const auto run = run_scheme(spec.schemes[s], sc, options);
          const auto stop = std::chrono::steady_clock::now();
          const auto& m = run.plan.metrics;
          row.latency_s = m.latency_s;
          row.energy_j = m.energy_j;
          row.cost = m.cost;
          row.capacity = m.effective_capacity;
          row.scheduled = m.scheduled_uds;
          row.vertices = run.graph ? run.graph->size() : 0;
          row.wall_time_s = spec.timing ? std::chrono::duration<double>(stop - start).count() : 0.0;
        } catch (const std::exception& e) {
          row.ok = false;
          row.error = e.what();
        }
      }
    } catch (const std::exception& e) {
      for (std::size_t s = 0; s < n_s; ++s) {
        auto& row = rows[static_cast<std::size_t>(job) * n_s + s];
        row.ok = false;
        row.error = e.what();
      }
    }
  }
  return rows;
}

std::vector<SummaryRow> summarize(const std::vector<ResultRow>& rows) {
  std::vector<SummaryRow> out;
  std::map<std::tuple<std::string, std::string, std::string>, std::size_t> index;
  std::vector<std::vector<const ResultRow*>> members;
  for (const auto& r : rows) {
    auto key = std::make_tuple(r.scheme, r.sweep_var, r.sweep_value);
    auto it = index.find(key);
    if (it == index.end()) {
      it = index.emplace(key, out.size()).first;
      SummaryRow s;
      s.scheme = r.scheme;
      s.sweep_var = r.sweep_var;
      s.sweep_value = r.sweep_value;
      out.push_back(s);
      members.emplace_back();
    }
    if (r.ok) {
      members[it->second].push_back(&r);
    } else {
      ++out[it->second].errors;
    }
  }
  for (std::size_t i = 0; i < out.size(); ++i) {
    const auto& group = members[i];
    auto& s = out[i];
    s.count = group.size();
    if (group.empty()) continue;
    auto stat = [&](auto field) {
      double mean = 0.0;
      for (const auto* r : group) mean += field(*r);
      mean /= static_cast<double>(group.size());
      double var = 0.0;
      for (const auto* r : group) var += (field(*r) - mean) * (field(*r) - mean);
      return Stat{mean, std::sqrt(var / static_cast<double>(group.size()))};
    };
    s.latency_s = stat([](const ResultRow& r) { return r.latency_s; });
    s.energy_j = stat([](const ResultRow& r) { return r.energy_j; });
    s.cost = stat([](const ResultRow& r) { return r.cost; });
    s.capacity = stat([](const ResultRow& r) { return static_cast<double>(r.capacity); });
    s.scheduled = stat([](const ResultRow& r) { return static_cast<double>(r.scheduled); });
    s.wall_time_s = stat([](const ResultRow& r) { return r.wall_time_s; });
    s.vertices = stat([](const ResultRow& r) { return static_cast<double>(r.vertices); });
  }
  return out;
}

void write_csv(const std::vector<ResultRow>& rows, std::ostream& out) {
  out << kCsvHeader << '\n';
  for (const auto& r : rows) {
    out << r.scheme << ',' << r.sweep_var << ',' << r.sweep_value << ',' << r.trial << ',';
    if (r.ok) {
      out << num(r.latency_s) << ',' << num(r.energy_j) << ',' << num(r.cost) << ',' << r.capacity
          << ',' << r.scheduled << ',' << num(r.wall_time_s) << ',' << r.vertices;
    } else {
      out << ",,,,,,";
    }
    out << '\n';
  }
}

namespace {

nlohmann::ordered_json row_json(const ResultRow& r) {
  nlohmann::ordered_json j;
  j["scheme"] = r.scheme;
  j["sweep_var"] = r.sweep_var;
  j["sweep_value"] = r.sweep_value;
  j["trial"] = r.trial;
  if (r.ok) {
    j["latency_s"] = r.latency_s;
    j["energy_j"] = r.energy_j;
    j["cost"] = r.cost;
    j["capacity"] = r.capacity;
    j["scheduled"] = r.scheduled;
    j["wall_time_s"] = r.wall_time_s;
    j["vertices"] = r.vertices;
  } else {
    for (const char* k : {"latency_s", "energy_j", "cost", "capacity", "scheduled", "wall_time_s",
                          "vertices"}) {
      j[k] = nullptr;
    }
  }
  return j;
}

}  // namespace

void write_json(const std::vector<ResultRow>& rows, std::ostream& out) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& r : rows) arr.push_back(row_json(r));
  out << arr.dump(2) << '\n';
}

std::vector<ResultRow> read_csv(std::istream& in) {
  std::vector<ResultRow> rows;
  std::string line;
  if (!std::getline(in, line)) return rows;
  if (line != kCsvHeader) throw InvalidInput("unexpected CSV header");
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split(line, ',');
    if (f.size() != 11) throw InvalidInput("CSV row with " + std::to_string(f.size()) + " fields");
    ResultRow r;
    r.scheme = f[0];
    r.sweep_var = f[1];
    r.sweep_value = f[2];
    r.trial = std::stoull(f[3]);
    if (f[4].empty()) {
      r.ok = false;
    } else {
      r.latency_s = std::stod(f[4]);
      r.energy_j = std::stod(f[5]);
      r.cost = std::stod(f[6]);
      r.capacity = std::stoull(f[7]);
      r.scheduled = std::stoull(f[8]);
      r.wall_time_s = std::stod(f[9]);
      r.vertices = std::stoull(f[10]);
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

void write_summary_csv(const std::vector<SummaryRow>& rows, std::ostream& out) {
  out << "scheme,sweep_var,sweep_value,count,errors";
  for (const char* k : {"latency_s", "energy_j", "cost", "capacity", "scheduled", "wall_time_s",
                        "vertices"}) {
    out << ',' << k << "_mean," << k << "_std";
  }
  out << '\n';
  for (const auto& s : rows) {
    out << s.scheme << ',' << s.sweep_var << ',' << s.sweep_value << ',' << s.count << ','
        << s.errors;
    for (const Stat* st : {&s.latency_s, &s.energy_j, &s.cost, &s.capacity, &s.scheduled,
                           &s.wall_time_s, &s.vertices}) {
      out << ',' << num(st->mean) << ',' << num(st->std);
    }
    out << '\n';
  }
}

void write_summary_json(const std::vector<SummaryRow>& rows, std::ostream& out) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& s : rows) {
    nlohmann::ordered_json j;
    j["scheme"] = s.scheme;
    j["sweep_var"] = s.sweep_var;
    j["sweep_value"] = s.sweep_value;
    j["count"] = s.count;
    j["errors"] = s.errors;
    const std::pair<const char*, const Stat*> stats[] = {
        {"latency_s", &s.latency_s}, {"energy_j", &s.energy_j},   {"cost", &s.cost},
        {"capacity", &s.capacity},   {"scheduled", &s.scheduled}, {"wall_time_s", &s.wall_time_s},
        {"vertices", &s.vertices}};
    for (const auto& [k, st] : stats) {
      j[std::string(k) + "_mean"] = st->mean;
      j[std::string(k) + "_std"] = st->std;
    }
    arr.push_back(j);
  }
  out << arr.dump(2) << '\n';
}

namespace {

template <typename Writer>
void write_file(const std::string& path, Writer&& w) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open '" + path + "' for writing");
  w(f);
  f.flush();
  if (!f) throw IoError("write to '" + path + "' failed");
}

}  // namespace

void emit(const std::vector<ResultRow>& rows, const std::string& path, Format format) {
  write_file(path, [&](std::ostream& o) {
    format == Format::Csv ? write_csv(rows, o) : write_json(rows, o);
  });
}

void emit(const std::vector<SummaryRow>& rows, const std::string& path, Format format) {
  write_file(path, [&](std::ostream& o) {
    format == Format::Csv ? write_summary_csv(rows, o) : write_summary_json(rows, o);
  });
}

}  // namespace nomamec
