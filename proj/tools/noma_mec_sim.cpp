// Command-line driver: Monte Carlo sweeps, summaries and graph dumps.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "noma_mec/conflict_graph.hpp"
#include "noma_mec/errors.hpp"
#include "noma_mec/harness.hpp"
#include "noma_mec/scenario.hpp"
#include "noma_mec/schedulers.hpp"

namespace {

using namespace nomamec;

constexpr int kConfigError = 1;
constexpr int kIoError = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Config load_config_file(const std::string& path) {
  return path.empty() ? Config{} : load_config(read_file(path));
}

Format parse_format(const std::string& f) {
  if (f == "csv") return Format::Csv;
  if (f == "json") return Format::Json;
  throw ConfigError("format", "expected csv or json");
}

bool parse_on_off(const std::string& v, const std::string& flag) {
  if (v == "on") return true;
  if (v == "off") return false;
  throw ConfigError(flag, "expected on or off");
}

std::vector<Scheme> parse_schemes(const std::string& list) {
  std::vector<Scheme> out;
  std::stringstream ss(list);
  std::string name;
  while (std::getline(ss, name, ',')) {
    auto s = parse_scheme(name);
    if (!s) throw ConfigError("schemes", "unknown scheme '" + name + "'");
    out.push_back(*s);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"NOMA multi-hop MEC offloading simulator"};
  app.require_subcommand(1);

  std::string config_path, sweep, schemes = "joint,pruning,local,all_offload,random", out_path,
                               format = "csv", ordering, fallback, timing = "off";
  std::size_t trials = 1;
  std::uint64_t seed = 1;
  int workers = 0;
  bool strict_cc2 = false;

  auto* sim = app.add_subcommand("simulate", "run a parameter sweep");
  sim->add_option("--config", config_path, "JSON configuration file");
  sim->add_option("--sweep", sweep, "<var>=<v1>,<v2>,... (n_uds, rrbs_per_ap, task_size_range_bits lo:hi, density)")
      ->required();
  sim->add_option("--schemes", schemes, "comma-separated: joint,pruning,local,all_offload,random");
  sim->add_option("--trials", trials, "trials per sweep value")->check(CLI::PositiveNumber);
  sim->add_option("--seed", seed, "master seed");
  sim->add_option("--out", out_path, "output file")->required();
  sim->add_option("--format", format, "csv or json");
  sim->add_option("--workers", workers, "worker threads (0: all cores)")->check(CLI::NonNegativeNumber);
  sim->add_flag("--strict-cc2", strict_cc2, "RRB index conflicts across APs");
  sim->add_option("--mwis-ordering", ordering, "original or modified");
  sim->add_option("--fallback-local", fallback, "on or off");
  sim->add_option("--timing", timing, "record wall time per run: on or off");

  std::string in_path, sum_out, sum_format = "csv";
  auto* sum = app.add_subcommand("summarize", "aggregate a result CSV");
  sum->add_option("--in", in_path, "result CSV")->required();
  sum->add_option("--out", sum_out, "output file")->required();
  sum->add_option("--format", sum_format, "csv or json");

  std::string dump_config, kind = "full", dump_out;
  std::uint64_t dump_seed = 1;
  auto* dump = app.add_subcommand("dump-graph", "write the conflict graph of one instance");
  dump->add_option("--config", dump_config, "JSON configuration file");
  dump->add_option("--kind", kind, "full or pruned");
  dump->add_option("--seed", dump_seed, "scenario seed");
  dump->add_option("--out", dump_out, "output file (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfigError;
  }

  try {
    if (*sim) {
      ExperimentSpec spec;
      spec.base = load_config_file(config_path);
      if (strict_cc2) spec.base.solver.strict_cc2 = true;
      if (!ordering.empty()) {
        if (ordering == "original") spec.base.solver.mwis_ordering = MwisOrdering::Original;
        else if (ordering == "modified") spec.base.solver.mwis_ordering = MwisOrdering::Modified;
        else throw ConfigError("mwis-ordering", "expected original or modified");
      }
      if (!fallback.empty()) spec.base.solver.fallback_local = parse_on_off(fallback, "fallback-local");
      spec.timing = parse_on_off(timing, "timing");
      auto [var, values] = parse_sweep(sweep);
      spec.sweep_var = var;
      spec.values = std::move(values);
      spec.schemes = parse_schemes(schemes);
      spec.trials = trials;
      spec.master_seed = seed;
      spec.workers = workers;
      const auto fmt = parse_format(format);
      const auto rows = run_experiment(spec);
      for (const auto& r : rows) {
        if (!r.ok) {
          std::cerr << "trial " << r.trial << " " << r.scheme << " at " << r.sweep_var << "="
                    << r.sweep_value << " failed: " << r.error << '\n';
        }
      }
      emit(rows, out_path, fmt);
    } else if (*sum) {
      const auto fmt = parse_format(sum_format);
      std::ifstream in(in_path, std::ios::binary);
      if (!in) throw IoError("cannot read '" + in_path + "'");
      std::vector<ResultRow> rows;
      try {
        rows = read_csv(in);
      } catch (const std::exception& e) {
        throw IoError("'" + in_path + "': " + e.what());
      }
      emit(summarize(rows), sum_out, fmt);
    } else if (*dump) {
      auto cfg = load_config_file(dump_config);
      cfg.scenario.seed = dump_seed;
      const Scenario sc = generate(cfg.scenario);
      const auto options = SchedulerOptions::from(cfg.solver);
      ConflictGraph g;
      if (kind == "full") {
        std::vector<double> f;
        for (const auto& ap : sc.aps) f.push_back(ap.f_loc_max_cps);
        g = build_full(sc, f, options.graph);
      } else if (kind == "pruned") {
        g = build_pruned(sc, options.graph);
      } else {
        throw ConfigError("kind", "expected full or pruned");
      }
      if (dump_out.empty()) {
        write_graph_dump(g, std::cout);
      } else {
        std::ofstream out(dump_out, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open '" + dump_out + "' for writing");
        write_graph_dump(g, out);
        if (!out) throw IoError("write to '" + dump_out + "' failed");
      }
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const IoError& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return kIoError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfigError;
  }
  return 0;
}
