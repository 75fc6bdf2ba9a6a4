#include "noma_mec/schedulers.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>

#include "noma_mec/core_model.hpp"
#include "noma_mec/offload.hpp"

namespace nomamec {

std::string_view scheme_name(Scheme s) {
  switch (s) {
    case Scheme::Joint: return "joint";
    case Scheme::Pruning: return "pruning";
    case Scheme::Local: return "local";
    case Scheme::AllOffload: return "all_offload";
    case Scheme::Random: return "random";
  }
  return "unknown";
}

std::optional<Scheme> parse_scheme(std::string_view name) {
  for (auto s : {Scheme::Joint, Scheme::Pruning, Scheme::Local, Scheme::AllOffload, Scheme::Random}) {
    if (scheme_name(s) == name) return s;
  }
  return std::nullopt;
}

SchedulerOptions SchedulerOptions::from(const SolverSettings& s) {
  SchedulerOptions o;
  o.graph.include_singletons = s.include_singletons;
  o.graph.strict_cc2 = s.strict_cc2;
  o.graph.objective = s.power_objective;
  o.ordering = s.mwis_ordering;
  o.fallback_local = s.fallback_local;
  o.max_iters = s.max_iters;
  o.mec_task_cap = s.mec_task_cap;
  return o;
}

namespace {

std::vector<double> cpu_caps(const Scenario& sc) {
  std::vector<double> f(sc.n_aps());
  for (std::size_t m = 0; m < sc.n_aps(); ++m) f[m] = sc.aps[m].f_loc_max_cps;
  return f;
}

Schedule make_schedule(const ConflictGraph& g, const std::vector<std::size_t>& chosen) {
  Schedule s;
  for (auto v : chosen) s.associations.push_back(g.vertex(v));
  std::sort(s.associations.begin(), s.associations.end(), association_less);
  return s;
}

std::vector<std::vector<Task>> task_groups(const Schedule& schedule, const Scenario& sc) {
  const auto ids = collect_group_ids(schedule, sc.n_aps());
  std::vector<std::vector<Task>> out(ids.size());
  for (std::size_t m = 0; m < ids.size(); ++m) {
    for (auto u : ids[m]) out[m].push_back(sc.devices[u].task);
  }
  return out;
}

// Admission-loop inputs for the given candidate APs.
AdmissionPlan greedy_admission(const Scenario& sc, const Schedule& schedule,
                               const std::vector<std::size_t>& candidates) {
  const auto uploads = collect_groups(schedule, sc);
  const auto tasks = task_groups(schedule, sc);
  std::vector<double> g(sc.n_aps(), 0.0);
  std::vector<std::vector<double>> G(sc.n_aps());
  for (auto m : candidates) {
    g[m] = first_layer_weight(uploads[m], sc.aps[m].f_loc_max_cps, sc.weights);
    G[m].resize(sc.n_mecs());
    for (std::size_t k = 0; k < sc.n_mecs(); ++k) {
      G[m][k] = second_layer_weight(backhaul_rate(sc.aps[m], sc.mecs[k], sc.channel), tasks[m]);
    }
  }
  return admission_control(candidates, g, G, sc.n_aps(), sc.n_mecs());
}

void finish(SchedulerRun& run, const Scenario& sc) {
  run.plan.metrics = system_metrics(run.schedule, run.plan, sc);
}

// Modes for a plan whose x flags and admission are settled.
std::vector<GroupMode> settle_modes(const Schedule& schedule, const Scenario& sc,
                                    const LocalAllocation& local, const AdmissionPlan& admission,
                                    bool fallback_local) {
  const auto ids = collect_group_ids(schedule, sc.n_aps());
  std::vector<GroupMode> mode(sc.n_aps(), GroupMode::Idle);
  for (std::size_t m = 0; m < sc.n_aps(); ++m) {
    if (ids[m].empty()) continue;
    if (!local.offload[m]) {
      mode[m] = GroupMode::Local;
    } else if (admission.admitted[m]) {
      mode[m] = GroupMode::Mec;
    } else {
      mode[m] = fallback_local ? GroupMode::FallbackLocal : GroupMode::Failed;
    }
  }
  return mode;
}

std::vector<std::size_t> offload_candidates(const Schedule& schedule, const Scenario& sc,
                                            const LocalAllocation& local) {
  const auto ids = collect_group_ids(schedule, sc.n_aps());
  std::vector<std::size_t> out;
  for (std::size_t m = 0; m < sc.n_aps(); ++m) {
    if (local.offload[m] && !ids[m].empty()) out.push_back(m);
  }
  return out;
}

SchedulerRun iterate(const Scenario& sc, const SchedulerOptions& opt, bool allow_offload) {
  const std::size_t n_aps = sc.n_aps();
  const auto f_max = cpu_caps(sc);
  std::vector<double> f = f_max;
  std::vector<char> x(n_aps, 0);
  std::set<std::array<std::size_t, 4>> locked;

  SchedulerRun run;
  LocalAllocation alloc;
  const std::size_t rounds = std::max<std::size_t>(1, opt.max_iters);
  for (std::size_t it = 1; it <= rounds; ++it) {
    auto graph = std::make_shared<const ConflictGraph>(build_full(sc, f, opt.graph));
    std::vector<char> blocked(graph->size(), 0);
    std::vector<std::size_t> chosen;
    for (std::size_t v = 0; v < graph->size() && !locked.empty(); ++v) {
      if (locked.count(graph->vertex(v).key())) chosen.push_back(v);
    }
    if (chosen.size() != locked.size()) {
      throw std::logic_error("locked association missing from the rebuilt graph");
    }
    for (auto v : chosen) {
      blocked[v] = 1;
      for (auto u : graph->neighbors(v)) blocked[u] = 1;
    }
    const auto is = greedy_min_wis(*graph, opt.ordering, &blocked);
    chosen.insert(chosen.end(), is.vertices.begin(), is.vertices.end());
    std::sort(chosen.begin(), chosen.end());

    run.schedule = make_schedule(*graph, chosen);
    run.graph = graph;
    run.chosen = chosen;
    run.iterations = it;

    const auto groups = task_groups(run.schedule, sc);
    alloc = allocate_local(groups, f_max);
    std::vector<char> next_x(n_aps, 0);
    std::vector<double> next_f(n_aps);
    for (std::size_t m = 0; m < n_aps; ++m) {
      next_x[m] = allow_offload && (x[m] || alloc.offload[m]);
      const bool at_cap = groups[m].empty() || alloc.offload[m] || next_x[m];
      next_f[m] = at_cap ? f_max[m] : alloc.f_loc[m];
    }
    locked.clear();
    for (const auto& a : run.schedule.associations) {
      if (next_x[a.ap]) locked.insert(a.key());
    }
    const bool stable = next_f == f && next_x == x;
    f = std::move(next_f);
    x = std::move(next_x);
    run.converged = stable;
    if (stable) break;
  }

  auto& plan = run.plan;
  plan.local = alloc;
  if (allow_offload) {
    for (std::size_t m = 0; m < n_aps; ++m) {
      if (x[m]) {
        plan.local.offload[m] = 1;
        plan.local.f_loc[m] = 0.0;
      }
    }
    plan.admission = greedy_admission(sc, run.schedule, offload_candidates(run.schedule, sc, plan.local));
    plan.mode = settle_modes(run.schedule, sc, plan.local, plan.admission, opt.fallback_local);
  } else {
    plan.admission.admitted.assign(n_aps, 0);
    plan.admission.mec.assign(n_aps, std::nullopt);
    plan.mode = settle_modes(run.schedule, sc, plan.local, plan.admission, false);
  }
  finish(run, sc);
  return run;
}

}  // namespace

SchedulerRun run_joint(const Scenario& scenario, const SchedulerOptions& options) {
  return iterate(scenario, options, true);
}

SchedulerRun run_local(const Scenario& scenario, const SchedulerOptions& options) {
  return iterate(scenario, options, false);
}

SchedulerRun run_pruning(const Scenario& scenario, const SchedulerOptions& options) {
  SchedulerRun run;
  auto graph = std::make_shared<const ConflictGraph>(build_pruned(scenario, options.graph));
  run.chosen = greedy_min_wis(*graph, options.ordering).vertices;
  run.schedule = make_schedule(*graph, run.chosen);
  run.graph = graph;
  auto& plan = run.plan;
  plan.local = allocate_local(task_groups(run.schedule, scenario), cpu_caps(scenario));
  plan.admission =
      greedy_admission(scenario, run.schedule, offload_candidates(run.schedule, scenario, plan.local));
  plan.mode = settle_modes(run.schedule, scenario, plan.local, plan.admission, options.fallback_local);
  finish(run, scenario);
  return run;
}

SchedulerRun run_all_offload(const Scenario& scenario, const SchedulerOptions& options) {
  SchedulerRun run;
  const auto f_max = cpu_caps(scenario);
  auto graph = std::make_shared<const ConflictGraph>(build_full(scenario, f_max, options.graph));
  run.chosen = greedy_min_wis(*graph, options.ordering).vertices;
  run.schedule = make_schedule(*graph, run.chosen);
  run.graph = graph;

  const auto ids = collect_group_ids(run.schedule, scenario.n_aps());
  auto& plan = run.plan;
  plan.local.f_loc.assign(scenario.n_aps(), 0.0);
  plan.local.offload.assign(scenario.n_aps(), 0);
  for (std::size_t m = 0; m < scenario.n_aps(); ++m) plan.local.offload[m] = !ids[m].empty();
  plan.admission =
      greedy_admission(scenario, run.schedule, offload_candidates(run.schedule, scenario, plan.local));
  plan.mode = settle_modes(run.schedule, scenario, plan.local, plan.admission, false);

  // Each MEC server takes the tasks that reach it first.
  std::vector<std::pair<double, std::size_t>> arrival;
  for (std::size_t m = 0; m < scenario.n_aps(); ++m) {
    if (plan.mode[m] != GroupMode::Mec) continue;
    arrival.clear();
    for (const auto& a : run.schedule.associations) {
      if (a.ap != m) continue;
      for (std::size_t i = 0; i < a.size; ++i) {
        arrival.emplace_back(scenario.devices[a.uds[i]].task.size_bits / a.power.rates[i], a.uds[i]);
      }
    }
    std::sort(arrival.begin(), arrival.end());
    for (std::size_t i = options.mec_task_cap; i < arrival.size(); ++i) {
      plan.rejected_uds.push_back(arrival[i].second);
    }
  }
  std::sort(plan.rejected_uds.begin(), plan.rejected_uds.end());
  finish(run, scenario);
  return run;
}

SchedulerRun run_random(const Scenario& scenario, const SchedulerOptions& options) {
  SchedulerRun run;
  const auto f_max = cpu_caps(scenario);
  auto graph = std::make_shared<const ConflictGraph>(build_full(scenario, f_max, options.graph));
  run.chosen = random_maximal_is(*graph, options.seed).vertices;
  run.schedule = make_schedule(*graph, run.chosen);
  run.graph = graph;

  auto& plan = run.plan;
  plan.local = allocate_local(task_groups(run.schedule, scenario), f_max);
  auto candidates = offload_candidates(run.schedule, scenario, plan.local);
  std::vector<std::size_t> mecs(scenario.n_mecs());
  std::iota(mecs.begin(), mecs.end(), std::size_t{0});
  std::mt19937_64 rng(splitmix64(options.seed ^ 0x6a09e667f3bcc909ULL));
  auto shuffle = [&rng](std::vector<std::size_t>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[rng() % i]);
  };
  shuffle(candidates);
  shuffle(mecs);
  plan.admission.admitted.assign(scenario.n_aps(), 0);
  plan.admission.mec.assign(scenario.n_aps(), std::nullopt);
  const std::size_t admit = std::min(candidates.size(), mecs.size());
  for (std::size_t i = 0; i < admit; ++i) {
    plan.admission.admitted[candidates[i]] = 1;
    plan.admission.mec[candidates[i]] = mecs[i];
  }
  plan.mode = settle_modes(run.schedule, scenario, plan.local, plan.admission, options.fallback_local);
  finish(run, scenario);
  return run;
}

SchedulerRun run_scheme(Scheme scheme, const Scenario& scenario, const SchedulerOptions& options) {
  switch (scheme) {
    case Scheme::Joint: return run_joint(scenario, options);
    case Scheme::Pruning: return run_pruning(scenario, options);
    case Scheme::Local: return run_local(scenario, options);
    case Scheme::AllOffload: return run_all_offload(scenario, options);
    case Scheme::Random: return run_random(scenario, options);
  }
  throw std::invalid_argument("unknown scheme");
}

}  // namespace nomamec
