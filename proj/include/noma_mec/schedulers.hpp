#pragma once

// End-to-end strategies: the iterative joint scheme, the pruned-graph scheme
// and the local / all-offload / random baselines.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "noma_mec/conflict_graph.hpp"
#include "noma_mec/mwis.hpp"
#include "noma_mec/scenario.hpp"
#include "noma_mec/schedule.hpp"

namespace nomamec {

enum class Scheme { Joint, Pruning, Local, AllOffload, Random };

std::string_view scheme_name(Scheme s);
std::optional<Scheme> parse_scheme(std::string_view name);

struct SchedulerOptions {
  GraphOptions graph;
  MwisOrdering ordering = MwisOrdering::Original;
  // Offload candidates that are not admitted run locally at f_loc_max
  // (true) or fail outright (false).
  bool fallback_local = true;
  std::size_t max_iters = 5;
  std::size_t mec_task_cap = 2;  // all-offload: tasks one MEC server accepts
  std::uint64_t seed = 0;        // random baseline

  static SchedulerOptions from(const SolverSettings& s);
};

struct SchedulerRun {
  Schedule schedule;
  OffloadPlan plan;
  std::shared_ptr<const ConflictGraph> graph;  // graph the schedule was drawn from
  std::vector<std::size_t> chosen;             // schedule as vertex indices of `graph`
  std::size_t iterations = 1;
  bool converged = true;
};

/// Iterates graph build -> greedy search -> local allocation, starting from
/// f_loc_max. APs flagged for offloading keep their flag and their clusters
/// for the rest of the run. Stops when the CPU speeds and flags repeat, or
/// after max_iters rounds; then runs admission control.
SchedulerRun run_joint(const Scenario& scenario, const SchedulerOptions& options = {});

SchedulerRun run_pruning(const Scenario& scenario, const SchedulerOptions& options = {});

/// Joint scheduling with offloading disabled; groups the AP cannot finish
/// in time fail.
SchedulerRun run_local(const Scenario& scenario, const SchedulerOptions& options = {});

/// One greedy pass at f_loc_max; every nonempty AP is an offload candidate
/// and only admitted APs are served, each MEC taking at most mec_task_cap
/// tasks (smallest upload time first).
SchedulerRun run_all_offload(const Scenario& scenario, const SchedulerOptions& options = {});

/// Random maximal independent set, local allocation, then a random subset
/// of the offload candidates admitted to randomly chosen MEC servers.
SchedulerRun run_random(const Scenario& scenario, const SchedulerOptions& options = {});

SchedulerRun run_scheme(Scheme scheme, const Scenario& scenario,
                        const SchedulerOptions& options = {});

}  // namespace nomamec
