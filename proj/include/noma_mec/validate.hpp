#pragma once

// Constraint checks on scheduler output. Each returns human-readable
// violations; an empty list means the output is valid.

#include <string>
#include <vector>

#include "noma_mec/schedule.hpp"
#include "noma_mec/schedulers.hpp"

namespace nomamec {

/// C2 (a UD at most once), C3 (at most two UDs per RRB slot), coverage,
/// C6 (0 <= P <= P_max) and C7 (rates meet the threshold and agree with the
/// SINR of the slot).
std::vector<std::string> check_schedule(const Scenario& scenario, const Schedule& schedule);

/// C4 (at most K admitted APs, one MEC each, injective, only offload
/// candidates), C5 (f_loc <= f_loc_max) and C9 (a local group gets at least
/// its demand), plus a metrics recomputation.
std::vector<std::string> check_plan(const Scenario& scenario, const Schedule& schedule,
                                    const OffloadPlan& plan);

/// Both of the above plus: the schedule is an independent and maximal set
/// of the run's graph.
std::vector<std::string> check_run(const Scenario& scenario, const SchedulerRun& run);

}  // namespace nomamec
