#pragma once

// A realized schedule (conflict-free set of associations), the per-AP
// processing plan built on top of it, and the resulting system metrics.

#include <cstddef>
#include <optional>
#include <vector>

#include "noma_mec/conflict_graph.hpp"
#include "noma_mec/core_model.hpp"

namespace nomamec {

struct Schedule {
  std::vector<NomaAssociation> associations;  // sorted by association_less

  std::size_t scheduled_uds() const;
};

/// Tasks collected at each AP with their upload rates, in ascending UD order.
std::vector<std::vector<TaskUpload>> collect_groups(const Schedule& schedule,
                                                    const Scenario& scenario);
/// Same grouping, UD ids only.
std::vector<std::vector<std::size_t>> collect_group_ids(const Schedule& schedule,
                                                        std::size_t n_aps);

struct LocalAllocation {
  std::vector<double> f_loc;  // per AP; 0 for an empty group
  std::vector<char> offload;  // x_m
};

struct AdmissionPlan {
  std::vector<char> admitted;                    // y_m per AP
  std::vector<std::optional<std::size_t>> mec;   // assigned MEC per AP

  std::size_t admitted_count() const;
};

/// How an AP's collected group is finally processed.
///  - Idle: nothing collected.
///  - Local: processed at the AP with the allocated speed.
///  - Mec: relayed to the assigned MEC server.
///  - FallbackLocal: offload candidate not admitted, processed at f_loc_max.
///  - Failed: not processed at all; excluded from latency and energy.
enum class GroupMode { Idle, Local, Mec, FallbackLocal, Failed };

struct Metrics {
  double latency_s = 0.0;
  double energy_j = 0.0;
  double cost = 0.0;
  std::size_t effective_capacity = 0;
  std::size_t scheduled_uds = 0;

  friend bool operator==(const Metrics&, const Metrics&) = default;
};

struct OffloadPlan {
  LocalAllocation local;
  AdmissionPlan admission;
  std::vector<GroupMode> mode;  // per AP
  // UDs whose uploaded task the assigned MEC server turned away. They are
  // left out of that group's MEC cost and never count as served.
  std::vector<std::size_t> rejected_uds;
  Metrics metrics;
};

/// Latency is the largest per-group delay, energy the sum over groups, both
/// over groups that are processed. A UD is served when its group's
/// processing meets its deadline:
///  - local or fallback: group cycles / f <= |group| * T_n,
///  - MEC: upload + relay + compute delay <= T_n.
/// Throws InvalidInput when the plan does not cover every AP or a Mec group
/// has no MEC server.
Metrics system_metrics(const Schedule& schedule, const OffloadPlan& plan, const Scenario& scenario);

/// Relative slack applied to every deadline and capacity comparison.
inline constexpr double kDeadlineSlack = 1e-9;

}  // namespace nomamec
