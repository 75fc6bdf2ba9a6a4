#include <algorithm>

#include "noma_mec/errors.hpp"
#include "noma_mec/schedule.hpp"

namespace nomamec {

std::size_t Schedule::scheduled_uds() const {
  std::size_t n = 0;
  for (const auto& a : associations) n += a.size;
  return n;
}

std::size_t AdmissionPlan::admitted_count() const {
  return static_cast<std::size_t>(std::count(admitted.begin(), admitted.end(), 1));
}

std::vector<std::vector<std::size_t>> collect_group_ids(const Schedule& schedule,
                                                        std::size_t n_aps) {
  std::vector<std::vector<std::size_t>> groups(n_aps);
  for (const auto& a : schedule.associations) {
    if (a.ap >= n_aps) throw InvalidAssignment("association on unknown AP");
    for (auto u : a.members()) groups[a.ap].push_back(u);
  }
  for (auto& g : groups) std::sort(g.begin(), g.end());
  return groups;
}

std::vector<std::vector<TaskUpload>> collect_groups(const Schedule& schedule,
                                                    const Scenario& scenario) {
  std::vector<std::vector<std::pair<std::size_t, TaskUpload>>> tmp(scenario.n_aps());
  for (const auto& a : schedule.associations) {
    if (a.ap >= scenario.n_aps()) throw InvalidAssignment("association on unknown AP");
    for (std::size_t i = 0; i < a.size; ++i) {
      const auto ud = a.uds[i];
      tmp[a.ap].push_back({ud, TaskUpload{scenario.devices.at(ud).task, a.power.rates[i]}});
    }
  }
  std::vector<std::vector<TaskUpload>> groups(scenario.n_aps());
  for (std::size_t m = 0; m < tmp.size(); ++m) {
    std::sort(tmp[m].begin(), tmp[m].end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    for (auto& [ud, up] : tmp[m]) groups[m].push_back(up);
  }
  return groups;
}

Metrics system_metrics(const Schedule& schedule, const OffloadPlan& plan, const Scenario& scenario) {
  const std::size_t n_aps = scenario.n_aps();
  if (plan.mode.size() != n_aps || plan.local.f_loc.size() != n_aps ||
      plan.admission.mec.size() != n_aps) {
    throw InvalidInput("offload plan does not cover every AP");
  }
  const auto uploads = collect_groups(schedule, scenario);
  const auto ids = collect_group_ids(schedule, n_aps);

  Metrics out;
  out.scheduled_uds = schedule.scheduled_uds();
  for (std::size_t m = 0; m < n_aps; ++m) {
    const auto& group = uploads[m];
    if (group.empty()) continue;
    const auto mode = plan.mode[m];
    if (mode == GroupMode::Idle || mode == GroupMode::Failed) continue;

    Cost cost;
    if (mode == GroupMode::Local || mode == GroupMode::FallbackLocal) {
      const double f = mode == GroupMode::Local ? plan.local.f_loc[m] : scenario.aps[m].f_loc_max_cps;
      cost = local_cost(group, f, scenario.weights);
      const double busy = group_cycles(group) / f;
      const double n = static_cast<double>(group.size());
      const bool within_cap = f <= scenario.aps[m].f_loc_max_cps * (1.0 + kDeadlineSlack);
      for (const auto& t : group) {
        if (within_cap && busy <= n * t.task.deadline_s * (1.0 + kDeadlineSlack)) {
          ++out.effective_capacity;
        }
      }
    } else {
      const auto& mec_id = plan.admission.mec[m];
      if (!mec_id || *mec_id >= scenario.n_mecs()) {
        throw InvalidInput("offloaded group without a MEC server");
      }
      std::vector<TaskUpload> kept;
      for (std::size_t i = 0; i < group.size(); ++i) {
        if (std::find(plan.rejected_uds.begin(), plan.rejected_uds.end(), ids[m][i]) ==
            plan.rejected_uds.end()) {
          kept.push_back(group[i]);
        }
      }
      if (kept.empty()) continue;
      cost = mec_cost(kept, scenario.aps[m], scenario.mecs[*mec_id], scenario.channel);
      for (const auto& t : kept) {
        if (cost.delay_s <= t.task.deadline_s * (1.0 + kDeadlineSlack)) ++out.effective_capacity;
      }
    }
    out.latency_s = std::max(out.latency_s, cost.delay_s);
    out.energy_j += cost.energy_j;
  }
  out.cost = weighted_cost(out.latency_s, out.energy_j, scenario.weights);
  return out;
}

}  // namespace nomamec
