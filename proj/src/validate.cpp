#include "noma_mec/validate.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "noma_mec/core_model.hpp"
#include "noma_mec/mwis.hpp"
#include "noma_mec/offload.hpp"

namespace nomamec {
namespace {

template <typename... Args>
std::string str(const Args&... parts) {
  std::ostringstream os;
  (os << ... << parts);
  return os.str();
}

bool close(double a, double b, double rel) {
  return std::abs(a - b) <= rel * std::max({std::abs(a), std::abs(b), 1e-300});
}

}  // namespace

std::vector<std::string> check_schedule(const Scenario& sc, const Schedule& schedule) {
  std::vector<std::string> out;
  std::vector<int> seen(sc.n_uds(), 0);
  std::map<std::pair<std::size_t, std::size_t>, int> slot_uds;
  for (const auto& a : schedule.associations) {
    if (a.ap >= sc.n_aps() || a.rrb >= sc.aps[a.ap].num_rrbs) {
      out.push_back(str("association on unknown AP ", a.ap, " / RRB ", a.rrb));
      continue;
    }
    if (a.size < 1 || a.size > 2 || (a.size == 2 && a.uds[0] == a.uds[1])) {
      out.push_back(str("malformed association on AP ", a.ap));
      continue;
    }
    slot_uds[{a.ap, a.rrb}] += static_cast<int>(a.size);
    RrbSlice slice{a.ap, a.rrb, {}};
    for (std::size_t i = 0; i < a.size; ++i) slice.members.push_back({a.uds[i], a.power.powers[i]});
    for (std::size_t i = 0; i < a.size; ++i) {
      const auto u = a.uds[i];
      if (u >= sc.n_uds()) {
        out.push_back(str("unknown UD ", u));
        continue;
      }
      if (++seen[u] > 1) out.push_back(str("C2: UD ", u, " scheduled more than once"));
      if (!sc.covers(a.ap, u)) out.push_back(str("UD ", u, " outside the coverage of AP ", a.ap));
      const double p = a.power.powers[i];
      if (!(p >= 0.0) || p > sc.devices[u].p_max_w) {
        out.push_back(str("C6: UD ", u, " power ", p, " outside [0, P_max]"));
      }
      const double rate = a.power.rates[i];
      if (rate < sc.weights.rate_threshold_bps * (1.0 - kRateThresholdSlack)) {
        out.push_back(str("C7: UD ", u, " rate ", rate, " below threshold"));
      }
      const double expect = uplink_rate(sinr(slice, u, sc.channel), sc.channel);
      if (!close(rate, expect, 1e-9)) {
        out.push_back(str("UD ", u, " rate ", rate, " does not match its SINR (", expect, ")"));
      }
    }
  }
  for (const auto& [slot, count] : slot_uds) {
    if (count > 2) {
      out.push_back(str("C3: ", count, " UDs on RRB ", slot.second, " of AP ", slot.first));
    }
  }
  return out;
}

std::vector<std::string> check_plan(const Scenario& sc, const Schedule& schedule,
                                    const OffloadPlan& plan) {
  std::vector<std::string> out;
  const std::size_t n_aps = sc.n_aps();
  if (plan.mode.size() != n_aps || plan.local.f_loc.size() != n_aps ||
      plan.local.offload.size() != n_aps || plan.admission.admitted.size() != n_aps ||
      plan.admission.mec.size() != n_aps) {
    out.push_back("plan does not cover every AP");
    return out;
  }
  if (plan.admission.admitted_count() > sc.n_mecs()) out.push_back("C4: more admitted APs than MECs");
  std::vector<int> mec_use(sc.n_mecs(), 0);
  const auto ids = collect_group_ids(schedule, n_aps);
  for (std::size_t m = 0; m < n_aps; ++m) {
    const bool y = plan.admission.admitted[m];
    const auto& k = plan.admission.mec[m];
    if (y != k.has_value()) out.push_back(str("C4: AP ", m, " admission flag and MEC disagree"));
    if (k) {
      if (*k >= sc.n_mecs()) {
        out.push_back(str("C4: AP ", m, " assigned to unknown MEC ", *k));
      } else if (++mec_use[*k] > 1) {
        out.push_back(str("C4: MEC ", *k, " serves more than one AP"));
      }
    }
    if (y && !plan.local.offload[m]) out.push_back(str("AP ", m, " admitted without x_m = 1"));
    const auto mode = plan.mode[m];
    if (ids[m].empty() != (mode == GroupMode::Idle)) {
      out.push_back(str("AP ", m, " mode does not match its group"));
    }
    if ((mode == GroupMode::Mec) != (y && !ids[m].empty())) {
      out.push_back(str("AP ", m, " MEC mode does not match admission"));
    }
    if (mode == GroupMode::Local) {
      std::vector<Task> tasks;
      for (auto u : ids[m]) tasks.push_back(sc.devices[u].task);
      const double f = plan.local.f_loc[m];
      const double cap = sc.aps[m].f_loc_max_cps;
      if (f > cap * (1.0 + kDemandTolerance)) out.push_back(str("C5: AP ", m, " f_loc above cap"));
      if (f < local_demand(tasks) * (1.0 - kDemandTolerance)) {
        out.push_back(str("C9: AP ", m, " f_loc below its demand"));
      }
      if (plan.local.offload[m]) out.push_back(str("AP ", m, " processes locally with x_m = 1"));
    }
  }
  const Metrics again = system_metrics(schedule, plan, sc);
  if (!(again == plan.metrics)) out.push_back("stored metrics differ from a recomputation");
  if (plan.metrics.effective_capacity > plan.metrics.scheduled_uds) {
    out.push_back("effective capacity exceeds scheduled UDs");
  }
  return out;
}

std::vector<std::string> check_run(const Scenario& sc, const SchedulerRun& run) {
  auto out = check_schedule(sc, run.schedule);
  auto more = check_plan(sc, run.schedule, run.plan);
  out.insert(out.end(), more.begin(), more.end());
  if (!run.graph) {
    out.push_back("run carries no graph");
    return out;
  }
  if (!is_independent(*run.graph, run.chosen)) out.push_back("schedule is not an independent set");
  if (!is_maximal(*run.graph, run.chosen)) out.push_back("schedule is not a maximal independent set");
  if (run.chosen.size() != run.schedule.associations.size()) {
    out.push_back("schedule and chosen vertices disagree");
  }
  return out;
}

}  // namespace nomamec
