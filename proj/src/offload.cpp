#include "noma_mec/offload.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "noma_mec/errors.hpp"

namespace nomamec {

double local_demand(std::span<const Task> group) {
  if (group.empty()) return 0.0;
  double cycles = 0.0;
  double deadline = std::numeric_limits<double>::infinity();
  for (const auto& t : group) {
    cycles += t.cycles();
    deadline = std::min(deadline, t.deadline_s);
  }
  return cycles / (static_cast<double>(group.size()) * deadline);
}

LocalAllocation allocate_local(const std::vector<std::vector<Task>>& groups,
                               std::span<const double> f_loc_max) {
  if (groups.size() != f_loc_max.size()) throw InvalidInput("one CPU cap per AP expected");
  LocalAllocation out;
  out.f_loc.assign(groups.size(), 0.0);
  out.offload.assign(groups.size(), 0);
  for (std::size_t m = 0; m < groups.size(); ++m) {
    if (groups[m].empty()) continue;
    const double d = local_demand(groups[m]);
    const double cap = f_loc_max[m];
    if (std::abs(d - cap) <= kDemandTolerance * cap) {
      out.f_loc[m] = cap;
    } else if (d < cap) {
      out.f_loc[m] = d;
    } else {
      out.offload[m] = 1;
    }
  }
  return out;
}

double first_layer_weight(std::span<const TaskUpload> group, double f_loc_cps,
                          const CostWeights& weights) {
  if (group.empty()) return 0.0;
  const Cost c = local_cost(group, f_loc_cps, weights);
  return c.delay_s + c.energy_j;
}

double second_layer_weight(double backhaul_bps, std::span<const Task> group) {
  double bits = 0.0;
  double density = 0.0;
  for (const auto& t : group) {
    bits += t.size_bits;
    density += t.density;
  }
  if (!(bits > 0.0)) throw InvalidInput("second-layer weight undefined for a group without bits");
  return backhaul_bps * (density / static_cast<double>(group.size())) / bits;
}

AdmissionPlan admission_control(const std::vector<std::size_t>& candidates,
                                std::span<const double> g,
                                const std::vector<std::vector<double>>& G, std::size_t n_aps,
                                std::size_t n_mecs) {
  AdmissionPlan plan;
  plan.admitted.assign(n_aps, 0);
  plan.mec.assign(n_aps, std::nullopt);
  std::vector<std::size_t> order = candidates;
  for (auto m : order) {
    if (m >= n_aps || m >= g.size()) throw InvalidInput("admission candidate out of range");
  }
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (g[a] != g[b]) return g[a] > g[b];
    return a < b;
  });
  order.erase(std::unique(order.begin(), order.end()), order.end());

  std::vector<char> taken(n_mecs, 0);
  const std::size_t admit = std::min(n_mecs, order.size());
  for (std::size_t i = 0; i < admit; ++i) {
    const std::size_t m = order[i];
    if (m >= G.size() || G[m].size() != n_mecs) throw InvalidInput("second-layer weight row missing");
    std::size_t best = n_mecs;
    for (std::size_t k = 0; k < n_mecs; ++k) {
      if (!taken[k] && (best == n_mecs || G[m][k] > G[m][best])) best = k;
    }
    taken[best] = 1;
    plan.admitted[m] = 1;
    plan.mec[m] = best;
  }
  return plan;
}

}  // namespace nomamec
