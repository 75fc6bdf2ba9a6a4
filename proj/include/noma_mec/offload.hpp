#pragma once

// Local CPU allocation and MEC admission control.

#include <cstddef>
#include <span>
#include <vector>

#include "noma_mec/core_model.hpp"
#include "noma_mec/schedule.hpp"

namespace nomamec {

/// Relative tolerance of the D_m == f_loc_max test.
inline constexpr double kDemandTolerance = 1e-9;

/// D_m = (sum B*lambda) / (|group| * min deadline); 0 for an empty group.
double local_demand(std::span<const Task> group);

/// Per AP: D_m < f_max gives f = D_m, x = 0; D_m == f_max (relative 1e-9)
/// gives f = f_max, x = 0; D_m > f_max gives x = 1 with f left at 0. Empty
/// groups get f = 0, x = 0. Throws InvalidInput on a length mismatch.
LocalAllocation allocate_local(const std::vector<std::vector<Task>>& groups,
                               std::span<const double> f_loc_max);

/// g = T_loc + E_loc at CPU speed `f_loc_cps`; 0 for an empty group.
double first_layer_weight(std::span<const TaskUpload> group, double f_loc_cps,
                          const CostWeights& weights);

/// G = C * mean(lambda) / sum(B). Throws InvalidInput when sum(B) is 0.
double second_layer_weight(double backhaul_bps, std::span<const Task> group);

/// Candidates sorted by g descending (ties: lower AP id first); the first
/// min(K, |candidates|) each take their argmax-G MEC among those still free
/// (ties: lower MEC id). `G` is indexed [ap][mec].
AdmissionPlan admission_control(const std::vector<std::size_t>& candidates,
                                std::span<const double> g,
                                const std::vector<std::vector<double>>& G, std::size_t n_aps,
                                std::size_t n_mecs);

}  // namespace nomamec
