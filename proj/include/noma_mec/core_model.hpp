#pragma once

// Physical-layer and cost formulas: SINR under SIC, uplink and backhaul
// rates, local and MEC processing delay/energy, and the weighted cost.

#include <cstddef>
#include <span>
#include <vector>

#include "noma_mec/model.hpp"

namespace nomamec {

struct ScheduledUd {
  std::size_t ud = 0;
  double power_w = 0.0;
};

/// All UDs sharing one RRB of one AP, with their transmit powers.
struct RrbSlice {
  std::size_t ap = 0;
  std::size_t rrb = 0;
  std::vector<ScheduledUd> members;
};

/// True when UD `a` is decoded before UD `b` by SIC: descending gain, ties
/// broken by ascending UD id. The earlier UD sees the later one as
/// interference.
inline bool decoded_before(double gain_a, std::size_t id_a, double gain_b, std::size_t id_b) {
  if (gain_a != gain_b) return gain_a > gain_b;
  return id_a < id_b;
}

double sinr(const RrbSlice& slice, std::size_t ud, const ChannelState& channel);

/// B_0 log2(1 + sinr).
double uplink_rate(double sinr_value, const ChannelState& channel);

/// C_k^m = B_bh log2(1 + Q_m |h_{m,k}|^2 / sigma^2).
double backhaul_rate(const AccessPoint& ap, const MecServer& mec, const ChannelState& channel);

struct TaskUpload {
  Task task;
  double rate_bps = 0.0;  // UD->AP upload rate R_n
};

struct Cost {
  double delay_s = 0.0;
  double energy_j = 0.0;
};

/// Largest upload delay B_n / R_n over the group; throws InfeasibleUpload on a
/// non-positive rate.
double max_upload_delay(std::span<const TaskUpload> group);

/// Total CPU cycles sum_n B_n lambda_n of a group.
double group_cycles(std::span<const TaskUpload> group);

Cost local_cost(std::span<const TaskUpload> group, double f_loc_cps, const CostWeights& weights);

Cost mec_cost(std::span<const TaskUpload> group, const AccessPoint& ap, const MecServer& mec,
              const ChannelState& channel);

/// Same as the overload above with a precomputed backhaul rate.
Cost mec_cost(std::span<const TaskUpload> group, const AccessPoint& ap, const MecServer& mec,
              double backhaul_bps);

inline double weighted_cost(double latency_s, double energy_j, const CostWeights& w) {
  return w.w_latency * latency_s + w.w_energy * energy_j;
}

}  // namespace nomamec
