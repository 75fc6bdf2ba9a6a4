#pragma once

// Transmit power allocation for a one- or two-UD NOMA cluster on one RRB.

#include <array>
#include <cstddef>
#include <span>

#include "noma_mec/model.hpp"

namespace nomamec {

/// Objective of the cluster power problem.
///  - SumRate: sum of the members' spectral efficiencies under SIC.
///  - MaxMin: the literal "sum over members of the min" reading, i.e. the
///    cluster size times the smallest member spectral efficiency.
enum class PowerObjective { SumRate, MaxMin };

struct PowerConstraints {
  double p_max_w = 0.0;
  double rate_threshold_bps = 0.0;
  PowerObjective objective = PowerObjective::SumRate;
};

/// Rates are accepted as meeting the threshold down to this relative slack.
inline constexpr double kRateThresholdSlack = 1e-9;

struct ClusterPowerSolution {
  std::size_t size = 0;               // members solved for (1 or 2)
  std::array<double, 2> powers{};     // aligned with the member order given
  std::array<double, 2> rates{};      // bits/s
  double objective = 0.0;             // bits/s/Hz
  bool feasible = false;
};

/// One candidate cluster: 1 or 2 distinct UDs on RRB `rrb` of AP `ap`.
struct ClusterRef {
  std::span<const std::size_t> uds;
  std::size_t ap = 0;
  std::size_t rrb = 0;
};

/// Rates and objective for a fixed power pair. Exposed for tests and the
/// grid oracle.
ClusterPowerSolution evaluate_cluster_power(const ClusterRef& cluster, std::array<double, 2> powers,
                                            const ChannelState& channel,
                                            const PowerConstraints& constraints);

/// Maximises the objective over 0 <= P <= P_max subject to every rate meeting
/// the threshold. Candidate points (corners and threshold boundaries) are
/// enumerated, then the best is refined by coordinate descent. Throws
/// InvalidInput on an empty or oversized cluster.
ClusterPowerSolution solve_cluster_power(const ClusterRef& cluster, const ChannelState& channel,
                                         const PowerConstraints& constraints);

/// Exhaustive search over a uniform grid with `resolution` points per axis,
/// corners included. Test oracle for solve_cluster_power.
ClusterPowerSolution grid_oracle(const ClusterRef& cluster, const ChannelState& channel,
                                 const PowerConstraints& constraints, std::size_t resolution);

}  // namespace nomamec
