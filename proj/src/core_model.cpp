#include "noma_mec/core_model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "noma_mec/errors.hpp"

namespace nomamec {

ChannelState::ChannelState(std::size_t n_uds, std::size_t n_aps, std::size_t n_rrbs,
                           std::size_t n_mecs, double noise, double rrb_bandwidth,
                           double backhaul_bandwidth)
    : noise_w(noise),
      rrb_bandwidth_hz(rrb_bandwidth),
      backhaul_bandwidth_hz(backhaul_bandwidth),
      n_uds_(n_uds),
      n_aps_(n_aps),
      n_rrbs_(n_rrbs),
      n_mecs_(n_mecs),
      access_(n_uds * n_aps * n_rrbs, 0.0),
      backhaul_(n_aps * n_mecs, 0.0) {}

double ChannelState::access_gain(std::size_t ud, std::size_t ap, std::size_t rrb) const {
  if (!has_access_link(ud, ap, rrb)) {
    throw InvalidTopology("no access link for UD " + std::to_string(ud) + " on AP " +
                          std::to_string(ap) + " RRB " + std::to_string(rrb));
  }
  return access_[access_index(ud, ap, rrb)];
}

void ChannelState::set_access_gain(std::size_t ud, std::size_t ap, std::size_t rrb, double gain) {
  if (!has_access_link(ud, ap, rrb)) throw InvalidTopology("access link out of range");
  access_[access_index(ud, ap, rrb)] = gain;
}

double ChannelState::backhaul_gain(std::size_t ap, std::size_t mec) const {
  if (!has_backhaul(ap, mec)) {
    throw InvalidTopology("no backhaul link for AP " + std::to_string(ap) + " to MEC " +
                          std::to_string(mec));
  }
  return backhaul_[ap * n_mecs_ + mec];
}

void ChannelState::set_backhaul_gain(std::size_t ap, std::size_t mec, double gain) {
  if (!has_backhaul(ap, mec)) throw InvalidTopology("backhaul link out of range");
  backhaul_[ap * n_mecs_ + mec] = gain;
}

bool Scenario::covers(std::size_t ap, std::size_t ud) const {
  if (ap >= coverage.size()) return false;
  const auto& set = coverage[ap];
  return std::binary_search(set.begin(), set.end(), ud);
}

std::vector<std::vector<std::size_t>> compute_coverage(const std::vector<UserDevice>& devices,
                                                       const std::vector<AccessPoint>& aps) {
  std::vector<std::vector<std::size_t>> coverage(aps.size());
  for (std::size_t m = 0; m < aps.size(); ++m) {
    for (std::size_t n = 0; n < devices.size(); ++n) {
      if (distance(aps[m].position, devices[n].position) <= aps[m].coverage_radius_m) {
        coverage[m].push_back(n);
      }
    }
  }
  return coverage;
}

double sinr(const RrbSlice& slice, std::size_t ud, const ChannelState& channel) {
  if (slice.ap >= channel.n_aps() || slice.rrb >= channel.n_rrbs()) {
    throw InvalidAssignment("RRB " + std::to_string(slice.rrb) + " of AP " +
                            std::to_string(slice.ap) + " does not exist");
  }
  const auto self = std::find_if(slice.members.begin(), slice.members.end(),
                                 [ud](const ScheduledUd& m) { return m.ud == ud; });
  if (self == slice.members.end()) {
    throw InvalidAssignment("UD " + std::to_string(ud) + " is not assigned to RRB " +
                            std::to_string(slice.rrb) + " of AP " + std::to_string(slice.ap));
  }
  if (ud >= channel.n_uds()) throw InvalidAssignment("unknown UD " + std::to_string(ud));

  const double own_gain = channel.access_gain(ud, slice.ap, slice.rrb);
  double interference = 0.0;
  for (const auto& other : slice.members) {
    if (other.ud == ud) continue;
    if (other.ud >= channel.n_uds()) throw InvalidAssignment("unknown UD " + std::to_string(other.ud));
    const double g = channel.access_gain(other.ud, slice.ap, slice.rrb);
    // Only UDs decoded after us (weaker) remain as interference.
    if (decoded_before(own_gain, ud, g, other.ud)) interference += other.power_w * g;
  }
  return self->power_w * own_gain / (interference + channel.noise_w);
}

double uplink_rate(double sinr_value, const ChannelState& channel) {
  return channel.rrb_bandwidth_hz * std::log2(1.0 + sinr_value);
}

double backhaul_rate(const AccessPoint& ap, const MecServer& mec, const ChannelState& channel) {
  const double snr = ap.q_tx_w * channel.backhaul_gain(ap.id, mec.id) / channel.noise_w;
  return channel.backhaul_bandwidth_hz * std::log2(1.0 + snr);
}

double max_upload_delay(std::span<const TaskUpload> group) {
  double worst = 0.0;
  for (const auto& t : group) {
    if (!(t.rate_bps > 0.0)) throw InfeasibleUpload("task with zero upload rate");
    worst = std::max(worst, t.task.size_bits / t.rate_bps);
  }
  return worst;
}

double group_cycles(std::span<const TaskUpload> group) {
  double cycles = 0.0;
  for (const auto& t : group) cycles += t.task.cycles();
  return cycles;
}

Cost local_cost(std::span<const TaskUpload> group, double f_loc_cps, const CostWeights& weights) {
  if (group.empty()) return {};
  if (!(f_loc_cps > 0.0)) throw InvalidInput("local CPU speed must be positive");
  const double upload = max_upload_delay(group);
  const double cycles = group_cycles(group);
  return {upload + cycles / f_loc_cps, weights.alpha_cpu * cycles * f_loc_cps * f_loc_cps};
}

Cost mec_cost(std::span<const TaskUpload> group, const AccessPoint& ap, const MecServer& mec,
              const ChannelState& channel) {
  if (group.empty()) return {};
  return mec_cost(group, ap, mec, backhaul_rate(ap, mec, channel));
}

Cost mec_cost(std::span<const TaskUpload> group, const AccessPoint& ap, const MecServer& mec,
              double backhaul_bps) {
  if (group.empty()) return {};
  if (!(backhaul_bps > 0.0)) {
    throw InvalidTopology("AP " + std::to_string(ap.id) + " has no usable backhaul to MEC " +
                          std::to_string(mec.id));
  }
  if (!(mec.f_mec_cps > 0.0)) throw InvalidInput("MEC CPU speed must be positive");
  const double upload = max_upload_delay(group);
  double bits = 0.0;
  for (const auto& t : group) bits += t.task.size_bits;
  const double relay = bits / backhaul_bps;
  const double compute = group_cycles(group) / mec.f_mec_cps;
  return {upload + relay + compute, relay * ap.q_tx_w + compute * ap.q_idle_w};
}

}  // namespace nomamec
