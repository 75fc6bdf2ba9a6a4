#pragma once

// Straight re-derivation of the system-model formulas on plain arrays, kept
// free of any library type so it can check the library independently.

#include <algorithm>
#include <cmath>
#include <vector>

namespace oracle {

// SINR of member `i` on one RRB: own received power over the received power
// of members with strictly smaller gain plus noise. Equal gains are broken
// by position (lower index decoded first), matching the library.
inline double sinr(const std::vector<double>& power, const std::vector<double>& gain,
                   const std::vector<int>& id, std::size_t i, double noise) {
  double interference = 0.0;
  for (std::size_t j = 0; j < power.size(); ++j) {
    if (j == i) continue;
    const bool weaker = gain[j] < gain[i] || (gain[j] == gain[i] && id[j] > id[i]);
    if (weaker) interference += power[j] * gain[j];
  }
  return power[i] * gain[i] / (interference + noise);
}

inline double rate(double bandwidth, double s) { return bandwidth * std::log(1.0 + s) / std::log(2.0); }

inline double backhaul(double bandwidth, double q, double gain, double noise) {
  return bandwidth * std::log(1.0 + q * gain / noise) / std::log(2.0);
}

struct DelayEnergy {
  double delay;
  double energy;
};

inline DelayEnergy local(const std::vector<double>& bits, const std::vector<double>& density,
                         const std::vector<double>& upload_rate, double f, double alpha) {
  if (bits.empty()) return {0.0, 0.0};
  double up = 0.0;
  double cycles = 0.0;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    up = std::max(up, bits[i] / upload_rate[i]);
    cycles += bits[i] * density[i];
  }
  return {up + cycles / f, alpha * cycles * f * f};
}

inline DelayEnergy mec(const std::vector<double>& bits, const std::vector<double>& density,
                       const std::vector<double>& upload_rate, double c, double f_mec, double q_tx,
                       double q_idle) {
  if (bits.empty()) return {0.0, 0.0};
  double up = 0.0;
  double total_bits = 0.0;
  double cycles = 0.0;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    up = std::max(up, bits[i] / upload_rate[i]);
    total_bits += bits[i];
    cycles += bits[i] * density[i];
  }
  const double relay = total_bits / c;
  const double compute = cycles / f_mec;
  return {up + relay + compute, relay * q_tx + compute * q_idle};
}

// Latency is the worst group delay, energy the sum, cost their weighted sum.
inline DelayEnergy system(const std::vector<DelayEnergy>& groups) {
  DelayEnergy total{0.0, 0.0};
  for (const auto& g : groups) {
    total.delay = std::max(total.delay, g.delay);
    total.energy += g.energy;
  }
  return total;
}

inline double cost(double latency, double energy, double w_l, double w_e) {
  return w_l * latency + w_e * energy;
}

}  // namespace oracle
