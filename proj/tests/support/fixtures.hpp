#pragma once

#include <cstddef>
#include <vector>

#include "noma_mec/model.hpp"
#include "noma_mec/scenario.hpp"

namespace fixtures {

// Hand-built scenario: every UD covered by every AP, all tasks identical,
// all access gains `gain`, backhaul gains `bh_gain`.
inline nomamec::Scenario uniform(std::size_t n_uds, std::size_t n_aps, std::size_t n_rrbs,
                                 std::size_t n_mecs, double gain = 1e-10, double bh_gain = 1e-10,
                                 nomamec::Task task = {500.0, 100.0, 0.01}) {
  using namespace nomamec;
  Scenario sc;
  sc.weights = CostWeights{0.5, 0.5, 1e-27, 0.0};
  for (std::size_t m = 0; m < n_aps; ++m) {
    sc.aps.push_back(AccessPoint{m, {0.0, 0.0}, n_rrbs, 5e7, 0.55, 0.055, 1e9});
  }
  for (std::size_t k = 0; k < n_mecs; ++k) sc.mecs.push_back(MecServer{k, {0.0, 0.0}, 3e9});
  for (std::size_t n = 0; n < n_uds; ++n) sc.devices.push_back(UserDevice{n, {0.0, 0.0}, 0.1, task});
  sc.coverage = compute_coverage(sc.devices, sc.aps);
  sc.channel = ChannelState(n_uds, n_aps, n_rrbs, n_mecs, 1e-12, 1e6, 1e6);
  for (std::size_t n = 0; n < n_uds; ++n)
    for (std::size_t m = 0; m < n_aps; ++m)
      for (std::size_t z = 0; z < n_rrbs; ++z) sc.channel.set_access_gain(n, m, z, gain);
  for (std::size_t m = 0; m < n_aps; ++m)
    for (std::size_t k = 0; k < n_mecs; ++k) sc.channel.set_backhaul_gain(m, k, bh_gain);
  sc.large_scale_access.assign(n_uds * n_aps, gain);
  sc.large_scale_backhaul.assign(n_aps * n_mecs, bh_gain);
  return sc;
}

inline nomamec::ScenarioConfig small_config(std::size_t n_uds, std::uint64_t seed) {
  nomamec::ScenarioConfig c;
  c.n_uds = n_uds;
  c.seed = seed;
  return c;
}

}  // namespace fixtures
