#pragma once

// Domain types of the NOMA multi-hop MEC system: devices, access points,
// MEC servers, channel gains and the immutable problem instance.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace nomamec {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

inline double distance(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

struct Task {
  double size_bits = 0.0;   // B_n
  double density = 0.0;     // lambda_n, CPU cycles per bit
  double deadline_s = 0.0;  // T_max^n

  double cycles() const { return size_bits * density; }
};

struct UserDevice {
  std::size_t id = 0;
  Point position;
  double p_max_w = 0.0;
  Task task;
};

struct AccessPoint {
  std::size_t id = 0;
  Point position;
  std::size_t num_rrbs = 1;
  double f_loc_max_cps = 0.0;
  double q_tx_w = 0.0;    // Q_m, AP->MEC transmit power
  double q_idle_w = 0.0;  // idle power while the MEC server computes
  double coverage_radius_m = 0.0;
};

struct MecServer {
  std::size_t id = 0;
  Point position;
  double f_mec_cps = 0.0;
};

/// Linear power gains for every UD->(AP, RRB) and AP->MEC link plus the
/// noise floor and bandwidths shared by all links.
class ChannelState {
 public:
  ChannelState() = default;
  ChannelState(std::size_t n_uds, std::size_t n_aps, std::size_t n_rrbs, std::size_t n_mecs,
               double noise_w, double rrb_bandwidth_hz, double backhaul_bandwidth_hz);

  std::size_t n_uds() const { return n_uds_; }
  std::size_t n_aps() const { return n_aps_; }
  std::size_t n_rrbs() const { return n_rrbs_; }
  std::size_t n_mecs() const { return n_mecs_; }

  bool has_access_link(std::size_t ud, std::size_t ap, std::size_t rrb) const {
    return ud < n_uds_ && ap < n_aps_ && rrb < n_rrbs_;
  }
  bool has_backhaul(std::size_t ap, std::size_t mec) const { return ap < n_aps_ && mec < n_mecs_; }

  /// |h^n_{m,z}|^2; throws InvalidTopology for an unknown link.
  double access_gain(std::size_t ud, std::size_t ap, std::size_t rrb) const;
  void set_access_gain(std::size_t ud, std::size_t ap, std::size_t rrb, double gain);

  /// |h_{m,k}|^2; throws InvalidTopology for an unknown link.
  double backhaul_gain(std::size_t ap, std::size_t mec) const;
  void set_backhaul_gain(std::size_t ap, std::size_t mec, double gain);

  double noise_w = 1.0;
  double rrb_bandwidth_hz = 1.0;
  // Bandwidth multiplying the AP->MEC spectral efficiency. Set to 1 for a
  // rate expressed in bits/s/Hz.
  double backhaul_bandwidth_hz = 1.0;

  friend bool operator==(const ChannelState&, const ChannelState&) = default;

 private:
  std::size_t access_index(std::size_t ud, std::size_t ap, std::size_t rrb) const {
    return (ud * n_aps_ + ap) * n_rrbs_ + rrb;
  }

  std::size_t n_uds_ = 0;
  std::size_t n_aps_ = 0;
  std::size_t n_rrbs_ = 0;
  std::size_t n_mecs_ = 0;
  std::vector<double> access_;
  std::vector<double> backhaul_;
};

struct CostWeights {
  double w_latency = 0.5;
  double w_energy = 0.5;
  double alpha_cpu = 1e-27;
  double rate_threshold_bps = 5e4;
};

/// Full problem instance. Large-scale gains (path loss times shadowing) are
/// kept so that fast fading can be redrawn per trial.
struct Scenario {
  std::vector<UserDevice> devices;
  std::vector<AccessPoint> aps;
  std::vector<MecServer> mecs;
  ChannelState channel;
  std::vector<std::vector<std::size_t>> coverage;  // per AP, ascending UD ids
  CostWeights weights;

  std::vector<double> large_scale_access;    // [ud * n_aps + ap], linear
  std::vector<double> large_scale_backhaul;  // [ap * n_mecs + mec], linear
  std::vector<std::size_t> unservable;       // UDs outside every AP's coverage
  std::uint64_t seed = 0;

  std::size_t n_uds() const { return devices.size(); }
  std::size_t n_aps() const { return aps.size(); }
  std::size_t n_mecs() const { return mecs.size(); }
  bool covers(std::size_t ap, std::size_t ud) const;
};

/// Recomputes coverage sets S_m = {n : d(m, n) <= R} from positions.
std::vector<std::vector<std::size_t>> compute_coverage(const std::vector<UserDevice>& devices,
                                                       const std::vector<AccessPoint>& aps);

}  // namespace nomamec
