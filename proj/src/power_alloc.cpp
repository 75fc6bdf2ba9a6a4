#include "noma_mec/power_alloc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "noma_mec/core_model.hpp"
#include "noma_mec/errors.hpp"

namespace nomamec {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void check_cluster(const ClusterRef& cluster, const ChannelState& channel) {
  if (cluster.uds.empty() || cluster.uds.size() > 2) {
    throw InvalidInput("a NOMA cluster holds one or two UDs");
  }
  if (cluster.uds.size() == 2 && cluster.uds[0] == cluster.uds[1]) {
    throw InvalidInput("cluster members must be distinct");
  }
  for (auto ud : cluster.uds) {
    if (!channel.has_access_link(ud, cluster.ap, cluster.rrb)) {
      throw InvalidInput("cluster references an unknown UD/AP/RRB");
    }
  }
}

double score(const ClusterPowerSolution& s) { return s.feasible ? s.objective : kNegInf; }

}  // namespace

ClusterPowerSolution evaluate_cluster_power(const ClusterRef& cluster, std::array<double, 2> powers,
                                            const ChannelState& channel,
                                            const PowerConstraints& constraints) {
  ClusterPowerSolution out;
  out.size = cluster.uds.size();
  out.powers = powers;
  std::array<double, 2> se{};  // spectral efficiency, bits/s/Hz
  if (out.size == 1) {
    const double g = channel.access_gain(cluster.uds[0], cluster.ap, cluster.rrb);
    se[0] = std::log2(1.0 + powers[0] * g / channel.noise_w);
  } else {
    const double g0 = channel.access_gain(cluster.uds[0], cluster.ap, cluster.rrb);
    const double g1 = channel.access_gain(cluster.uds[1], cluster.ap, cluster.rrb);
    const bool first0 = decoded_before(g0, cluster.uds[0], g1, cluster.uds[1]);
    const std::size_t s = first0 ? 0 : 1;
    const std::size_t w = 1 - s;
    const std::array<double, 2> g{g0, g1};
    se[s] = std::log2(1.0 + powers[s] * g[s] / (powers[w] * g[w] + channel.noise_w));
    se[w] = std::log2(1.0 + powers[w] * g[w] / channel.noise_w);
  }

  out.feasible = true;
  double sum = 0.0;
  double least = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < out.size; ++i) {
    out.rates[i] = channel.rrb_bandwidth_hz * se[i];
    sum += se[i];
    least = std::min(least, se[i]);
    if (out.rates[i] < constraints.rate_threshold_bps * (1.0 - kRateThresholdSlack)) {
      out.feasible = false;
    }
  }
  out.objective = constraints.objective == PowerObjective::SumRate
                      ? sum
                      : static_cast<double>(out.size) * least;
  return out;
}

ClusterPowerSolution solve_cluster_power(const ClusterRef& cluster, const ChannelState& channel,
                                         const PowerConstraints& constraints) {
  check_cluster(cluster, channel);
  const double p_max = constraints.p_max_w;
  if (cluster.uds.size() == 1) {
    // Own rate is monotone in own power and nothing interferes.
    return evaluate_cluster_power(cluster, {p_max, 0.0}, channel, constraints);
  }

  const double sigma2 = channel.noise_w;
  const double g0 = channel.access_gain(cluster.uds[0], cluster.ap, cluster.rrb);
  const double g1 = channel.access_gain(cluster.uds[1], cluster.ap, cluster.rrb);
  const std::size_t s = decoded_before(g0, cluster.uds[0], g1, cluster.uds[1]) ? 0 : 1;
  const std::size_t w = 1 - s;
  const std::array<double, 2> g{g0, g1};
  const double gamma_th =
      std::exp2(constraints.rate_threshold_bps / channel.rrb_bandwidth_hz) - 1.0;

  // Candidate (strong power, weak power) pairs.
  std::array<std::pair<double, double>, 8> candidates{};
  std::size_t n_candidates = 0;
  auto add = [&](double ps, double pw) { candidates[n_candidates++] = {ps, pw}; };
  add(p_max, p_max);
  add(p_max, 0.0);
  add(0.0, p_max);
  add(0.0, 0.0);
  if (g[w] > 0.0) {
    add(p_max, gamma_th * sigma2 / g[w]);
    if (gamma_th > 0.0) add(p_max, (p_max * g[s] / gamma_th - sigma2) / g[w]);
    // Equal-rate point with the strong UD at full power.
    const double x = 0.5 * (-sigma2 + std::sqrt(sigma2 * sigma2 + 4.0 * p_max * g[s] * sigma2));
    add(p_max, x / g[w]);
  }
  if (g[s] > 0.0) add(gamma_th * (p_max * g[w] + sigma2) / g[s], p_max);

  auto eval = [&](double ps, double pw) {
    std::array<double, 2> p{};
    p[s] = ps;
    p[w] = pw;
    return evaluate_cluster_power(cluster, p, channel, constraints);
  };

  // Search score with the same maximiser as the objective but no logarithms:
  // prod(1 + sinr) for the sum rate, min(sinr) for max-min. Infeasible points
  // score -inf. Rates only enter through the threshold SINR.
  const double sinr_floor =
      std::exp2(constraints.rate_threshold_bps * (1.0 - kRateThresholdSlack) /
                channel.rrb_bandwidth_hz) -
      1.0;
  const bool sum_rate = constraints.objective == PowerObjective::SumRate;
  auto fast = [&](double ps, double pw) {
    const double weak = pw * g[w];
    const double sinr_s = ps * g[s] / (weak + sigma2);
    const double sinr_w = weak / sigma2;
    if (sinr_s < sinr_floor || sinr_w < sinr_floor) return kNegInf;
    return sum_rate ? (1.0 + sinr_s) * (1.0 + sinr_w) : std::min(sinr_s, sinr_w);
  };

  std::array<double, 2> cur{p_max, p_max};
  double cur_score = kNegInf;
  for (std::size_t i = 0; i < n_candidates; ++i) {
    auto [ps, pw] = candidates[i];
    if (!std::isfinite(ps) || !std::isfinite(pw)) continue;
    ps = std::clamp(ps, 0.0, p_max);
    pw = std::clamp(pw, 0.0, p_max);
    const double sc = fast(ps, pw);
    if (sc > cur_score) {
      cur_score = sc;
      cur = {ps, pw};
    }
  }
  if (cur_score == kNegInf) {
    // (P_max, minimum weak power) is the most favourable point for both
    // constraints, so no other point can be feasible either.
    auto out = eval(p_max, p_max);
    out.feasible = false;
    return out;
  }
  const std::array<double, 2> start = cur;

  // Coordinate descent refinement.
  auto along = [&](std::size_t c, double v) {
    return c == 0 ? fast(v, cur[1]) : fast(cur[0], v);
  };
  for (int round = 0; round < 5; ++round) {
    const double before = cur_score;
    for (std::size_t c = 0; c < 2; ++c) {
      constexpr int kSamples = 16;
      double best_v = cur[c];
      double best_sc = cur_score;
      for (int i = 0; i <= kSamples; ++i) {
        const double v = p_max * i / kSamples;
        const double sc = along(c, v);
        if (sc > best_sc) {
          best_sc = sc;
          best_v = v;
        }
      }
      double lo = std::max(0.0, best_v - p_max / kSamples);
      double hi = std::min(p_max, best_v + p_max / kSamples);
      const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
      double a = hi - phi * (hi - lo);
      double b = lo + phi * (hi - lo);
      double fa = along(c, a);
      double fb = along(c, b);
      for (int it = 0; it < 40; ++it) {
        if (fa >= fb) {
          hi = b;
          b = a;
          fb = fa;
          a = hi - phi * (hi - lo);
          fa = along(c, a);
        } else {
          lo = a;
          a = b;
          fa = fb;
          b = lo + phi * (hi - lo);
          fb = along(c, b);
        }
      }
      const double mid = 0.5 * (lo + hi);
      const double mid_sc = along(c, mid);
      if (mid_sc > best_sc) {
        best_sc = mid_sc;
        best_v = mid;
      }
      if (best_sc > cur_score) {
        cur[c] = best_v;
        cur_score = best_sc;
      }
    }
    if (!(cur_score > before * (1.0 + 1e-12))) break;
  }
  auto refined = eval(cur[0], cur[1]);
  auto initial = eval(start[0], start[1]);
  return score(refined) >= score(initial) ? refined : initial;
}

ClusterPowerSolution grid_oracle(const ClusterRef& cluster, const ChannelState& channel,
                                 const PowerConstraints& constraints, std::size_t resolution) {
  check_cluster(cluster, channel);
  if (resolution < 2) throw InvalidInput("grid resolution must be at least 2");
  const double p_max = constraints.p_max_w;
  const auto level = [&](std::size_t k) {
    return k + 1 == resolution ? p_max : p_max * static_cast<double>(k) / (resolution - 1);
  };

  ClusterPowerSolution best;
  bool have = false;
  const std::size_t outer = resolution;
  const std::size_t inner = cluster.uds.size() == 2 ? resolution : 1;
  for (std::size_t i = 0; i < outer; ++i) {
    for (std::size_t j = 0; j < inner; ++j) {
      auto sol = evaluate_cluster_power(cluster, {level(i), inner == 1 ? 0.0 : level(j)}, channel,
                                        constraints);
      if (!have || score(sol) > score(best)) {
        best = sol;
        have = true;
      }
    }
  }
  return best;
}

}  // namespace nomamec
