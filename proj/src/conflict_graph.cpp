#include "noma_mec/conflict_graph.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <ostream>
#include <string>

#include "graph_detail.hpp"
#include "noma_mec/errors.hpp"

namespace nomamec {

bool association_less(const NomaAssociation& a, const NomaAssociation& b) {
  if (a.ap != b.ap) return a.ap < b.ap;
  if (a.rrb != b.rrb) return a.rrb < b.rrb;
  if (a.uds[0] != b.uds[0]) return a.uds[0] < b.uds[0];
  if (a.size != b.size) return a.size < b.size;
  return a.size == 2 && a.uds[1] < b.uds[1];
}

ConflictGraph ConflictGraph::from_edges(
    GraphKind kind, std::vector<NomaAssociation> vertices,
    const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  std::vector<std::vector<std::uint32_t>> adj(vertices.size());
  for (auto [a, b] : edges) {
    if (a == b) throw InvalidInput("self-loop on vertex " + std::to_string(a));
    if (a >= vertices.size() || b >= vertices.size()) throw InvalidInput("edge endpoint out of range");
    adj[a].push_back(static_cast<std::uint32_t>(b));
    adj[b].push_back(static_cast<std::uint32_t>(a));
  }
  for (auto& list : adj) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
  }
  return from_adjacency(kind, std::move(vertices), std::move(adj));
}

ConflictGraph ConflictGraph::from_adjacency(GraphKind kind, std::vector<NomaAssociation> vertices,
                                            std::vector<std::vector<std::uint32_t>> adjacency) {
  if (adjacency.size() != vertices.size()) throw InvalidInput("adjacency size mismatch");
  ConflictGraph g;
  g.kind_ = kind;
  g.vertices_ = std::move(vertices);
  g.offsets_.assign(g.vertices_.size() + 1, 0);
  for (std::size_t v = 0; v < adjacency.size(); ++v) {
    g.offsets_[v + 1] = g.offsets_[v] + adjacency[v].size();
  }
  g.neighbors_.reserve(g.offsets_.back());
  for (auto& list : adjacency) {
    if (!std::is_sorted(list.begin(), list.end())) std::sort(list.begin(), list.end());
    g.neighbors_.insert(g.neighbors_.end(), list.begin(), list.end());
  }
  return g;
}

bool ConflictGraph::adjacent(std::size_t a, std::size_t b) const {
  auto n = neighbors(a);
  return std::binary_search(n.begin(), n.end(), static_cast<std::uint32_t>(b));
}

bool operator==(const ConflictGraph& a, const ConflictGraph& b) {
  if (a.kind_ != b.kind_ || a.offsets_ != b.offsets_ || a.neighbors_ != b.neighbors_) return false;
  if (a.vertices_.size() != b.vertices_.size()) return false;
  for (std::size_t i = 0; i < a.vertices_.size(); ++i) {
    const auto& x = a.vertices_[i];
    const auto& y = b.vertices_[i];
    if (x.key() != y.key() || x.size != y.size || x.weight != y.weight ||
        x.power.powers != y.power.powers || x.power.rates != y.power.rates) {
      return false;
    }
  }
  return true;
}

double vertex_weight(const NomaAssociation& assoc, const Scenario& scenario, double f_loc_cps) {
  double w = 0.0;
  for (std::size_t i = 0; i < assoc.size; ++i) {
    const auto& task = scenario.devices.at(assoc.uds[i]).task;
    const double rate = assoc.power.rates[i];
    if (!(rate > 0.0)) throw InfeasibleUpload("zero upload rate in association");
    const double cycles = task.cycles();
    w += task.size_bits / rate + cycles / f_loc_cps +
         scenario.weights.alpha_cpu * cycles * f_loc_cps * f_loc_cps;
  }
  return w;
}

bool conflicts(const NomaAssociation& a, const NomaAssociation& b, bool strict_cc2) {
  if (a.rrb == b.rrb && (strict_cc2 || a.ap == b.ap)) return true;
  for (auto u : a.members()) {
    if (b.contains(u)) return true;
  }
  return false;
}

ConflictGraph build_full(const Scenario& scenario, std::span<const double> f_loc_cps,
                         const GraphOptions& options) {
  detail::check_f_loc(scenario, f_loc_cps);
  const auto cands = detail::full_candidates(scenario, options);
  std::vector<std::optional<NomaAssociation>> solved(cands.size());
  const auto n = static_cast<std::int64_t>(cands.size());
#pragma omp parallel for schedule(dynamic, 64)
  for (std::int64_t i = 0; i < n; ++i) {
    const auto& c = cands[i];
    solved[i] = detail::realize(scenario, c, f_loc_cps[c.ap], options.objective);
  }
  std::vector<NomaAssociation> vertices;
  vertices.reserve(cands.size());
  for (auto& s : solved) {
    if (s) vertices.push_back(std::move(*s));
  }

  std::vector<std::vector<std::uint32_t>> adj(vertices.size());
  const auto nv = static_cast<std::int64_t>(vertices.size());
#pragma omp parallel for schedule(dynamic, 32)
  for (std::int64_t v = 0; v < nv; ++v) {
    adj[v] = detail::neighbours_of(static_cast<std::size_t>(v), vertices, options.strict_cc2);
  }
  return ConflictGraph::from_adjacency(GraphKind::Full, std::move(vertices), std::move(adj));
}

ConflictGraph build_pruned(const Scenario& scenario, const GraphOptions& options) {
  const auto cands = detail::pruned_candidates(scenario, options);
  std::vector<std::optional<NomaAssociation>> solved(cands.size());
  const auto n = static_cast<std::int64_t>(cands.size());
#pragma omp parallel for schedule(dynamic, 16)
  for (std::int64_t i = 0; i < n; ++i) {
    const auto& c = cands[i];
    solved[i] = detail::realize(scenario, c, scenario.aps[c.ap].f_loc_max_cps, options.objective);
  }
  std::vector<NomaAssociation> vertices;
  for (auto& s : solved) {
    if (s) vertices.push_back(std::move(*s));
  }

  std::vector<std::vector<std::uint32_t>> adj(vertices.size());
  const auto nv = static_cast<std::int64_t>(vertices.size());
#pragma omp parallel for schedule(dynamic, 32)
  for (std::int64_t v = 0; v < nv; ++v) {
    adj[v] = detail::neighbours_of(static_cast<std::size_t>(v), vertices, options.strict_cc2);
  }
  return ConflictGraph::from_adjacency(GraphKind::Pruned, std::move(vertices), std::move(adj));
}

double modified_weight(std::size_t v, const ConflictGraph& graph) {
  if (v >= graph.size()) throw InvalidInput("vertex out of range");
  double non_adjacent = 0.0;
  auto nb = graph.neighbors(v);
  std::size_t k = 0;
  for (std::size_t u = 0; u < graph.size(); ++u) {
    while (k < nb.size() && nb[k] < u) ++k;
    if (u == v || (k < nb.size() && nb[k] == u)) continue;
    non_adjacent += graph.vertex(u).weight;
  }
  return graph.vertex(v).weight * non_adjacent;
}

std::vector<double> modified_weights(const ConflictGraph& graph) {
  std::vector<double> out(graph.size());
  const auto n = static_cast<std::int64_t>(graph.size());
#pragma omp parallel for schedule(dynamic, 32)
  for (std::int64_t v = 0; v < n; ++v) out[v] = modified_weight(static_cast<std::size_t>(v), graph);
  return out;
}

void write_graph_dump(const ConflictGraph& graph, std::ostream& out) {
  const auto old_precision = out.precision(17);
  out << "graph " << (graph.kind() == GraphKind::Full ? "full" : "pruned") << " vertices "
      << graph.size() << " edges " << graph.edge_count() << '\n';
  for (std::size_t v = 0; v < graph.size(); ++v) {
    const auto& a = graph.vertex(v);
    out << "v " << v << " ap " << a.ap << " rrb " << a.rrb << " uds";
    for (auto u : a.members()) out << ' ' << u;
    out << " weight " << a.weight << '\n';
  }
  for (std::size_t v = 0; v < graph.size(); ++v) {
    for (auto u : graph.neighbors(v)) {
      if (v < u) out << "e " << v << ' ' << u << '\n';
    }
  }
  out.precision(old_precision);
}

namespace detail {

void check_f_loc(const Scenario& scenario, std::span<const double> f_loc_cps) {
  if (f_loc_cps.size() != scenario.n_aps()) {
    throw InvalidInput("expected one CPU speed per AP");
  }
  for (double f : f_loc_cps) {
    if (!(f > 0.0)) throw InvalidInput("local CPU speeds must be positive");
  }
}

std::vector<Candidate> full_candidates(const Scenario& scenario, const GraphOptions& options) {
  std::vector<Candidate> out;
  for (std::size_t m = 0; m < scenario.n_aps(); ++m) {
    const auto& cov = scenario.coverage[m];
    for (std::size_t z = 0; z < scenario.aps[m].num_rrbs; ++z) {
      for (std::size_t i = 0; i < cov.size(); ++i) {
        if (options.include_singletons) out.push_back({m, z, {cov[i], cov[i]}, 1});
        for (std::size_t j = i + 1; j < cov.size(); ++j) out.push_back({m, z, {cov[i], cov[j]}, 2});
      }
    }
  }
  return out;
}

namespace {

constexpr double kTol = 1e-9;

double min_deadline(const Task& a, const Task& b) { return std::min(a.deadline_s, b.deadline_s); }

}  // namespace

std::vector<Candidate> pruned_candidates(const Scenario& scenario, const GraphOptions& options) {
  std::vector<Candidate> out;
  std::vector<char> seeded(scenario.n_uds(), 0);
  for (std::size_t m = 0; m < scenario.n_aps(); ++m) {
    const auto& ap = scenario.aps[m];
    const auto& cov = scenario.coverage[m];
    const double share = ap.f_loc_max_cps / static_cast<double>(ap.num_rrbs);
    for (std::size_t z = 0; z < ap.num_rrbs; ++z) {
      // Seed: lowest-id UD not seeded yet that the RRB's CPU share can
      // process on its own.
      std::size_t seed_pos = cov.size();
      double seed_need = 0.0;
      for (std::size_t i = 0; i < cov.size(); ++i) {
        const auto& t = scenario.devices[cov[i]].task;
        const double need = t.cycles() / t.deadline_s;
        if (!seeded[cov[i]] && need <= share * (1.0 + kTol)) {
          seed_pos = i;
          seed_need = need;
          break;
        }
      }
      if (seed_pos == cov.size()) continue;
      const std::size_t seed = cov[seed_pos];
      seeded[seed] = 1;
      const bool saturated = std::abs(seed_need - share) <= kTol * share;
      if (options.include_singletons || saturated) out.push_back({m, z, {seed, seed}, 1});
      if (saturated) continue;
      const auto& ts = scenario.devices[seed].task;
      for (std::size_t j = seed_pos + 1; j < cov.size(); ++j) {
        const auto& tj = scenario.devices[cov[j]].task;
        const double need = (ts.cycles() + tj.cycles()) / (2.0 * min_deadline(ts, tj));
        if (need <= share * (1.0 + kTol)) out.push_back({m, z, {seed, cov[j]}, 2});
      }
    }
  }
  return out;
}

std::optional<NomaAssociation> realize(const Scenario& scenario, const Candidate& c, double f_loc,
                                       PowerObjective objective) {
  NomaAssociation a;
  a.ap = c.ap;
  a.rrb = c.rrb;
  a.size = c.size;
  a.uds = c.size == 2 ? c.uds : std::array<std::size_t, 2>{c.uds[0], 0};
  double p_max = scenario.devices[a.uds[0]].p_max_w;
  if (a.size == 2) p_max = std::min(p_max, scenario.devices[a.uds[1]].p_max_w);
  const PowerConstraints pc{p_max, scenario.weights.rate_threshold_bps, objective};
  a.power = solve_cluster_power(ClusterRef{a.members(), a.ap, a.rrb}, scenario.channel, pc);
  if (!a.power.feasible) return std::nullopt;
  for (std::size_t i = 0; i < a.size; ++i) {
    if (!(a.power.rates[i] > 0.0)) return std::nullopt;
  }
  a.weight = vertex_weight(a, scenario, f_loc);
  return a;
}

std::vector<std::uint32_t> neighbours_of(std::size_t v, const std::vector<NomaAssociation>& vs,
                                         bool strict_cc2) {
  thread_local std::vector<std::uint32_t> scratch;
  scratch.clear();
  const auto& a = vs[v];
  for (std::size_t u = 0; u < vs.size(); ++u) {
    if (u != v && conflicts(a, vs[u], strict_cc2)) scratch.push_back(static_cast<std::uint32_t>(u));
  }
  return {scratch.begin(), scratch.end()};
}

}  // namespace detail
}  // namespace nomamec
