#include <optional>

#include "graph_detail.hpp"
#include "noma_mec/conflict_graph.hpp"

namespace nomamec::reference {

ConflictGraph build_full(const Scenario& scenario, std::span<const double> f_loc_cps,
                         const GraphOptions& options) {
  detail::check_f_loc(scenario, f_loc_cps);
  std::vector<NomaAssociation> vertices;
  for (const auto& c : detail::full_candidates(scenario, options)) {
    if (auto a = detail::realize(scenario, c, f_loc_cps[c.ap], options.objective)) {
      vertices.push_back(std::move(*a));
    }
  }
  std::vector<std::vector<std::uint32_t>> adj(vertices.size());
  for (std::size_t v = 0; v < vertices.size(); ++v) {
    adj[v] = detail::neighbours_of(v, vertices, options.strict_cc2);
  }
  return ConflictGraph::from_adjacency(GraphKind::Full, std::move(vertices), std::move(adj));
}

ConflictGraph build_pruned(const Scenario& scenario, const GraphOptions& options) {
  std::vector<NomaAssociation> vertices;
  for (const auto& c : detail::pruned_candidates(scenario, options)) {
    if (auto a = detail::realize(scenario, c, scenario.aps[c.ap].f_loc_max_cps, options.objective)) {
      vertices.push_back(std::move(*a));
    }
  }
  std::vector<std::vector<std::uint32_t>> adj(vertices.size());
  for (std::size_t v = 0; v < vertices.size(); ++v) {
    adj[v] = detail::neighbours_of(v, vertices, options.strict_cc2);
  }
  return ConflictGraph::from_adjacency(GraphKind::Pruned, std::move(vertices), std::move(adj));
}

}  // namespace nomamec::reference
