#pragma once

// Minimum-weight maximal independent set searches on a ConflictGraph.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "noma_mec/conflict_graph.hpp"

namespace nomamec {

enum class MwisOrdering { Original, Modified };

struct IndependentSet {
  std::vector<std::size_t> vertices;  // indices into the graph, ascending
  double total_weight = 0.0;
};

/// Repeatedly takes the vertex of least w(v) (Original) or psi(v) (Modified,
/// computed once on the whole graph) and drops its neighbours. Ties go to
/// association_less order, then vertex index. Vertices flagged in `blocked`
/// are never taken; the result is maximal among the unblocked vertices.
IndependentSet greedy_min_wis(const ConflictGraph& graph,
                              MwisOrdering ordering = MwisOrdering::Original,
                              const std::vector<char>* blocked = nullptr);

inline constexpr std::size_t kExactMwisLimit = 25;

/// Minimum-total-weight maximal independent set by enumerating every maximal
/// independent set. Throws SizeGuardExceeded above kExactMwisLimit vertices.
IndependentSet exact_min_wis(const ConflictGraph& graph);

/// Visits vertices in a uniformly random order and keeps each one that has
/// no neighbour kept so far.
IndependentSet random_maximal_is(const ConflictGraph& graph, std::uint64_t seed);

bool is_independent(const ConflictGraph& graph, const std::vector<std::size_t>& set);
bool is_maximal(const ConflictGraph& graph, const std::vector<std::size_t>& set,
                const std::vector<char>* blocked = nullptr);

}  // namespace nomamec
