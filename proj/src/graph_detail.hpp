#pragma once

// Shared pieces of the parallel and reference graph builders.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "noma_mec/conflict_graph.hpp"

namespace nomamec::detail {

struct Candidate {
  std::size_t ap = 0;
  std::size_t rrb = 0;
  std::array<std::size_t, 2> uds{};
  std::size_t size = 1;
};

void check_f_loc(const Scenario& scenario, std::span<const double> f_loc_cps);

std::vector<Candidate> full_candidates(const Scenario& scenario, const GraphOptions& options);
std::vector<Candidate> pruned_candidates(const Scenario& scenario, const GraphOptions& options);

/// Solves powers and weight; empty when the cluster cannot meet the rate
/// threshold or a member ends up with a zero rate.
std::optional<NomaAssociation> realize(const Scenario& scenario, const Candidate& c, double f_loc,
                                       PowerObjective objective);

std::vector<std::uint32_t> neighbours_of(std::size_t v, const std::vector<NomaAssociation>& vs,
                                         bool strict_cc2);

}  // namespace nomamec::detail
