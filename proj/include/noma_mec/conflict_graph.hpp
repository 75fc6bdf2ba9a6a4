#pragma once

// Conflict graphs over candidate NOMA associations. A vertex is one cluster
// {1-2 UDs, RRB, AP} with solved powers; two vertices conflict when they
// share a UD or occupy the same RRB of the same AP.

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include "noma_mec/model.hpp"
#include "noma_mec/power_alloc.hpp"

namespace nomamec {

struct NomaAssociation {
  std::array<std::size_t, 2> uds{};  // ascending; only the first `size` are used
  std::size_t size = 1;
  std::size_t rrb = 0;
  std::size_t ap = 0;
  ClusterPowerSolution power;  // powers/rates aligned with `uds`
  double weight = 0.0;

  std::span<const std::size_t> members() const { return {uds.data(), size}; }
  bool contains(std::size_t ud) const {
    return uds[0] == ud || (size == 2 && uds[1] == ud);
  }
  /// Identity of the association, independent of the graph it lives in.
  std::array<std::size_t, 4> key() const {
    return {ap, rrb, uds[0], size == 2 ? uds[1] : uds[0]};
  }
};

/// Order used for tie-breaking everywhere: (ap, rrb, lowest UD, next UD),
/// a singleton {n} sorting before every pair {n, j}.
bool association_less(const NomaAssociation& a, const NomaAssociation& b);

enum class GraphKind { Full, Pruned };

struct GraphOptions {
  bool include_singletons = true;
  // Literal CC2: the same RRB index conflicts across different APs too.
  bool strict_cc2 = false;
  PowerObjective objective = PowerObjective::SumRate;
};

/// Immutable graph with CSR adjacency (sorted neighbour lists).
class ConflictGraph {
 public:
  ConflictGraph() = default;

  /// Builds from an explicit edge list; duplicate edges are merged. Throws
  /// InvalidInput on a self-loop or an out-of-range endpoint.
  static ConflictGraph from_edges(GraphKind kind, std::vector<NomaAssociation> vertices,
                                  const std::vector<std::pair<std::size_t, std::size_t>>& edges);

  /// Takes per-vertex neighbour lists that are already symmetric.
  static ConflictGraph from_adjacency(GraphKind kind, std::vector<NomaAssociation> vertices,
                                      std::vector<std::vector<std::uint32_t>> adjacency);

  GraphKind kind() const { return kind_; }
  std::size_t size() const { return vertices_.size(); }
  bool empty() const { return vertices_.empty(); }
  std::size_t edge_count() const { return neighbors_.size() / 2; }

  const std::vector<NomaAssociation>& vertices() const { return vertices_; }
  const NomaAssociation& vertex(std::size_t v) const { return vertices_[v]; }
  std::span<const std::uint32_t> neighbors(std::size_t v) const {
    return {neighbors_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
  }
  bool adjacent(std::size_t a, std::size_t b) const;

  friend bool operator==(const ConflictGraph& a, const ConflictGraph& b);

 private:
  GraphKind kind_ = GraphKind::Full;
  std::vector<NomaAssociation> vertices_;
  std::vector<std::size_t> offsets_{0};
  std::vector<std::uint32_t> neighbors_;
};

/// w(v) = sum over members of B/R + B*lambda/f_loc + alpha*B*lambda*f_loc^2.
/// Throws InfeasibleUpload when a member has a zero rate.
double vertex_weight(const NomaAssociation& assoc, const Scenario& scenario, double f_loc_cps);

/// CC1 (shared UD) or CC2 (same RRB; same AP unless strict_cc2).
bool conflicts(const NomaAssociation& a, const NomaAssociation& b, bool strict_cc2 = false);

/// All coverage-respecting, rate-feasible associations over every AP and RRB,
/// weighted with the per-AP CPU speeds `f_loc_cps`. Vertices come out sorted
/// by association_less. Throws InvalidInput when f_loc_cps has the wrong
/// length or a non-positive entry.
ConflictGraph build_full(const Scenario& scenario, std::span<const double> f_loc_cps,
                         const GraphOptions& options = {});

/// Reduced graph: per AP and RRB one locally feasible seed UD, the seed as a
/// singleton and its locally feasible partners as pairs. Weights use
/// f_loc_max of each AP.
ConflictGraph build_pruned(const Scenario& scenario, const GraphOptions& options = {});

/// psi(v) = w(v) * sum of w(u) over the vertices u != v not adjacent to v.
double modified_weight(std::size_t v, const ConflictGraph& graph);
std::vector<double> modified_weights(const ConflictGraph& graph);

/// Line-oriented dump: a header, one "v <id> ap <m> rrb <z> uds <a> [b]
/// weight <w>" line per vertex, then one "e <a> <b>" line per edge (a < b).
void write_graph_dump(const ConflictGraph& graph, std::ostream& out);

namespace reference {
// Single-threaded builders producing graphs identical to the parallel ones.
ConflictGraph build_full(const Scenario& scenario, std::span<const double> f_loc_cps,
                         const GraphOptions& options = {});
ConflictGraph build_pruned(const Scenario& scenario, const GraphOptions& options = {});
}  // namespace reference

}  // namespace nomamec
