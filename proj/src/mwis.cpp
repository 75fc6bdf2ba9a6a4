#include "noma_mec/mwis.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <string>

#include "noma_mec/errors.hpp"

namespace nomamec {
namespace {

IndependentSet finish(const ConflictGraph& graph, std::vector<std::size_t> chosen) {
  std::sort(chosen.begin(), chosen.end());
  IndependentSet s;
  for (auto v : chosen) s.total_weight += graph.vertex(v).weight;
  s.vertices = std::move(chosen);
  return s;
}

// Visits `order` once, keeping every vertex with no kept neighbour.
std::vector<std::size_t> take_in_order(const ConflictGraph& graph,
                                       const std::vector<std::size_t>& order,
                                       const std::vector<char>* blocked) {
  std::vector<char> removed(graph.size(), 0);
  if (blocked) {
    for (std::size_t v = 0; v < graph.size() && v < blocked->size(); ++v) {
      if ((*blocked)[v]) removed[v] = 1;
    }
  }
  std::vector<std::size_t> chosen;
  for (auto v : order) {
    if (removed[v]) continue;
    chosen.push_back(v);
    removed[v] = 1;
    for (auto u : graph.neighbors(v)) removed[u] = 1;
  }
  return chosen;
}

}  // namespace

IndependentSet greedy_min_wis(const ConflictGraph& graph, MwisOrdering ordering,
                              const std::vector<char>* blocked) {
  std::vector<double> key(graph.size());
  if (ordering == MwisOrdering::Modified) {
    key = modified_weights(graph);
  } else {
    for (std::size_t v = 0; v < graph.size(); ++v) key[v] = graph.vertex(v).weight;
  }
  // With static keys, "take the current minimum and drop its neighbours" is
  // a single pass over the vertices sorted by key.
  std::vector<std::size_t> order(graph.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (key[a] != key[b]) return key[a] < key[b];
    const auto& va = graph.vertex(a);
    const auto& vb = graph.vertex(b);
    if (association_less(va, vb)) return true;
    if (association_less(vb, va)) return false;
    return a < b;
  });
  return finish(graph, take_in_order(graph, order, blocked));
}

namespace {

using Mask = std::uint32_t;

struct ExactSearch {
  const ConflictGraph& graph;
  std::vector<Mask> nbr;  // adjacency bitmasks
  double best = 0.0;
  Mask best_set = 0;
  bool found = false;

  double weight(Mask s) const {
    double w = 0.0;
    for (std::size_t v = 0; v < graph.size(); ++v) {
      if (s >> v & 1u) w += graph.vertex(v).weight;
    }
    return w;
  }

  // Bron-Kerbosch with pivoting on the complement graph: maximal cliques of
  // the complement are the maximal independent sets.
  void run(Mask r, Mask p, Mask x) {
    if (p == 0 && x == 0) {
      const double w = weight(r);
      if (!found || w < best || (w == best && r < best_set)) {
        best = w;
        best_set = r;
        found = true;
      }
      return;
    }
    const Mask px = p | x;
    int pivot = __builtin_ctz(px);
    int best_cnt = -1;
    for (Mask t = px; t; t &= t - 1) {
      const int u = __builtin_ctz(t);
      const int cnt = __builtin_popcount(p & ~nbr[u] & ~(Mask{1} << u));
      if (cnt > best_cnt) {
        best_cnt = cnt;
        pivot = u;
      }
    }
    // Candidates: vertices of p adjacent to the pivot in the graph, plus the
    // pivot itself (non-neighbours of the pivot in the complement).
    Mask cand = p & (nbr[pivot] | (Mask{1} << pivot));
    for (Mask t = cand; t; t &= t - 1) {
      const int v = __builtin_ctz(t);
      const Mask bit = Mask{1} << v;
      const Mask keep = ~nbr[v] & ~bit;  // complement-neighbours of v
      run(r | bit, p & keep, x & keep);
      p &= ~bit;
      x |= bit;
    }
  }
};

}  // namespace

IndependentSet exact_min_wis(const ConflictGraph& graph) {
  if (graph.size() > kExactMwisLimit) {
    throw SizeGuardExceeded("exact search refused for " + std::to_string(graph.size()) +
                            " vertices (limit " + std::to_string(kExactMwisLimit) + ")");
  }
  if (graph.empty()) return {};
  ExactSearch s{graph, std::vector<Mask>(graph.size(), 0)};
  for (std::size_t v = 0; v < graph.size(); ++v) {
    for (auto u : graph.neighbors(v)) s.nbr[v] |= Mask{1} << u;
  }
  const Mask all = graph.size() == 32 ? ~Mask{0} : ((Mask{1} << graph.size()) - 1);
  s.run(0, all, 0);
  std::vector<std::size_t> chosen;
  for (std::size_t v = 0; v < graph.size(); ++v) {
    if (s.best_set >> v & 1u) chosen.push_back(v);
  }
  return finish(graph, std::move(chosen));
}

IndependentSet random_maximal_is(const ConflictGraph& graph, std::uint64_t seed) {
  std::vector<std::size_t> order(graph.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::mt19937_64 rng(seed);
  // Fisher-Yates by hand: std::shuffle's draw pattern is implementation
  // defined, which would make results differ across standard libraries.
  for (std::size_t i = order.size(); i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(rng() % i);
    std::swap(order[i - 1], order[j]);
  }
  return finish(graph, take_in_order(graph, order, nullptr));
}

bool is_independent(const ConflictGraph& graph, const std::vector<std::size_t>& set) {
  for (std::size_t i = 0; i < set.size(); ++i) {
    if (set[i] >= graph.size()) return false;
    for (std::size_t j = i + 1; j < set.size(); ++j) {
      if (set[i] == set[j] || graph.adjacent(set[i], set[j])) return false;
    }
  }
  return true;
}

bool is_maximal(const ConflictGraph& graph, const std::vector<std::size_t>& set,
                const std::vector<char>* blocked) {
  std::vector<char> covered(graph.size(), 0);
  for (auto v : set) {
    covered[v] = 1;
    for (auto u : graph.neighbors(v)) covered[u] = 1;
  }
  for (std::size_t v = 0; v < graph.size(); ++v) {
    const bool is_blocked = blocked && v < blocked->size() && (*blocked)[v];
    if (!covered[v] && !is_blocked) return false;
  }
  return true;
}

}  // namespace nomamec
