#include <doctest.h>

#include <algorithm>
#include <set>
#include <sstream>
#include <vector>

#include "fixtures.hpp"
#include "noma_mec/conflict_graph.hpp"
#include "noma_mec/errors.hpp"

using namespace nomamec;

namespace {

NomaAssociation assoc(std::vector<std::size_t> uds, std::size_t rrb, std::size_t ap,
                      double weight = 1.0) {
  NomaAssociation a;
  a.size = uds.size();
  for (std::size_t i = 0; i < uds.size(); ++i) a.uds[i] = uds[i];
  a.rrb = rrb;
  a.ap = ap;
  a.weight = weight;
  return a;
}

std::set<std::array<std::size_t, 4>> keys(const ConflictGraph& g) {
  std::set<std::array<std::size_t, 4>> out;
  for (const auto& v : g.vertices()) out.insert(v.key());
  return out;
}

std::vector<double> f_max(const Scenario& sc) {
  std::vector<double> f;
  for (const auto& ap : sc.aps) f.push_back(ap.f_loc_max_cps);
  return f;
}

}  // namespace

TEST_SUITE("conflict_graph") {
  TEST_CASE("vertex weight") {
    auto sc = fixtures::uniform(2, 1, 1, 1);
    auto a = assoc({0}, 0, 0);
    a.power.rates = {1e6, 0.0};
    CHECK(vertex_weight(a, sc, 5e7) == doctest::Approx(1.500125e-3).epsilon(1e-12));

    auto b = assoc({0, 1}, 0, 0);
    b.power.rates = {1e6, 1e6};
    CHECK(vertex_weight(b, sc, 5e7) == doctest::Approx(2.0 * vertex_weight(a, sc, 5e7)));

    sc.weights.alpha_cpu = 0.0;
    CHECK(vertex_weight(a, sc, 1e300) == doctest::Approx(5e-4));

    a.power.rates = {0.0, 0.0};
    CHECK_THROWS_AS(vertex_weight(a, sc, 5e7), InfeasibleUpload);
  }

  TEST_CASE("conflict rules") {
    CHECK(conflicts(assoc({0, 1}, 0, 0), assoc({1, 2}, 1, 0)));
    CHECK(conflicts(assoc({0, 1}, 0, 0), assoc({2, 3}, 0, 0)));
    CHECK_FALSE(conflicts(assoc({0, 1}, 0, 0), assoc({2, 3}, 1, 0)));
    // Same RRB index on different APs only conflicts in strict mode.
    CHECK_FALSE(conflicts(assoc({0}, 0, 0), assoc({1}, 0, 1)));
    CHECK(conflicts(assoc({0}, 0, 0), assoc({1}, 0, 1), true));
    // A shared UD conflicts across APs.
    CHECK(conflicts(assoc({0}, 0, 0), assoc({0}, 1, 1)));
  }

  TEST_CASE("two UDs on one RRB give three mutually conflicting vertices") {
    const auto sc = fixtures::uniform(2, 1, 1, 1);
    const auto g = build_full(sc, f_max(sc));
    REQUIRE(g.size() == 3);
    CHECK(g.edge_count() == 3);
    for (std::size_t a = 0; a < 3; ++a)
      for (std::size_t b = 0; b < 3; ++b)
        if (a != b) CHECK(g.adjacent(a, b));
    CHECK(std::is_sorted(g.vertices().begin(), g.vertices().end(), association_less));
  }

  TEST_CASE("no UDs give an empty graph") {
    auto sc = fixtures::uniform(0, 1, 1, 1);
    CHECK(build_full(sc, f_max(sc)).empty());
    CHECK(build_pruned(sc).empty());
  }

  TEST_CASE("pairs only on one RRB form a complete graph") {
    const auto sc = fixtures::uniform(4, 1, 1, 1);
    GraphOptions opts;
    opts.include_singletons = false;
    const auto g = build_full(sc, f_max(sc), opts);
    REQUIRE(g.size() == 6);
    CHECK(g.edge_count() == 15);
    for (const auto& v : g.vertices()) CHECK(v.size == 2);
  }

  TEST_CASE("full vertex count on an unconstrained instance") {
    const auto sc = fixtures::uniform(6, 2, 3, 1);
    const auto g = build_full(sc, f_max(sc));
    CHECK(g.size() == (15 + 6) * 3 * 2);
  }

  TEST_CASE("pruned graph: seeded pairs within the demand threshold") {
    const auto sc = fixtures::uniform(4, 1, 3, 1);
    const auto g = build_pruned(sc);
    CHECK_FALSE(g.empty());
    bool has_pair = false;
    for (const auto& v : g.vertices()) has_pair = has_pair || v.size == 2;
    CHECK(has_pair);
    const auto full = keys(build_full(sc, f_max(sc)));
    for (const auto& k : keys(g)) CHECK(full.count(k) == 1);
  }

  TEST_CASE("pruned graph: inflated density removes every pair") {
    const auto sc = fixtures::uniform(4, 1, 3, 1, 1e-10, 1e-10, Task{500.0, 1e5, 0.01});
    const auto g = build_pruned(sc);
    for (const auto& v : g.vertices()) CHECK(v.size == 1);
    CHECK(g.empty());
  }

  TEST_CASE("pruned vertex set is a subset of the full vertex set") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      auto cfg = fixtures::small_config(1 + seed % 8, seed);
      const auto sc = generate(cfg);
      const auto full = keys(build_full(sc, f_max(sc)));
      for (const auto& k : keys(build_pruned(sc))) CHECK(full.count(k) == 1);
    }
  }

  TEST_CASE("parallel and serial builds agree") {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      const auto sc = generate(fixtures::small_config(12, seed));
      for (bool strict : {false, true}) {
        GraphOptions opts;
        opts.strict_cc2 = strict;
        CHECK(build_full(sc, f_max(sc), opts) == reference::build_full(sc, f_max(sc), opts));
        CHECK(build_pruned(sc, opts) == reference::build_pruned(sc, opts));
      }
    }
  }

  TEST_CASE("modified weight") {
    std::vector<NomaAssociation> vs{assoc({0}, 0, 0, 2.0), assoc({1}, 1, 0, 3.0),
                                    assoc({2}, 2, 0, 5.0)};
    const auto isolated = ConflictGraph::from_edges(GraphKind::Full, vs, {});
    CHECK(modified_weight(0, isolated) == doctest::Approx(16.0));
    const auto psi = modified_weights(isolated);
    CHECK(psi[0] == doctest::Approx(16.0));

    const auto star = ConflictGraph::from_edges(GraphKind::Full, vs, {{0, 1}, {0, 2}});
    CHECK(modified_weight(0, star) == 0.0);

    const auto single = ConflictGraph::from_edges(GraphKind::Full, {vs[0]}, {});
    CHECK(modified_weight(0, single) == 0.0);
  }

  TEST_CASE("graph dump format") {
    const auto sc = fixtures::uniform(2, 1, 1, 1);
    const auto g = build_full(sc, f_max(sc));
    std::ostringstream out;
    write_graph_dump(g, out);
    std::istringstream in(out.str());
    std::string line;
    std::getline(in, line);
    CHECK(line == "graph full vertices 3 edges 3");
    std::size_t v_lines = 0;
    std::size_t e_lines = 0;
    while (std::getline(in, line)) {
      v_lines += line.rfind("v ", 0) == 0;
      e_lines += line.rfind("e ", 0) == 0;
    }
    CHECK(v_lines == 3);
    CHECK(e_lines == 3);
  }
}
