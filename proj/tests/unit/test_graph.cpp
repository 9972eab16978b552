#include <doctest.h>

#include <cmath>

#include "lipext/graph.hpp"
#include "lipext/minor.hpp"
#include "oracles.hpp"

using namespace lipext;

namespace {

WeightedGraph path(std::size_t n, double w = 1.0) {
  std::vector<Edge> edges;
  for (std::size_t v = 0; v + 1 < n; ++v) edges.push_back({v, v + 1, w});
  return WeightedGraph(n, edges);
}

oracle::Adj complete(std::size_t n) {
  oracle::Adj g(n);
  for (std::size_t v = 0; v < n; ++v) g[v] = ((1u << n) - 1) & ~(1u << v);
  return g;
}

}  // namespace

TEST_SUITE("graph") {
  TEST_CASE("graph validation and components") {
    CHECK_THROWS_AS(WeightedGraph(2, {{0, 0, 1.0}}), Error);
    CHECK_THROWS_AS(WeightedGraph(2, {{0, 2, 1.0}}), Error);
    CHECK_THROWS_AS(WeightedGraph(2, {{0, 1, -1.0}}), Error);
    CHECK_THROWS_AS(WeightedGraph(2, {{0, 1, NAN}}), Error);
    const WeightedGraph g(4, {{0, 2, 1.0}});
    CHECK_FALSE(g.is_connected());
    const auto comps = g.components();
    REQUIRE(comps.size() == 3);
    CHECK(comps[0] == std::vector<std::size_t>{0, 2});
  }

  TEST_CASE("discretization subdivides edges") {
    const auto mg = discretize(path(3), 0.25);
    CHECK(mg.node_count() == 3 + 3 + 3);
    CHECK(mg(mg.vertex_node(0), mg.vertex_node(2)) == doctest::Approx(2.0));
    CHECK(mg.diameter() == doctest::Approx(2.0));
    CHECK(mg.node_label(mg.vertex_node(1)) == "v1");
    CHECK(mg.node_label(3) == "e0:1");
    const auto uneven = discretize(WeightedGraph(2, {{0, 1, 1.0}}), 0.3);
    CHECK(uneven.node_count() == 5);  // ceil(1 / 0.3) = 4 segments
    const auto space = mg.as_space();
    CHECK(space.size() == mg.node_count());
    CHECK(space(0, 2) == mg(0, 2));
  }

  TEST_CASE("zero-weight edges identify vertices") {
    const WeightedGraph g(3, {{0, 1, 0.0}, {1, 2, 1.0}});
    const auto mg = discretize(g, 0.5);
    CHECK(mg.vertex_node(0) == mg.vertex_node(1));
    CHECK(mg.node_count() == 3);
    CHECK(mg(mg.vertex_node(0), mg.vertex_node(2)) == 1.0);
  }

  TEST_CASE("discretization errors") {
    try {
      discretize(WeightedGraph(3, {{0, 1, 1.0}}), 0.5);
      FAIL("expected throw");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::Disconnected);
    }
    try {
      discretize(path(3, 100.0), 0.01);
      FAIL("expected throw");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::SizeLimit);
    }
    CHECK_THROWS_AS(discretize(path(3), 0.0), Error);
  }

  TEST_CASE("weak distance stays inside the cluster") {
    const WeightedGraph cycle(4, {{0, 1, 1.0}, {1, 2, 1.0}, {2, 3, 1.0}, {3, 0, 1.0}});
    const auto mg = discretize(cycle, 1.0);
    const std::vector<std::size_t> most{0, 1, 2, 3};
    CHECK(weak_distance(mg, PointSet(4, most), 0, 2) == 2.0);
    const std::vector<std::size_t> arc{0, 1, 2};
    CHECK(weak_distance(mg, PointSet(4, arc), 0, 2) == 2.0);
    const std::vector<std::size_t> split{0, 2};
    CHECK(weak_distance(mg, PointSet(4, split), 0, 2) == kInfinity);
    try {
      weak_distance(mg, PointSet(4, split), 0, 1);
      FAIL("expected throw");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::NotInCluster);
    }
    const auto comps = induced_components(mg, PointSet(4, split));
    CHECK(comps.size() == 2);
  }
}

TEST_SUITE("minor") {
  TEST_CASE("complete graphs") {
    for (std::size_t n = 1; n <= 7; ++n)
      for (std::size_t m = 1; m <= 8; ++m) CHECK(has_minor(oracle::to_weighted(complete(n)), m) == (m <= n));
    CHECK(has_minor(WeightedGraph(0, {}), 0));
    CHECK_FALSE(has_minor(WeightedGraph(0, {}), 1));
  }

  TEST_CASE("K5 minus an edge has no K5 minor") {
    auto g = complete(5);
    g[0] &= ~(1u << 1);
    g[1] &= ~(1u << 0);
    CHECK_FALSE(has_minor(oracle::to_weighted(g), 5));
    CHECK(has_minor(oracle::to_weighted(g), 4));
  }

  TEST_CASE("classical graphs") {
    oracle::Adj k33(6, 0);
    for (std::size_t a = 0; a < 3; ++a)
      for (std::size_t b = 3; b < 6; ++b) {
        k33[a] |= 1u << b;
        k33[b] |= 1u << a;
      }
    CHECK(has_minor(oracle::to_weighted(k33), 4));
    CHECK_FALSE(has_minor(oracle::to_weighted(k33), 5));
    // Petersen graph contracts to K5
    oracle::Adj pet(10, 0);
    auto link = [&](std::size_t u, std::size_t v) {
      pet[u] |= 1u << v;
      pet[v] |= 1u << u;
    };
    for (std::size_t i = 0; i < 5; ++i) {
      link(i, (i + 1) % 5);
      link(i, i + 5);
      link(5 + i, 5 + (i + 2) % 5);
    }
    CHECK(has_minor(oracle::to_weighted(pet), 5));
    CHECK_FALSE(has_minor(oracle::to_weighted(pet), 6));
  }

  TEST_CASE("triangle minors are exactly cycles") {
    for (std::size_t n = 1; n <= 6; ++n)
      for (const auto& g : oracle::graphs_up_to_iso(n))
        CHECK(has_minor(oracle::to_weighted(g), 3) == oracle::has_cycle(g));
  }

  TEST_CASE("series-parallel graphs exclude K4") {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 30; ++trial) {
      const auto g = oracle::series_parallel(3 + rng() % 10, rng);
      CHECK_FALSE(has_minor(oracle::to_weighted(g), 4));
    }
  }

  TEST_CASE("size limit") {
    try {
      has_minor(oracle::to_weighted(oracle::Adj(13, 0)), 3);
      FAIL("expected throw");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::SizeLimit);
    }
  }

  TEST_CASE("graph enumeration counts") {
    const std::size_t expect[] = {1, 2, 4, 11, 34, 156};
    for (std::size_t n = 1; n <= 6; ++n) CHECK(oracle::graphs_up_to_iso(n).size() == expect[n - 1]);
    const std::size_t trees[] = {1, 1, 1, 2, 3, 6, 11, 23, 47};
    for (std::size_t n = 1; n <= 9; ++n) CHECK(oracle::trees_up_to_iso(n).size() == trees[n - 1]);
  }
}
