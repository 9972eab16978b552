#include <doctest.h>

#include <cmath>
#include <random>

#include "lipext/kpr.hpp"
#include "lipext/minor.hpp"
#include "oracles.hpp"

using namespace lipext;

namespace {

WeightedGraph path(std::size_t n) {
  std::vector<Edge> edges;
  for (std::size_t v = 0; v + 1 < n; ++v) edges.push_back({v, v + 1, 1.0});
  return WeightedGraph(n, edges);
}

WeightedGraph cycle(std::size_t n) {
  std::vector<Edge> edges;
  for (std::size_t v = 0; v < n; ++v) edges.push_back({v, (v + 1) % n, 1.0});
  return WeightedGraph(n, edges);
}

WeightedGraph star(std::size_t leaves) {
  std::vector<Edge> edges;
  for (std::size_t v = 1; v <= leaves; ++v) edges.push_back({0, v, 1.0});
  return WeightedGraph(leaves + 1, edges);
}

void check_decomposition(const DiscretizedMetricGraph& mg, double r, std::size_t m) {
  const auto dec = kpr_decompose(mg, r, m);
  CHECK_FALSE(dec.trivial);
  CHECK(dec.s == r / 2.0);
  CHECK(dec.d + 1 == static_cast<std::size_t>(std::pow(3.0, 2.0 * static_cast<double>(m) - 2.0)));
  CHECK(dec.deltas.size() == dec.d + 1);
  CHECK(dec.classes.size() == dec.clusters.size());
  const auto report = verify_graph_nagata(mg, dec);
  CHECK(report.passed());
  CHECK(report.max_diameter <= report.diameter_bound);
  CHECK(report.min_separation >= r - 1e-9);
  // Every partition covers all nodes and each interior sits in its cluster.
  for (std::size_t b = 0; b < dec.partitions.size(); ++b) {
    std::vector<int> seen(mg.node_count(), 0);
    for (const auto& c : dec.partitions[b])
      for (std::size_t x : c.members()) ++seen[x];
    for (int k : seen) CHECK(k == 1);
  }
  const auto space = mg.as_space();
  const auto cover = to_nagata_cover(mg, dec);
  CHECK(verify_nagata(space, PointSet::all(mg.node_count()), cover).passed());
}

}  // namespace

TEST_SUITE("kpr") {
  TEST_CASE("small graphs are one cluster") {
    const auto mg = discretize(path(4), 0.1);
    const auto dec = kpr_decompose(mg, 1.0, 3);
    CHECK(dec.trivial);
    REQUIRE(dec.clusters.size() == 1);
    CHECK(dec.clusters[0].count() == mg.node_count());
    CHECK(verify_graph_nagata(mg, dec).passed());
  }

  TEST_CASE("non-trivial decompositions verify") {
    check_decomposition(discretize(path(10), 0.05), 0.05, 3);
    check_decomposition(discretize(cycle(10), 0.05), 0.05, 3);
    check_decomposition(discretize(star(5), 0.01), 0.02, 3);
    check_decomposition(discretize(cycle(8), 0.1), 0.03, 4);
  }

  TEST_CASE("residual active clusters only come with a minor") {
    std::mt19937_64 rng(43);
    for (int trial = 0; trial < 3; ++trial) {
      oracle::Adj g(4, 0);
      for (std::size_t u = 0; u < 4; ++u)
        for (std::size_t v = u + 1; v < 4; ++v)
          if (rng() % 3 != 0 || v == u + 1) {
            g[u] |= 1u << v;
            g[v] |= 1u << u;
          }
      const auto graph = oracle::to_weighted(g);
      const auto mg = discretize(graph, 0.005);
      try {
        const auto dec = kpr_decompose(mg, 0.02, 3);
        CHECK(verify_graph_nagata(mg, dec).passed());
      } catch (const ResidualActiveClusterError& e) {
        CHECK(has_minor(graph, 3));
        CHECK(e.delta().size() == 4);
      }
    }
  }

  TEST_CASE("residual error carries its certificate") {
    const std::vector<std::size_t> one{0};
    const ResidualActiveClusterError e({0, 2, 1, 1}, {PointSet::all(2), PointSet(2, one)}, {0, 1}, "left over");
    CHECK(e.kind() == ErrorKind::ResidualActiveCluster);
    CHECK(e.delta() == std::vector<std::size_t>{0, 2, 1, 1});
    CHECK(e.chain().size() == 2);
    CHECK(e.anchors() == std::vector<std::size_t>{0, 1});
    CHECK(std::string(e.what()).find("left over") != std::string::npos);
  }

  TEST_CASE("builder feeds whitney covers on a graph") {
    const auto mg = discretize(cycle(6), 0.5);
    const auto space = mg.as_space();
    PointSet sub(mg.node_count());
    sub.insert(mg.vertex_node(0));
    sub.insert(mg.vertex_node(3));
    const auto cover = build_whitney_from_nagata(space, sub, 0.25, kpr_nagata_builder(mg, 3));
    CHECK(verify_whitney(space, sub, cover).passed());
  }

  TEST_CASE("decomposition input validation") {
    const auto mg = discretize(path(3), 0.5);
    CHECK_THROWS_AS(kpr_decompose(mg, 0.0, 3), Error);
    CHECK_THROWS_AS(kpr_decompose(mg, 1.0, 2), Error);
  }
}
