#include <doctest.h>

#include <cmath>
#include <random>

#include "lipext/covers.hpp"
#include "lipext/generate.hpp"
#include "oracles.hpp"

using namespace lipext;

namespace {

PointSet random_subset(std::size_t n, std::mt19937_64& rng) {
  PointSet s(n);
  for (std::size_t x = 0; x < n; ++x)
    if (rng() % 2) s.insert(x);
  if (s.empty()) s.insert(rng() % n);
  if (s.count() == n) s.erase(rng() % n);
  return s;
}

}  // namespace

TEST_SUITE("covers") {
  TEST_CASE("overlapping clusters on a line give a multiplicity witness") {
    const auto s = generate_test_space("line", 3, 0);
    NagataCover cover;
    cover.scale = 1.0;
    cover.gamma = 1.0;
    cover.d = 0;
    const std::vector<std::size_t> a{0, 1}, b{1, 2};
    cover.clusters = {PointSet(3, a), PointSet(3, b)};
    const auto report = verify_nagata(s, PointSet::all(3), cover);
    CHECK_FALSE(report.passed());
    REQUIRE(report.witness.has_value());
    CHECK(*report.witness == std::vector<std::size_t>{1});
  }

  TEST_CASE("verify_nagata flags uncovered, oversized and foreign clusters") {
    const auto s = generate_test_space("line", 4, 0);
    const std::vector<std::size_t> n_pts{0, 1, 2};
    const PointSet sub(4, n_pts);
    NagataCover cover;
    cover.scale = 0.5;
    cover.gamma = 2.0;
    cover.d = 3;
    const std::vector<std::size_t> c1{0, 2}, c2{3};
    cover.clusters = {PointSet(4, c1), PointSet(4, c2)};
    const auto report = verify_nagata(s, sub, cover);
    CHECK(report.uncovered == std::vector<std::size_t>{1});
    CHECK(report.foreign_clusters == std::vector<std::size_t>{1});
    REQUIRE(report.oversized.size() == 1);
    CHECK(report.oversized[0].second == 2.0);
    CHECK_FALSE(report.passed());
  }

  TEST_CASE("doubling construction is certified and agrees with exhaustive multiplicity") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 20; ++trial) {
      const std::size_t n = 6 + rng() % 7;
      const auto space = generate_test_space("random-doubling-subset", n, rng());
      const PointSet sub = random_subset(n, rng);
      for (double scale : {0.5, 1.0, 2.5, 6.0}) {
        const auto cover = build_nagata_from_doubling(space, sub, scale);
        CHECK(cover.gamma == 2.0);
        const auto report = verify_nagata(space, sub, cover, true);
        CHECK(report.passed());
        CHECK(report.exact_checked);
        CHECK(oracle::exact_nagata_multiplicity(space, sub, cover.clusters, scale) <= cover.d + 1);
        CHECK(report.max_diameter <= 2.0 * scale + kBoundTol);
      }
    }
  }

  TEST_CASE("nagata construction errors") {
    const auto s = generate_test_space("line", 3, 0);
    CHECK_THROWS_AS(build_nagata_from_doubling(s, PointSet(3), 1.0), Error);
    CHECK_THROWS_AS(build_nagata_from_doubling(s, PointSet::all(3), 0.0), Error);
    CHECK_THROWS_AS(build_nagata_from_doubling(s, PointSet::all(2), 1.0), Error);
  }

  TEST_CASE("annulus index brackets its argument") {
    for (double t : {0.3, 0.5, 1.0, 1.5, 2.0, 3.999, 4.0, 1e-3, 1e6}) {
      const int j = annulus_index(t);
      CHECK(std::ldexp(1.0, j) <= t);
      CHECK(t < std::ldexp(1.0, j + 1));
    }
  }

  TEST_CASE("whitney parameters") {
    const auto p = whitney_params(2, 2.0, 0.25);
    CHECK(p.o == 9);
    CHECK(p.s == 0.125);
    CHECK(p.d == doctest::Approx(4.0 * 3.0 * 2.25));
    CHECK(p.a == 5.0);
  }

  TEST_CASE("whitney covers verify on random instances") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 15; ++trial) {
      const std::size_t n = 5 + rng() % 20;
      const auto space = generate_test_space("random-doubling-subset", n, rng());
      const PointSet sub = random_subset(n, rng);
      for (double eps : {0.1, 0.25, 0.45}) {
        const auto cover = build_whitney_from_nagata(space, sub, eps);
        const auto report = verify_whitney(space, sub, cover);
        CHECK(report.passed());
        for (const auto& k : cover.sets) CHECK_FALSE(k.empty());
        for (std::size_t x : sub.complement().members()) {
          bool covered = false;
          for (const auto& k : cover.sets) covered = covered || k.contains(x);
          CHECK(covered);
        }
      }
    }
  }

  TEST_CASE("verify_whitney detects a set touching N and an overlong set") {
    const auto s = generate_test_space("line", 7, 0);
    const std::vector<std::size_t> n_pts{0};
    const PointSet sub(7, n_pts);
    WhitneyCover cover;
    cover.params = whitney_params(0, 1.0, 0.25);
    const std::vector<std::size_t> bad{0, 1}, wide{1, 2, 3, 4, 5, 6};
    cover.sets = {PointSet(7, bad), PointSet(7, wide)};
    cover.anchors = {0, 0};
    const auto report = verify_whitney(s, sub, cover);
    CHECK(report.sets_touching_n == 1);
    CHECK(report.ratio.violations == 1);  // 6 / 1 > 5
    CHECK_FALSE(report.passed());
  }

  TEST_CASE("whitney construction errors") {
    const auto s = generate_test_space("line", 3, 0);
    try {
      build_whitney_from_nagata(s, PointSet::all(3), 0.25);
      FAIL("expected throw");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::EmptyComplement);
    }
    const std::vector<std::size_t> one{0};
    CHECK_THROWS_AS(build_whitney_from_nagata(s, PointSet(3, one), 0.5), Error);
    CHECK_THROWS_AS(build_whitney_from_nagata(s, PointSet(3), 0.25), Error);
  }
}
