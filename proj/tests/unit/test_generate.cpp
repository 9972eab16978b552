#include <doctest.h>

#include <set>

#include "lipext/generate.hpp"

using namespace lipext;

TEST_SUITE("generate") {
  TEST_CASE("line and grid spaces") {
    const auto line = generate_test_space("line", 4, 0);
    CHECK(line.size() == 4);
    CHECK(line(0, 3) == 3.0);
    const auto grid = generate_test_space("grid-linf", 5, 0);
    CHECK(grid.size() == 5);
    CHECK(grid.label(0) == "0_0");
    CHECK(grid(0, 4) == 1.0);  // (0,0) and (1,1)
    CHECK(grid(0, 2) == 2.0);  // (0,0) and (0,2) in a 3x3 grid
  }

  TEST_CASE("random subsets are seeded, distinct and sorted") {
    const auto a = generate_test_space("random-doubling-subset", 12, 42);
    const auto b = generate_test_space("random-doubling-subset", 12, 42);
    const auto c = generate_test_space("random-doubling-subset", 12, 43);
    CHECK(a.labels() == b.labels());
    CHECK(a.labels() != c.labels());
    const std::set<std::string> unique(a.labels().begin(), a.labels().end());
    CHECK(unique.size() == 12);
    CHECK(generate_test_space("random-doubling-subset", 64, 1).size() == 64);
  }

  TEST_CASE("invalid requests") {
    try {
      generate_test_space("sphere", 3, 0);
      FAIL("expected throw");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::UnknownKind);
    }
    CHECK_THROWS_AS(generate_test_space("line", 0, 0), Error);
    CHECK_THROWS_AS(generate_test_space("grid-linf", 65, 0), Error);
  }
}
