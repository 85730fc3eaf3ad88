#include <catch2/catch_amalgamated.hpp>

#include "girthforge/error.hpp"
#include "girthforge/large_girth.hpp"
#include "oracles.hpp"

using namespace girthforge;

TEST_CASE("level 2 is an even cycle longer than the target") {
  auto r = build_large_girth(2, 50);
  CHECK(r.graph.graph == Graph::cycle(52));
  CHECK(r.girth == 52u);
  CHECK(r.graph.level == 2);
}

TEST_CASE("level 3 with girth above 6") {
  auto r = build_large_girth(3, 6, {.seed = 1});
  CHECK(r.graph.level == 3);
  CHECK(r.graph.in_family);
  CHECK_FALSE(check_structure(r.graph));
  CHECK_NOTHROW(check_regular_bipartite(r.graph.graph, 3));
  const auto og = oracle::girth(r.graph.graph);
  REQUIRE(og);
  CHECK(*og > 6);
  CHECK(r.girth == og);
  CHECK(r.projection_ok);
  REQUIRE(r.base);
  CHECK(*r.base->girth > 6);
  CHECK(r.graph.graph == build_h(r.graph.copies.size(), r.previous, r.previous_pi).graph);
}

TEST_CASE("level 4 with girth above 6") {
  auto r = build_large_girth(4, 6, {.seed = 1});
  CHECK(r.graph.level == 4);
  CHECK_NOTHROW(check_regular_bipartite(r.graph.graph, 4));
  CHECK(r.girth > 6u);
  CHECK(girth(r.graph.graph) == r.girth);
  CHECK(r.projection_ok);
  CHECK(r.levels.size() == 3);
  for (const auto& level : r.levels)
    if (level.union_girth) CHECK(*level.union_girth > 6);
}

TEST_CASE("larger targets at level 3") {
  auto r = build_large_girth(3, 10, {.seed = 1});
  CHECK(r.girth > 10u);
  CHECK(r.projection_ok);
}

TEST_CASE("the relabeled factor source outgrows a desk budget") {
  try {
    build_large_girth(4, 6, {.seed = 0, .max_vertices = 5000, .factor_source = FactorSource::relabeled_pi_graph});
    FAIL("relabeled source fit the budget");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::infeasible_at_budget);
    CHECK(e.witness() == std::vector<std::uint64_t>{3});
  }
}

TEST_CASE("build_large_girth preconditions") {
  CHECK_THROWS_AS(build_large_girth(1, 6), Error);
  CHECK_THROWS_AS(build_large_girth(3, 3), Error);
  try {
    build_large_girth(2, 50, {.max_vertices = 40});
    FAIL("budget ignored");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::infeasible_at_budget);
  }
}

TEST_CASE("guaranteed sizes") {
  auto two = guaranteed_sizes(2, 50);
  REQUIRE(two.size() == 1);
  CHECK(two[0].value == BigInt(52));

  auto four = guaranteed_sizes(4, 6);
  REQUIRE(four.size() == 3);
  BigInt n = 1;
  n <<= 76;
  CHECK(four[0].value == n * 2);
  CHECK(four[1].value == n * 12);
  CHECK_FALSE(four[2].value);
  REQUIRE(four[2].log2);
  // log2 N_4 = log2 12 + 36 * 6 * N_3, with the leading power 2^(216 N_3).
  CHECK(*four[2].log2 == BigInt(216) * n * 12);
}
