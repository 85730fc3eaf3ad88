#include <catch2/catch_amalgamated.hpp>

#include "fixtures.hpp"
#include "girthforge/error.hpp"
#include "girthforge/pi_graph.hpp"
#include "oracles.hpp"

using namespace girthforge;

TEST_CASE("make_pi_graph on the Heawood permutation") {
  auto p = make_pi_graph(fixtures::heawood_pi());
  CHECK(p.graph.vertex_count() == 14);
  CHECK(p.graph.edge_count() == 21);
  CHECK_FALSE(check_pi_graph(p));
  CHECK(oracle::girth(p.graph) == 6u);
  for (std::size_t i = 0; i < 7; ++i) {
    CHECK(p.graph.adjacent(PiGraph::a(7, i), PiGraph::b(7, i)));
    CHECK(p.graph.adjacent(PiGraph::a(7, i), PiGraph::b(7, i + 1)));
    CHECK(p.graph.adjacent(PiGraph::a(7, i), PiGraph::b(7, p.pi[i])));
  }
}

TEST_CASE("make_pi_graph rejects bad permutations") {
  auto code = [](std::vector<std::uint32_t> pi) {
    try {
      make_pi_graph(std::move(pi));
    } catch (const Error& e) {
      return e.code();
    }
    return Errc::parse;
  };
  CHECK(code({0, 0, 1, 2}) == Errc::not_bijection);
  CHECK(code({0, 2, 3, 1}) == Errc::invalid_graph);  // a_0 b_0 is already a cycle edge
}

TEST_CASE("phase one reaches girth above 6 on 8192 vertices") {
  auto build = build_pi_graph(6, 4096, 7);
  CHECK(build.leftover == 0);
  CHECK_FALSE(build.surgery);
  CHECK(build.guarantee_met);
  CHECK(build.result.graph.vertex_count() == 8192);
  CHECK_FALSE(check_pi_graph(build.result));
  REQUIRE(build.girth);
  CHECK(*build.girth > 6);
  CHECK(girth(build.result.graph) == build.girth);
}

TEST_CASE("tiny π-graph targets exhaust their retries") {
  try {
    build_pi_graph(4, 3, 1, {.max_retries = 3});
    FAIL("n = 3 succeeded");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::retries_exhausted);
  }
  CHECK_THROWS_AS(build_pi_graph(3, 100, 1), Error);
}

TEST_CASE("the interval surgery repairs a stalled attempt") {
  auto build = build_pi_graph(4, 40, 2, {.max_retries = 1});
  CHECK(build.surgery);
  CHECK(build.leftover == 1);
  CHECK(build.sites.size() == 1);
  CHECK(build.result.n == 41);
  CHECK(build.result.graph.vertex_count() == 82);
  CHECK_FALSE(check_pi_graph(build.result));
  REQUIRE(build.girth);
  CHECK(build.girth == oracle::girth(build.result.graph));
  CHECK(*build.girth > 4 / 3);
  CHECK(build.guarantee_met);
}

TEST_CASE("π-graph builds are reproducible") {
  auto a = build_pi_graph(5, 300, 9);
  auto b = build_pi_graph(5, 300, 9);
  CHECK(a.result.pi == b.result.pi);
  CHECK(a.attempt_seed == b.attempt_seed);
}

TEST_CASE("guaranteed_n") {
  CHECK(guaranteed_n(4) == BigInt("4503599627370496"));
  CHECK(guaranteed_n(5) == BigInt("18446744073709551616"));
  BigInt p124 = 1;
  p124 <<= 124;
  CHECK(guaranteed_n(10) == p124);
}

TEST_CASE("grow_girth_factor on a family member") {
  for (const auto& host : {build_cycle(40), fixtures::gd({10, 5})}) {
    auto pi = grow_girth_factor(host, 4, 3, 20);
    INFO("host on " << host.graph.vertex_count() << " vertices");
    REQUIRE(pi);
    CHECK(oracle::girth(pi_union(host, *pi)) > 4u);
    CHECK_NOTHROW(check_side_permutation(*pi, host.sides.a.size()));
  }
}
