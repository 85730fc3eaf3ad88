#include <catch2/catch_amalgamated.hpp>

#include "fixtures.hpp"
#include "girthforge/cover.hpp"
#include "girthforge/entropy_lp.hpp"
#include "girthforge/error.hpp"

using namespace girthforge;

// Optima below were computed by tests/oracles/entropy_lp_oracle.py and
// tests/oracles/cover_oracle.py (floating LP, then rationalized) and frozen.

TEST_CASE("star cover optima") {
  auto c6 = star_cover_minmax(Graph::cycle(6));
  CHECK(c6.max_load == Rational(3, 2));
  CHECK(verify_cover(Graph::cycle(6), c6));
  auto p5 = star_cover_minmax(Graph::path(5));
  CHECK(p5.max_load == Rational(3, 2));
  CHECK(p5.max_load <= 2);
  CHECK(verify_cover(Graph::path(5), p5));
  const auto g3 = fixtures::gd({6, 5});
  auto s = star_cover_minmax(g3.graph);
  CHECK(s.max_load == 2);
  CHECK(s.max_load == stinson_upper(3));
  CHECK(verify_cover(g3.graph, s));
  for (const auto& piece : s.pieces) CHECK(piece.is_star());
}

TEST_CASE("multipartite cover optima") {
  CHECK(multipartite_cover_minmax(Graph::complete(4)).max_load == 1);
  CHECK(multipartite_cover_minmax(Graph::cycle(6)).max_load == Rational(3, 2));
  auto c4 = multipartite_cover_minmax(Graph::cycle(4));
  CHECK(c4.max_load == 1);
  CHECK(verify_cover(Graph::cycle(4), c4));
  try {
    multipartite_cover_minmax(Graph::cycle(12));
    FAIL("12 vertices accepted");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::size_limit);
  }
}

TEST_CASE("multipartite optimum never exceeds the star optimum") {
  for (std::size_t n : {4u, 5u, 6u, 7u, 8u}) {
    const auto g = Graph::cycle(n);
    CHECK(multipartite_cover_minmax(g).max_load <= star_cover_minmax(g).max_load);
  }
}

TEST_CASE("verify_cover examples") {
  const auto c6 = Graph::cycle(6);
  CoverSolution halves;
  for (Vertex v = 0; v < 6; ++v)
    halves.pieces.push_back({{{v}, make_set({(v + 1) % 6, (v + 5) % 6})}, Rational(1, 2)});
  halves.max_load = Rational(3, 2);
  auto ok = verify_cover(c6, halves);
  REQUIRE(ok);
  for (const auto& w : ok.edge_coverage) CHECK(w == 1);
  CHECK(ok.max_load == Rational(3, 2));

  CHECK(verify_cover(c6, CoverSolution{}).verdict == CoverVerdict::uncovered_edge);

  CoverSolution one;
  one.pieces.push_back({{{0}, {1, 5}}, 1});
  one.max_load = 1;
  auto far = verify_cover(c6, one);
  CHECK(far.verdict == CoverVerdict::uncovered_edge);
  CHECK(far.edge == Edge{1, 2});

  auto wrong_claim = halves;
  wrong_claim.max_load = 1;
  CHECK(verify_cover(c6, wrong_claim).verdict == CoverVerdict::load_mismatch);

  CoverSolution invalid;
  invalid.pieces.push_back({{{0}, {2}}, 1});
  CHECK(verify_cover(c6, invalid).verdict == CoverVerdict::invalid_piece);
}

TEST_CASE("stinson_upper") {
  CHECK(stinson_upper(2) == Rational(3, 2));
  CHECK(stinson_upper(3) == 2);
  CHECK(stinson_upper(0) == Rational(1, 2));
}

TEST_CASE("entropy LP optima on small graphs") {
  const auto c6 = Graph::cycle(6);
  CHECK(entropy_lp_complexity(c6, EntropyObjective::minmax) == Rational(3, 2));
  CHECK(entropy_lp_complexity(c6, EntropyObjective::sum) == 9);
  CHECK(entropy_lp_complexity(Graph::complete(4), EntropyObjective::minmax) == 1);
  CHECK(entropy_lp_complexity(Graph::cycle(8), EntropyObjective::minmax) == Rational(3, 2));
}

TEST_CASE("entropy LP set queries") {
  const auto c6 = Graph::cycle(6);
  CHECK(entropy_lp_set_query(c6, {2, 3}) == 3);
  CHECK(entropy_lp_set_query(c6, {}) == 0);
  // The frozen oracle optimum is 1; a single vertex need not reach the
  // per-vertex minmax value because the query minimizes f(v0) alone.
  CHECK(entropy_lp_set_query(c6, {0}) == 1);
}

TEST_CASE("reduced strict families give the same optimum as the full ones") {
  for (const auto& g : {Graph::cycle(6), Graph::path(5), Graph::star(3), Graph::complete(4)}) {
    for (auto obj : {EntropyObjective::minmax, EntropyObjective::sum}) {
      auto reduced = solve_entropy_lp(g, {obj, {}, StrictFamilies::reduced});
      auto full = solve_entropy_lp(g, {obj, {}, StrictFamilies::full});
      CHECK(reduced.value == full.value);
      CHECK(build_entropy_lp(g, {obj, {}, StrictFamilies::reduced}).constraint_count() <
            build_entropy_lp(g, {obj, {}, StrictFamilies::full}).constraint_count());
    }
  }
}

TEST_CASE("sum optimum is at most |V| times the minmax optimum") {
  for (const auto& g : {Graph::cycle(6), Graph::cycle(7), Graph::path(6), Graph::complete_bipartite(2, 3)}) {
    const auto minmax = entropy_lp_complexity(g, EntropyObjective::minmax);
    const auto sum = entropy_lp_complexity(g, EntropyObjective::sum);
    CHECK(sum <= minmax * static_cast<long>(g.vertex_count()));
    CHECK(minmax <= star_cover_minmax(g).max_load);
  }
}

TEST_CASE("entropy LP solutions are certified and satisfy f(empty) = 0") {
  const auto c6 = Graph::cycle(6);
  auto b = solve_entropy_lp(c6, {});
  CHECK(b.f.size() == 64);
  CHECK(b.f[0] == 0);
  CHECK_FALSE(check_optimality(build_entropy_lp(c6, {}), b.solution));
  try {
    entropy_lp_complexity(Graph::cycle(12), EntropyObjective::minmax);
    FAIL("12 vertices accepted");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::size_limit);
  }
}
