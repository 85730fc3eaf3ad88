#include <catch2/catch_amalgamated.hpp>

#include "fixtures.hpp"
#include "girthforge/error.hpp"
#include "girthforge/json_io.hpp"

using namespace girthforge;

namespace {

void same_structure(const GdGraph& x, const GdGraph& y) {
  CHECK(x.graph == y.graph);
  CHECK(x.level == y.level);
  CHECK(x.part_sizes == y.part_sizes);
  CHECK(x.sides.a == y.sides.a);
  CHECK(x.sides.b == y.sides.b);
  CHECK(x.cycle_order == y.cycle_order);
  CHECK(x.copies == y.copies);
  REQUIRE(x.junctions.size() == y.junctions.size());
  for (std::size_t i = 0; i < x.junctions.size(); ++i) CHECK(x.junctions[i].pairs == y.junctions[i].pairs);
  REQUIRE(x.children.size() == y.children.size());
  for (std::size_t i = 0; i < x.children.size(); ++i) same_structure(x.children[i], y.children[i]);
}

}  // namespace

TEST_CASE("family sidecar round trip") {
  const auto g4 = fixtures::gd({6, 5, 5});
  const auto text = gd_to_json(g4);
  const auto back = gd_from_json(g4.graph, text);
  same_structure(g4, back);
  CHECK_FALSE(check_structure(back));
  CHECK(gd_to_json(back) == text);
  CHECK(certify_sum_bound(back).total() == 375);
}

TEST_CASE("certificate round trip") {
  const auto g3 = fixtures::gd({6, 5});
  const auto cert = certify_sum_bound(g3);
  const auto text = certificate_to_json(cert);
  const auto back = certificate_from_json(text);
  CHECK(back.total() == 60);
  CHECK(certificate_to_json(back) == text);
  CHECK(audit_certificate(g3.graph, back, 20, 1));
}

TEST_CASE("π-graph and scheme round trips") {
  const auto p = make_pi_graph(fixtures::heawood_pi());
  const auto pback = pi_graph_from_json(pi_graph_to_json(p));
  CHECK(pback.pi == p.pi);
  CHECK(pback.graph == p.graph);

  const auto g = Graph::cycle(6);
  const auto s = share_randomness(realize_scheme(make_star_decomposition(g), 7), 1, 4);
  const auto text = scheme_to_json(s);
  const auto sback = scheme_from_json(g, text);
  CHECK(sback.q == 7);
  CHECK(sback.randomness == s.randomness);
  CHECK(scheme_to_json(sback) == text);
}

TEST_CASE("malformed documents raise parse errors") {
  auto code = [](auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.code();
    }
    return Errc::precondition;
  };
  const auto c6 = Graph::cycle(6);
  CHECK(code([&] { gd_from_json(c6, "{"); }) == Errc::parse);
  CHECK(code([&] { gd_from_json(c6, R"({"d": 2})"); }) == Errc::parse);
  CHECK(code([] { certificate_from_json(R"({"sum": {"claim": "odd"}})"); }) == Errc::parse);
  CHECK(code([&] { scheme_from_json(c6, R"({"q": 7, "lambda": 2, "stars": [{"center": 0, "leaves": [2]}]})"); }) ==
        Errc::parse);
  CHECK(code([] { pi_graph_from_json(R"({"n": 5, "pi": [3, 4, 5, 6, 0, 1, 2]})"); }) == Errc::parse);
}

TEST_CASE("LP and cover documents carry exact values") {
  LPProblem p;
  auto x = p.add_variable("x");
  p.add_constraint({{x, 1}}, Sense::ge, Rational(3, 2), "floor");
  p.set_objective({{x, 1}});
  const auto sol = solve_lp(p);
  const auto text = lp_to_json(p, &sol);
  CHECK(text.find("\"3/2\"") != std::string::npos);
  CHECK(text.find("\"OPTIMAL\"") != std::string::npos);

  const auto cover = star_cover_minmax(Graph::cycle(6));
  CHECK(cover_to_json(cover).find("\"max_load\":\"3/2\"") != std::string::npos);
}
