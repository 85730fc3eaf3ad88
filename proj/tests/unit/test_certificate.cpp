#include <catch2/catch_amalgamated.hpp>

#include "fixtures.hpp"
#include "girthforge/certificate.hpp"
#include "girthforge/error.hpp"

using namespace girthforge;

namespace {

SetFunction cardinality_table(std::size_t n, long cap = 1000) {
  SetFunction f;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    VertexSet s;
    for (Vertex v = 0; v < n; ++v)
      if (mask >> v & 1) s.push_back(v);
    f.set(s, std::min<long>(static_cast<long>(s.size()), cap));
  }
  return f;
}

// Independent evaluation of I(A;B|C) straight from the table.
Rational direct_I(const SetFunction& f, const VertexSet& a, const VertexSet& b, const VertexSet& c) {
  auto u = [](VertexSet x, const VertexSet& y) { return set_union(x, y); };
  return f(u(a, c)) + f(u(b, c)) - f(c) - f(u(u(a, b), c));
}

Rational sum_of_bounds(const CertificateNode& n) {
  Rational total;
  for (const auto& t : n.terms) total += t.bound;
  for (const auto& c : n.children) total += c.subtotal;
  return total;
}

void check_subtotals(const CertificateNode& n) {
  CHECK(n.subtotal == sum_of_bounds(n));
  for (const auto& c : n.children) check_subtotals(c);
}

}  // namespace

TEST_CASE("eval_I examples") {
  const auto card = cardinality_table(6);
  CHECK(eval_I(card, {0}, {1}) == 0);
  CHECK(eval_I(card, {}, {}) == 0);
  const auto k4 = cardinality_table(4, 2);
  CHECK(eval_I(k4, {0}, {1}, {2}) == 1);
  CHECK(eval_I(k4, {0}, {1}, {2}) == direct_I(k4, {0}, {1}, {2}));
  auto r = SetFunction::random(5);
  CHECK(eval_I(r, {0, 1}, {2}, {3}) == direct_I(r, {0, 1}, {2}, {3}));
  CHECK(r(VertexSet{}) == 0);
  CHECK(r({1, 4}) == SetFunction::random(5)({1, 4}));
  SetFunction partial;
  partial.set({0}, 1);
  CHECK_THROWS_AS(partial({1}), Error);
}

TEST_CASE("chain decomposition identity") {
  CHECK(check_decomposition_identity(5, 1000, 1).ok);
  CHECK(check_decomposition_identity(8, 1000, 2).ok);
  CHECK_THROWS_AS(check_decomposition_identity(4, 10, 1), Error);
  auto pairs = chain_decomposition({{0}, {1}, {2}, {3}, {4}, {5}});
  REQUIRE(pairs.size() == 5);
  CHECK(pairs[2] == std::pair<VertexSet, VertexSet>{{0, 1, 2}, {3, 4, 5}});
  CHECK(pairs[4] == std::pair<VertexSet, VertexSet>{{3, 4}, {5}});
}

TEST_CASE("verify_term examples on the 6-cycle") {
  const auto c6 = Graph::cycle(6);
  TermBound split{TermKind::split_information, {0, 1, 2}, {3, 4, 5}, {}, {3, 5}, {{{3, 2}, {5, 0}}}, 3};
  auto ok = verify_term(c6, split);
  CHECK(ok);
  CHECK(ok.entitled == 3);
  auto greedy = split;
  greedy.bound = 4;
  CHECK(verify_term(c6, greedy).verdict == TermVerdict::bound_exceeds);
  auto bad_factor = split;
  bad_factor.factor.pairs = {{3, 0}, {5, 2}};
  CHECK(verify_term(c6, bad_factor).verdict == TermVerdict::bad_factor);

  TermBound info{TermKind::factor_information, {0, 2}, {1}, {}, {}, {{{1, 0}}}, 1};
  CHECK(verify_term(c6, info).verdict == TermVerdict::a_independent);

  TermBound strict{TermKind::strict_submodular, {0}, {2}, {1}, {}, {}, 1};
  CHECK(verify_term(c6, strict));
  strict.c = {};
  CHECK_FALSE(verify_term(c6, strict));

  TermBound shannon{TermKind::shannon, {0}, {1}, {}, {}, {}, 0};
  CHECK(verify_term(c6, shannon));
  shannon.bound = Rational(1, 2);
  CHECK(verify_term(c6, shannon).verdict == TermVerdict::bound_exceeds);

  TermBound entropy{TermKind::factor_entropy, {1, 2}, {0, 3}, {}, {}, {{{0, 1}, {3, 2}}}, 3};
  CHECK(verify_term(c6, entropy));

  TermBound overlap{TermKind::factor_information, {0, 1}, {1}, {}, {}, {{{1, 0}}}, 1};
  CHECK(verify_term(c6, overlap).verdict == TermVerdict::not_disjoint);
  TermBound far{TermKind::shannon, {0}, {9}, {}, {}, {}, 0};
  CHECK(verify_term(c6, far).verdict == TermVerdict::out_of_range);
}

TEST_CASE("6-cycle certificate") {
  auto cert = certify_sum_bound(build_cycle(6));
  CHECK(cert.total() == 9);
  CHECK(cert.gap.subtotal == 5);
  std::vector<Rational> gap_bounds;
  for (const auto& t : cert.gap.terms) gap_bounds.push_back(t.bound);
  CHECK(gap_bounds == std::vector<Rational>{0, 1, 3, 0, 1});
  for (const auto& t : cert.sum.terms) CHECK(verify_term(Graph::cycle(6), t));
  check_subtotals(cert.sum);
  check_subtotals(cert.gap);
  CHECK(audit_certificate(Graph::cycle(6), cert, 100, 1));
}

TEST_CASE("sum totals across levels") {
  const auto g3 = fixtures::gd({6, 5});
  const auto g4 = fixtures::gd({6, 5, 5});
  const auto c3 = certify_sum_bound(g3);
  const auto c4 = certify_sum_bound(g4);
  CHECK(c3.total() == 60);
  CHECK(c4.total() == 375);
  CHECK(c3.gap.subtotal == 44);
  CHECK(c4.gap.subtotal == 299);
  CHECK(c3.total() == 2 * 30);
  CHECK(c4.total() == Rational(5, 2) * 150);
  CHECK(c3.gap.subtotal == Rational(3, 2) * 30 - 1);
  check_subtotals(c4.sum);
  check_subtotals(c4.gap);
  CHECK(audit_certificate(g3.graph, c3, 100, 1));
  CHECK(audit_certificate(g4.graph, c4, 20, 2, 2));
  CHECK(certify_sum_bound(build_cycle(10)).total() == 15);
}

TEST_CASE("audit rejects an inflated bound") {
  const auto g3 = fixtures::gd({6, 5});
  auto cert = certify_sum_bound(g3);
  auto& t = cert.sum.children[0].terms[2];
  t.bound += 1;
  auto report = audit_certificate(g3.graph, cert, 100, 1);
  CHECK_FALSE(report);
  CHECK_FALSE(report.failure.empty());

  // Consistent arithmetic does not rescue an entitlement overshoot.
  auto cert2 = certify_sum_bound(g3);
  cert2.sum.children[0].terms[2].bound += 1;
  cert2.sum.children[0].subtotal += 1;
  cert2.sum.subtotal += 1;
  CHECK_FALSE(audit_certificate(g3.graph, cert2, 100, 1));
}

TEST_CASE("audit rejects a graph missing a junction edge") {
  const auto g3 = fixtures::gd({6, 5});
  const auto cert = certify_sum_bound(g3);
  const auto [b, a] = g3.junctions[0].pairs[0];
  const auto cut = g3.graph.without_edge(Edge::of(b, a));
  CHECK_FALSE(audit_certificate(cut, cert, 100, 1));

  auto tampered = g3;
  tampered.graph = cut;
  try {
    certify_sum_bound(tampered);
    FAIL("tampered graph certified");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::witness_failure);
  }
}

TEST_CASE("audit rejects perturbed witnesses and broken identities") {
  const auto g3 = fixtures::gd({6, 5});
  const auto cert = certify_sum_bound(g3);

  auto swapped = cert;
  auto& f = swapped.gap.terms[0].factor.pairs;
  REQUIRE(f.size() >= 2);
  std::swap(f[0].second, f[1].second);
  CHECK_FALSE(audit_certificate(g3.graph, swapped, 50, 1));

  auto moved = cert;
  auto& term = moved.sum.children[1].terms[0];
  REQUIRE_FALSE(term.a.empty());
  term.a.pop_back();
  CHECK_FALSE(audit_certificate(g3.graph, moved, 50, 1));

  auto dropped = cert;
  dropped.sum.children.pop_back();
  CHECK_FALSE(audit_certificate(g3.graph, dropped, 50, 1));
}

TEST_CASE("certificates need recursion metadata") {
  CHECK_THROWS_AS(certify_sum_bound(GdGraph::bare(Graph::cycle(6))), Error);
}
