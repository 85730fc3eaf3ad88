#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <set>

#include "girthforge/error.hpp"
#include "girthforge/scheme.hpp"

using namespace girthforge;

namespace {

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return Errc::parse;
}

// Direct enumeration oracle: deals every (secret, masks) pair by hand and
// tests both perfectness conditions on explicit share tuples.
struct BruteForce {
  bool determines_all = true;
  bool hides_all = true;
  std::uint64_t states = 0;
};

BruteForce brute_force(const DecompositionScheme& s, const std::vector<VertexSet>& sets) {
  const std::uint64_t q = s.q;
  const std::size_t masks = s.stars.size();
  const std::size_t lambda = s.lambda;
  std::uint64_t secrets = 1, randomness = 1;
  for (std::size_t i = 0; i < lambda; ++i) secrets *= q;
  for (std::size_t i = 0; i < masks; ++i) randomness *= q;
  BruteForce out;
  out.states = secrets * randomness;

  using Shares = std::vector<std::uint64_t>;
  std::vector<std::vector<Shares>> table(secrets);  // [secret][mask index]
  for (std::uint64_t sec = 0; sec < secrets; ++sec) {
    std::vector<std::uint64_t> coef(lambda);
    for (std::size_t i = 0, t = sec; i < lambda; ++i, t /= q) coef[i] = t % q;
    for (std::uint64_t rnd = 0; rnd < randomness; ++rnd) {
      std::vector<std::uint64_t> r(masks);
      for (std::size_t i = 0, t = rnd; i < masks; ++i, t /= q) r[i] = t % q;
      Shares shares;
      for (Vertex v = 0; v < s.graph.vertex_count(); ++v)
        for (std::size_t i = 0; i < s.stars.size(); ++i) {
          const auto& st = s.stars[i];
          const std::uint64_t mask = r[s.randomness.empty() ? i : s.randomness[i]];
          if (st.center == v) shares.push_back(mask);
          if (set_contains(st.leaves, v)) {
            std::uint64_t p = 0, xp = 1;
            for (std::size_t k = 0; k < lambda; ++k) p = (p + coef[k] * xp) % q, xp = xp * st.x % q;
            shares.push_back((p + mask) % q);
          }
        }
      table[sec].push_back(std::move(shares));
    }
  }
  auto project = [&](const Shares& all, const VertexSet& keep) {
    Shares out;
    std::size_t pos = 0;
    for (Vertex v = 0; v < s.graph.vertex_count(); ++v)
      for (const auto& st : s.stars) {
        const bool holds = st.center == v || set_contains(st.leaves, v);
        if (holds && set_contains(keep, v)) out.push_back(all[pos]);
        pos += holds;
      }
    return out;
  };
  for (const auto& e : s.graph.edges()) {
    std::map<Shares, std::set<std::uint64_t>> seen;
    for (std::uint64_t sec = 0; sec < secrets; ++sec)
      for (const auto& sh : table[sec]) seen[project(sh, {e.u, e.v})].insert(sec);
    for (const auto& [k, v] : seen) out.determines_all &= v.size() == 1;
  }
  for (const auto& set : sets) {
    std::map<Shares, std::uint64_t> first;
    for (const auto& sh : table[0]) ++first[project(sh, set)];
    for (std::uint64_t sec = 1; sec < secrets; ++sec) {
      std::map<Shares, std::uint64_t> counts;
      for (const auto& sh : table[sec]) ++counts[project(sh, set)];
      out.hides_all &= counts == first;
    }
  }
  return out;
}

DecompositionScheme basic_star_scheme() {
  DecompositionScheme s;
  s.graph = Graph::star(2);
  s.lambda = 1;
  s.stars.push_back({0, {1, 2}});
  return realize_scheme(s, 2);
}

}  // namespace

TEST_CASE("prime field arithmetic") {
  PrimeField f(7);
  CHECK(f.mul(3, 5) == 1);
  CHECK(f.inverse(3) == 5);
  CHECK(f.pow(3, 6) == 1);
  CHECK(PrimeField::is_prime(23));
  CHECK_FALSE(PrimeField::is_prime(21));
  CHECK(code_of([] { PrimeField(8); }) == Errc::precondition);
}

TEST_CASE("make_star_decomposition") {
  auto c6 = make_star_decomposition(Graph::cycle(6));
  CHECK(c6.stars.size() == 6);
  CHECK(c6.lambda == 2);
  for (const auto& m : c6.memberships()) CHECK(m.size() == 3);

  auto k13 = make_star_decomposition(Graph::star(3));
  CHECK(k13.stars.size() == 4);
  auto m = k13.memberships();
  CHECK(m[0].size() == 4);
  for (Vertex v = 1; v <= 3; ++v) CHECK(m[v].size() == 2);

  auto k2 = make_star_decomposition(Graph::complete(2));
  CHECK(k2.stars.size() == 2);
  for (const auto& mm : k2.memberships()) CHECK(mm.size() == 2);

  CHECK(code_of([] { make_star_decomposition(Graph(3, {{0, 1}})); }) == Errc::isolated_vertex);
}

TEST_CASE("realize_scheme") {
  auto c6 = realize_scheme(make_star_decomposition(Graph::cycle(6)), 7);
  CHECK(c6.q == 7);
  CHECK(c6.star_count() == 6);
  for (std::size_t i = 0; i < 6; ++i) CHECK(c6.stars[i].x == i + 1);
  CHECK(code_of([] { realize_scheme(make_star_decomposition(Graph::cycle(6)), 5); }) == Errc::field_too_small);
  CHECK(code_of([] { realize_scheme(make_star_decomposition(Graph::cycle(6)), 9); }) == Errc::precondition);
  auto k2 = realize_scheme(make_star_decomposition(Graph::complete(2)), 3);
  CHECK(k2.star_count() == 2);
  CHECK(enumerate_joint(k2).secrets() == 9);
}

TEST_CASE("K2 over GF(3)") {
  const auto g = Graph::complete(2);
  auto s = realize_scheme(make_star_decomposition(g), 3);
  auto jd = enumerate_joint(s);
  CHECK(jd.states() == 81);
  auto report = verify_perfect(g, jd);
  CHECK(report.perfect());
  CHECK(report.uniform);
  CHECK(report.ratio == Rational(1));
  CHECK(measured_ratio(jd) == 1);
  auto oracle = brute_force(s, maximal_independent_sets(g));
  CHECK(oracle.states == 81);
  CHECK(oracle.determines_all);
  CHECK(oracle.hides_all);
}

TEST_CASE("the basic star scheme is perfect") {
  auto s = basic_star_scheme();
  auto jd = enumerate_joint(s);
  auto report = verify_perfect(s.graph, jd);
  CHECK(report.perfect());
  CHECK(measured_ratio(jd) == 1);
  auto oracle = brute_force(s, maximal_independent_sets(s.graph));
  CHECK(oracle.determines_all);
  CHECK(oracle.hides_all);
}

TEST_CASE("small schemes agree with the brute-force oracle") {
  for (const auto& g : {Graph::path(3), Graph::path(4), Graph::star(3)}) {
    auto s = realize_scheme(make_star_decomposition(g), 5);
    if (s.star_count() > 4) continue;
    auto jd = enumerate_joint(s);
    auto report = verify_perfect(g, jd);
    auto oracle = brute_force(s, maximal_independent_sets(g));
    CHECK(report.determines_all() == oracle.determines_all);
    CHECK(report.hides_all() == oracle.hides_all);
    CHECK(report.perfect());
    CHECK(measured_ratio(jd) == structural_ratio(s));
  }
  auto p3 = realize_scheme(make_star_decomposition(Graph::path(3)), 5);
  auto faulty = share_randomness(p3, 0, 2);
  auto report = verify_perfect(p3.graph, enumerate_joint(faulty));
  auto oracle = brute_force(faulty, maximal_independent_sets(p3.graph));
  CHECK(report.hides_all() == oracle.hides_all);
  CHECK(report.determines_all() == oracle.determines_all);
  CHECK_FALSE(report.perfect());
}

TEST_CASE("6-cycle over GF(7)") {
  const auto g = Graph::cycle(6);
  auto s = realize_scheme(make_star_decomposition(g), 7);
  auto jd = enumerate_joint(s);
  CHECK(jd.secrets() == 49);
  auto report = verify_perfect(g, jd);
  CHECK(report.perfect());
  CHECK(report.uniform);
  CHECK(report.ratio == Rational(3, 2));
  CHECK(structural_ratio(s) == Rational(3, 2));
  CHECK(report.independent_sets.size() == maximal_independent_sets(g).size());
  for (auto sup : report.support) CHECK(sup == 343);
}

TEST_CASE("reused randomness breaks independence on the 6-cycle") {
  const auto g = Graph::cycle(6);
  auto s = share_randomness(realize_scheme(make_star_decomposition(g), 7), 0, 3);
  auto report = verify_perfect(g, enumerate_joint(s));
  CHECK(report.determines_all());
  CHECK_FALSE(report.hides_all());
  CHECK(report.first_failure().find("independent") != std::string::npos);
}

TEST_CASE("a missing star breaks determinism") {
  const auto g = Graph::cycle(6);
  auto skeleton = make_star_decomposition(g);
  skeleton.stars.pop_back();
  auto s = realize_scheme(skeleton, 7);
  auto report = verify_perfect(g, enumerate_joint(s));
  CHECK_FALSE(report.determines_all());
  CHECK_FALSE(report.perfect());
  CHECK_FALSE(report.ratio);
}

TEST_CASE("enumeration budget") {
  auto s = realize_scheme(make_star_decomposition(Graph::cycle(6)), 23);
  CHECK(code_of([&] { enumerate_joint(s); }) == Errc::budget_exceeded);
  CHECK(structural_ratio(s) == Rational(3, 2));
  CHECK(code_of([] { enumerate_joint(make_star_decomposition(Graph::cycle(6))); }) == Errc::precondition);
}

TEST_CASE("maximal independent sets") {
  auto c6 = maximal_independent_sets(Graph::cycle(6));
  CHECK(c6 == std::vector<VertexSet>{{0, 2, 4}, {0, 3}, {1, 3, 5}, {1, 4}, {2, 5}});
  CHECK(maximal_independent_sets(Graph::complete(4)).size() == 4);
  CHECK(maximal_independent_sets(Graph(3)) == std::vector<VertexSet>{{0, 1, 2}});
  CHECK(code_of([] { maximal_independent_sets(Graph::cycle(66)); }) == Errc::size_limit);
}
