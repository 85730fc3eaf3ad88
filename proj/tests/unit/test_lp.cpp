#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "girthforge/lp.hpp"
#include "girthforge/rational.hpp"

using namespace girthforge;

TEST_CASE("single bounded variable") {
  LPProblem p;
  auto x = p.add_variable("x");
  p.add_constraint({{x, 1}}, Sense::ge, Rational(3, 2));
  p.set_objective({{x, 1}});
  for (auto strategy : {LPStrategy::exact_only, LPStrategy::float_then_exact}) {
    auto s = solve_lp(p, {strategy});
    REQUIRE(s.status == LPStatus::optimal);
    CHECK(s.objective == Rational(3, 2));
    CHECK(s.primal[x] == Rational(3, 2));
    CHECK_FALSE(check_optimality(p, s));
  }
}

TEST_CASE("infeasible and unbounded problems") {
  LPProblem inf;
  auto x = inf.add_variable("x");
  inf.add_constraint({{x, 1}}, Sense::ge, 1);
  inf.add_constraint({{x, 1}}, Sense::le, 0);
  CHECK(solve_lp(inf).status == LPStatus::infeasible);
  CHECK(solve_lp(inf, {LPStrategy::exact_only}).status == LPStatus::infeasible);

  LPProblem unb;
  auto y = unb.add_variable("y", std::nullopt);
  unb.set_objective({{y, -1}});
  CHECK(solve_lp(unb).status == LPStatus::unbounded);
  CHECK(solve_lp(unb, {LPStrategy::exact_only}).status == LPStatus::unbounded);
}

TEST_CASE("equality rows and free variables") {
  LPProblem p;
  auto x = p.add_variable("x", std::nullopt);
  auto y = p.add_variable("y");
  p.add_constraint({{x, 1}, {y, 1}}, Sense::eq, 4);
  p.add_constraint({{x, 1}, {y, -1}}, Sense::ge, Rational(-7, 3));
  p.set_objective({{x, 1}, {y, 2}});
  auto s = solve_lp(p);
  REQUIRE(s.status == LPStatus::optimal);
  CHECK(s.primal[x] == Rational(4));
  CHECK(s.objective == Rational(4));
  CHECK_FALSE(check_optimality(p, s));
}

TEST_CASE("a perturbed optimum is rejected by the certificate check") {
  LPProblem p;
  auto x = p.add_variable("x");
  auto y = p.add_variable("y");
  p.add_constraint({{x, 1}, {y, 1}}, Sense::ge, 2);
  p.set_objective({{x, 1}, {y, 3}});
  auto s = solve_lp(p);
  REQUIRE(s.status == LPStatus::optimal);
  REQUIRE_FALSE(check_optimality(p, s));
  auto bad = s;
  bad.objective += 1;
  CHECK(check_optimality(p, bad));
  bad = s;
  bad.primal[x] -= Rational(1, 2);
  CHECK(check_optimality(p, bad));
}

TEST_CASE("exact and float-accelerated routes agree on random covering LPs") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> coef(0, 4), rhs(1, 9), cost(1, 6);
  for (int trial = 0; trial < 40; ++trial) {
    LPProblem p;
    const std::size_t n = 3 + trial % 5, m = 2 + trial % 6;
    for (std::size_t j = 0; j < n; ++j) p.add_variable("x" + std::to_string(j));
    for (std::size_t i = 0; i < m; ++i) {
      LinearExpr row;
      for (std::size_t j = 0; j < n; ++j)
        if (int c = coef(rng)) row.emplace_back(j, Rational(c, 1 + trial % 3));
      if (row.empty()) row.emplace_back(0, 1);
      p.add_constraint(std::move(row), Sense::ge, rhs(rng));
    }
    LinearExpr obj;
    for (std::size_t j = 0; j < n; ++j) obj.emplace_back(j, cost(rng));
    p.set_objective(std::move(obj));
    auto exact = solve_lp(p, {LPStrategy::exact_only});
    auto fast = solve_lp(p, {LPStrategy::float_then_exact});
    REQUIRE(exact.status == LPStatus::optimal);
    REQUIRE(fast.status == LPStatus::optimal);
    CHECK(exact.objective == fast.objective);
    CHECK_FALSE(check_optimality(p, exact));
    CHECK_FALSE(check_optimality(p, fast));
  }
}

TEST_CASE("degenerate problems terminate under the Bland fallback") {
  LPProblem p;
  const std::size_t n = 6;
  for (std::size_t j = 0; j < n; ++j) p.add_variable("x" + std::to_string(j));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) p.add_constraint({{i, 1}, {j, 1}}, Sense::ge, 0);
  p.add_constraint({{0, 1}, {1, 1}, {2, 1}}, Sense::ge, 1);
  LinearExpr obj;
  for (std::size_t j = 0; j < n; ++j) obj.emplace_back(j, 1);
  p.set_objective(obj);
  auto s = solve_lp(p, {LPStrategy::exact_only, 1});
  REQUIRE(s.status == LPStatus::optimal);
  CHECK(s.objective == 1);
}

TEST_CASE("unreduced input coefficients are accepted") {
  LPProblem p;
  auto x = p.add_variable("x", Rational(0, 4));
  p.add_constraint({{x, Rational(2, 2)}}, Sense::ge, Rational(6, 4));
  p.set_objective({{x, Rational(3, 3)}});
  auto s = solve_lp(p, {LPStrategy::exact_only});
  REQUIRE(s.status == LPStatus::optimal);
  CHECK(s.objective == Rational(3, 2));
  CHECK_FALSE(check_optimality(p, s));
}

TEST_CASE("rational helpers") {
  CHECK(to_string(Rational(3, 2)) == "3/2");
  CHECK(to_string(Rational(6)) == "6");
  CHECK(to_string(parse_rational("6/3")) == "2");
  CHECK(parse_rational("-4/6") == Rational(-2, 3));
  CHECK(parse_rational("1.5") == Rational(3, 2));
  CHECK(to_decimal(Rational(2, 3)) == "0.666667");
  CHECK(rationalize(0.3333333333) == Rational(1, 3));
}
