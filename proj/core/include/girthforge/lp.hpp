#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "girthforge/rational.hpp"

namespace girthforge {

enum class Sense { le, ge, eq };

using LinearExpr = std::vector<std::pair<std::size_t, Rational>>;

struct LPConstraint {
  LinearExpr coefs;
  Sense sense = Sense::ge;
  Rational rhs;
  std::string name;
};

struct LPVariable {
  std::string name;
  std::optional<Rational> lower = Rational(0);
  std::optional<Rational> upper;
};

/// Minimize objective·x subject to sparse linear constraints and variable
/// bounds. A variable with no lower bound is created by passing nullopt.
class LPProblem {
 public:
  std::size_t add_variable(std::string name, std::optional<Rational> lower = Rational(0),
                           std::optional<Rational> upper = std::nullopt);
  void add_constraint(LinearExpr coefs, Sense sense, Rational rhs, std::string name = {});
  void set_objective(LinearExpr coefs);

  std::size_t variable_count() const noexcept { return variables_.size(); }
  std::size_t constraint_count() const noexcept { return constraints_.size(); }
  const std::vector<LPVariable>& variables() const noexcept { return variables_; }
  const std::vector<LPConstraint>& constraints() const noexcept { return constraints_; }
  const LinearExpr& objective() const noexcept { return objective_; }

  /// Objective value of a full assignment.
  Rational evaluate(const std::vector<Rational>& x) const;

 private:
  std::vector<LPVariable> variables_;
  std::vector<LPConstraint> constraints_;
  LinearExpr objective_;
};

enum class LPStatus { optimal, infeasible, unbounded };

const char* status_name(LPStatus s) noexcept;

/// `dual` has one multiplier per constraint with the minimization sign
/// convention: y >= 0 on >= rows, y <= 0 on <= rows, free on = rows.
struct LPSolution {
  LPStatus status = LPStatus::infeasible;
  Rational objective;
  std::vector<Rational> primal;
  std::vector<Rational> dual;
  std::size_t pivots = 0;
  bool float_accelerated = false;
};

enum class LPStrategy {
  automatic,
  exact_only,        // rational simplex from the slack basis
  float_then_exact,  // double simplex, then exact certification or exact repair
};

struct LPOptions {
  LPStrategy strategy = LPStrategy::automatic;
  /// Consecutive degenerate pivots tolerated before switching to Bland's rule.
  std::size_t degenerate_limit = 50;
};

LPSolution solve_lp(const LPProblem& p, const LPOptions& options = {});

/// Exact optimality check of a claimed optimum: primal feasibility, dual sign
/// conditions, reduced costs consistent with the bounds, and zero duality gap.
/// Returns the first violated condition, or nullopt when certified.
std::optional<std::string> check_optimality(const LPProblem& p, const LPSolution& s);

}  // namespace girthforge
