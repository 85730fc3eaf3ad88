#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "girthforge/graph.hpp"
#include "girthforge/lp.hpp"
#include "girthforge/rational.hpp"

namespace girthforge {

inline constexpr std::size_t kEntropyVertexCap = 10;

enum class EntropyObjective { minmax, sum, set_query };

enum class StrictFamilies {
  /// Only constraints not implied by a kept one through Shannon monotonicity:
  /// minimal qualified supersets and minimal qualifying A, B.
  reduced,
  /// Every independent A inside qualified B, every disjoint triple.
  full,
};

struct EntropyLPConfig {
  EntropyObjective objective = EntropyObjective::minmax;
  VertexSet query;  // for set_query
  StrictFamilies families = StrictFamilies::reduced;
};

/// Variables f(S) for every nonempty S (index mask - 1), plus t for minmax
/// (the last variable). f(empty) = 0 is implicit.
LPProblem build_entropy_lp(const Graph& g, const EntropyLPConfig& config);

struct EntropyBound {
  Rational value;
  std::vector<Rational> f;  // indexed by subset mask; f[0] = 0
  LPSolution solution;
};

/// Throws Error(size_limit) above kEntropyVertexCap vertices.
EntropyBound solve_entropy_lp(const Graph& g, const EntropyLPConfig& config,
                              const LPOptions& options = {});

Rational entropy_lp_complexity(const Graph& g, EntropyObjective objective,
                               const LPOptions& options = {});

Rational entropy_lp_set_query(const Graph& g, const VertexSet& s, const LPOptions& options = {});

}  // namespace girthforge
