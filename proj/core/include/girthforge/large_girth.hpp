#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "girthforge/family.hpp"
#include "girthforge/pi_graph.hpp"
#include "girthforge/rational.hpp"

namespace girthforge {

/// How the factor pi_{k} on level k is obtained before building level k+1.
enum class FactorSource {
  /// Greedy growth directly on G_k so that G_k + pi_k has girth > target.
  host_greedy,
  /// A π-graph on |H| vertices with girth > target * 3|G_k|, read through the
  /// canonical labeling of H. Sound at any size but needs astronomically
  /// large graphs; fails with infeasible_at_budget at desk scale.
  relabeled_pi_graph,
};

/// Searches upward from small sizes and verifies girth directly.
struct PracticalPolicy {
  std::uint64_t seed = 0;
  std::size_t retries = 10;
  std::size_t max_vertices = 2'000'000;
  FactorSource factor_source = FactorSource::host_greedy;
  unsigned jobs = 1;
};

struct LevelReport {
  std::size_t level = 0;
  std::size_t vertices = 0;
  std::size_t copies = 0;  // 0 for the base cycle
  std::optional<std::size_t> girth;
  std::optional<std::size_t> union_girth;  // girth of G + pi at this level
};

struct LargeGirthResult {
  GdGraph graph;                      // level d, girth > target
  std::size_t target = 0;
  std::optional<std::size_t> girth;
  GdGraph previous;                   // level d-1 (d >= 3)
  std::vector<std::uint32_t> previous_pi;  // graph == H(m, previous, previous_pi)
  bool projection_ok = false;         // graph maps onto previous + pi
  std::optional<PiGraphBuild> base;   // the π-graph behind level 2 (d >= 3)
  std::vector<LevelReport> levels;
};

/// Level-d member with girth > target (target > 3). Throws
/// Error(infeasible_at_budget) naming the level that outgrew max_vertices.
LargeGirthResult build_large_girth(std::size_t d, std::size_t target, const PracticalPolicy& policy = {});

struct SizeEstimate {
  std::size_t level = 0;
  std::string formula;
  std::optional<BigInt> value;  // when small enough to write down
  std::optional<BigInt> log2;   // exponent of the leading power of two, when known
};

/// Sizes at which the recursion provably succeeds, without building anything:
/// N_2 = 2 * 2^(12g+4), N_3 = 12 * 2^(12g+4), N_{k+1} = 12 * 2^(36 g N_k).
/// For d = 2 the cycle itself suffices: the smallest even length > g.
std::vector<SizeEstimate> guaranteed_sizes(std::size_t d, std::size_t target);

}  // namespace girthforge
