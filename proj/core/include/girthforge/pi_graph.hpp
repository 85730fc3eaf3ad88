#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "girthforge/family.hpp"
#include "girthforge/graph.hpp"
#include "girthforge/rational.hpp"

namespace girthforge {

/// 3-regular bipartite graph on a_0..a_{n-1}, b_0..b_{n-1}: a_i is adjacent to
/// b_i, b_{i+1} and b_{pi[i]} (indices mod n). Ids follow the Hamiltonian
/// cycle: a_i = 2i and b_i = 2i - 1 (mod 2n), so the cycle is 0, 1, ..., 2n-1.
struct PiGraph {
  std::size_t n = 0;
  std::vector<std::uint32_t> pi;
  Graph graph;

  static Vertex a(std::size_t n, std::size_t i) { return static_cast<Vertex>(2 * (i % n)); }
  static Vertex b(std::size_t n, std::size_t j) { return static_cast<Vertex>((2 * (j % n) + 2 * n - 1) % (2 * n)); }
};

/// Builds the graph for a permutation. Throws not_bijection, or invalid_graph
/// when a factor edge coincides with a cycle edge.
PiGraph make_pi_graph(std::vector<std::uint32_t> pi);

/// Checks 3-regularity, the two classes and the cycle + matching form.
std::optional<std::string> check_pi_graph(const PiGraph& p);

/// The cycle C_{2n} underlying a π-graph, as a level-2 family member, and
/// the A-index to B-index permutation that reproduces the factor on it.
GdGraph pi_base_cycle(const PiGraph& p);
std::vector<std::uint32_t> pi_side_permutation(const PiGraph& p);

struct PiGraphOptions {
  std::size_t max_retries = 10;
  /// Run the interval surgery on stalled attempts once plain retries fail.
  bool surgery = true;
  /// End the greedy phase once fewer than this many a's are unmatched; the
  /// original argument stops below 2^g. Unset runs the greedy to exhaustion.
  std::optional<std::size_t> stop_below;
};

struct SurgerySite {
  std::size_t u = 0;  // b_u gains the new a*
  std::size_t l = 0;  // a_l gains the new b*
  std::size_t unmatched_a = 0;
  std::size_t unmatched_b = 0;
};

struct PiGraphBuild {
  PiGraph result;
  std::size_t target = 0;  // girth > target is the phase-1 guarantee
  std::optional<std::size_t> girth;
  std::size_t attempts = 0;
  std::uint64_t attempt_seed = 0;
  std::size_t leftover = 0;  // unmatched pairs repaired by surgery
  bool surgery = false;
  std::vector<SurgerySite> sites;
  /// girth > target without surgery, girth > target / 3 after it.
  bool guarantee_met = false;
};

/// Greedy factor growth on a cycle of 2n vertices keeping girth > g, with
/// seeded restarts and the interval surgery as fallback. Throws
/// Error(retries_exhausted) when no attempt yields a π-graph; Error(precondition)
/// for g <= 3 or n < 3.
PiGraphBuild build_pi_graph(std::size_t g, std::size_t n, std::uint64_t seed,
                            const PiGraphOptions& options = {});

/// 2^(12g + 4): the size above which the construction provably succeeds.
BigInt guaranteed_n(std::size_t g);

/// Greedy bijection pi from the A side to the B side of `host` such that
/// pi_union(host, pi) has girth > g, tried with `retries` seeded restarts.
/// Works on any level; this is the factor growth step with an arbitrary host.
std::optional<std::vector<std::uint32_t>> grow_girth_factor(const GdGraph& host, std::size_t g,
                                                            std::uint64_t seed, std::size_t retries);

}  // namespace girthforge
