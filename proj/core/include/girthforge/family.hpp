#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "girthforge/graph.hpp"

namespace girthforge {

/// A member of the recursive d-regular bipartite family together with the
/// metadata that witnesses membership.
///
/// Level 2 is an even cycle; `cycle_order` lists its vertices around the
/// cycle starting from an A vertex. Level d+1 consists of `copies.size()`
/// level-d members laid out on consecutive id ranges; junction i is a
/// 1-factor from B^i into A^{i+1} (indices mod the copy count). `children[i]`
/// is copy i in local labels: local v is global `copies[i].first + v`.
struct GdGraph {
  Graph graph;
  std::size_t level = 0;  // 0 when no recursion metadata is attached
  std::vector<std::size_t> part_sizes;  // n_2 .. n_d, taken from the first copy
  Bipartition sides;
  std::vector<Vertex> cycle_order;
  std::vector<std::pair<Vertex, Vertex>> copies;
  std::vector<OneFactor> junctions;
  std::vector<GdGraph> children;
  /// False when some step used fewer than 5 copies (allowed by build_h).
  bool in_family = true;

  bool has_structure() const noexcept { return level >= 2; }
  std::size_t copy_size() const { return copies.empty() ? 0 : copies[0].second - copies[0].first; }
  /// Wraps a bare graph; has_structure() is false.
  static GdGraph bare(Graph g);
};

/// Even cycle on n >= 6 vertices, A = even ids. Throws Error(bad_size).
GdGraph build_cycle(std::size_t n);

/// Caller-supplied junction factors in global ids of the extended graph.
struct ExplicitFactors {
  std::vector<OneFactor> junctions;
};
/// Every junction an independent uniform bijection derived from the seed.
struct RandomFactors {
  std::uint64_t seed = 0;
};
/// Every junction joins B^i[pi[k]] to A^{i+1}[k], where X[k] is the k-th
/// smallest id of that side of the copy.
struct InducedFactors {
  std::vector<std::uint32_t> pi;
};
using FactorChoice = std::variant<ExplicitFactors, RandomFactors, InducedFactors>;

/// Joins m >= 5 equal-size, equal-level members into a level d+1 member.
/// Copies need not be isomorphic. Throws Error with size_mismatch,
/// level_mismatch, too_few_copies, not_bijection or structure_unknown.
GdGraph extend_family(const std::vector<GdGraph>& copies, const FactorChoice& factors);

/// H(m, G, pi): m copies of G with every junction induced by pi (A-index to
/// B-index). m >= 2; family membership is flagged only for m >= 5.
GdGraph build_h(std::size_t m, const GdGraph& g, const std::vector<std::uint32_t>& pi);

/// G plus the edges A[k] - B[pi[k]]; an edge already in G is kept once.
Graph pi_union(const GdGraph& g, const std::vector<std::uint32_t>& pi);

/// Maps each vertex of a build_h result to its vertex in the base graph.
std::vector<Vertex> copy_projection(const GdGraph& h);

/// Old id of the vertex at each new position: copy by copy, recursively, with
/// A on even and B on odd positions. Throws Error(structure_unknown).
std::vector<Vertex> canonical_order(const GdGraph& g);

/// Relabels along canonical_order and checks that every edge joins positions
/// at circular distance <= 3 * copy size (1 for a cycle).
GdGraph canonical_relabel(const GdGraph& g);

/// Largest circular distance |i - j| (mod n) over the edges.
std::size_t max_circular_distance(const Graph& g);

/// Full consistency check of the metadata against the graph: regularity,
/// sides, copy ranges, junction factors, and each child against its induced
/// subgraph. Returns a description of the first problem found.
std::optional<std::string> check_structure(const GdGraph& g);

/// Permutation of B-indices as a list, validated: throws size_mismatch when
/// the length differs from `sides`, not_bijection otherwise.
void check_side_permutation(const std::vector<std::uint32_t>& pi, std::size_t side);

}  // namespace girthforge
