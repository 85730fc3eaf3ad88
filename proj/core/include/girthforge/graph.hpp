#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace girthforge {

using Vertex = std::uint32_t;

/// Sorted, duplicate-free vertex ids. All set-valued parameters use this form
/// so iteration order is deterministic.
using VertexSet = std::vector<Vertex>;

/// Sorts and deduplicates in place, returning the result.
VertexSet make_set(std::vector<Vertex> vertices);
VertexSet set_union(const VertexSet& a, const VertexSet& b);
bool set_contains(const VertexSet& s, Vertex v);
bool sets_disjoint(const VertexSet& a, const VertexSet& b);
bool is_subset(const VertexSet& sub, const VertexSet& super);

struct Edge {
  Vertex u;
  Vertex v;

  /// Normalized so that u < v.
  static Edge of(Vertex a, Vertex b) { return a < b ? Edge{a, b} : Edge{b, a}; }
  auto operator<=>(const Edge&) const = default;
};

/// Undirected simple graph on vertices [0, n) with CSR adjacency.
/// Immutable after construction; neighbor lists are sorted.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t n) : Graph(n, {}) {}

  /// Throws Error(invalid_graph) on self-loops, duplicate edges or ids >= n.
  Graph(std::size_t n, std::vector<Edge> edges);

  static Graph cycle(std::size_t n);
  static Graph path(std::size_t n);
  static Graph complete(std::size_t n);
  static Graph complete_bipartite(std::size_t left, std::size_t right);
  static Graph star(std::size_t leaves);

  std::size_t vertex_count() const noexcept { return n_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }

  std::span<const Vertex> neighbors(Vertex v) const {
    return {targets_.data() + offsets_[v], targets_.data() + offsets_[v + 1]};
  }
  std::size_t degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }
  std::size_t max_degree() const;
  bool adjacent(Vertex u, Vertex v) const;
  bool contains(Vertex v) const noexcept { return v < n_; }

  Graph without_edge(Edge e) const;
  Graph with_edges(std::span<const Edge> extra) const;

  bool operator==(const Graph& other) const {
    return n_ == other.n_ && edges_ == other.edges_;
  }

 private:
  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_{0};
  std::vector<Vertex> targets_;
};

struct Bipartition {
  VertexSet a;
  VertexSet b;
};

/// A 1-factor from B into A: pairs (b, a) with b in B and a in A, all b
/// distinct, all a distinct, and b_i a_j an edge exactly when i == j.
struct OneFactor {
  std::vector<std::pair<Vertex, Vertex>> pairs;

  VertexSet b_side() const;
  VertexSet a_side() const;
};

enum class FactorVerdict {
  ok,
  unsaturated,     // B is not exactly the set of paired b's
  outside_set,     // a paired a is not in A (or b not in B)
  repeated_vertex, // some b or a used twice
  missing_edge,    // a paired (b, a) is not an edge
  forbidden_edge,  // (b_i, a_j), i != j, is an edge
};

std::string_view verdict_name(FactorVerdict v) noexcept;

struct FactorCheck {
  FactorVerdict verdict = FactorVerdict::ok;
  Vertex b = 0;
  Vertex a = 0;

  explicit operator bool() const noexcept { return verdict == FactorVerdict::ok; }
};

/// Shortest cycle length; nullopt when the graph is a forest. Exact: for every
/// edge uv the distance u -> v with uv removed, plus one. `jobs` > 1 splits the
/// edge scan across threads; the result does not depend on it.
std::optional<std::size_t> girth(const Graph& g, unsigned jobs = 1);

/// 2-colors every component (smallest id of each component goes to A).
/// Throws Error(not_bipartite) with an odd closed walk as witness.
Bipartition bipartition(const Graph& g);

/// Confirms d-regularity and bipartiteness. Throws Error(not_regular) with
/// witness {vertex, degree}, or Error(not_bipartite).
Bipartition check_regular_bipartite(const Graph& g, std::size_t d);

/// True iff no edge has both endpoints in `s`. Throws on out-of-range ids.
bool is_independent(const Graph& g, std::span<const Vertex> s);

/// Qualified means "contains an edge".
inline bool is_qualified(const Graph& g, std::span<const Vertex> s) {
  return !is_independent(g, s);
}

FactorCheck verify_one_factor(const Graph& g, const VertexSet& b_set,
                              const VertexSet& a_set, const OneFactor& f);

inline constexpr std::size_t kOneFactorSearchCap = 20;

/// Backtracking search for a 1-factor from B into A. Throws Error(size_limit)
/// when |B| exceeds kOneFactorSearchCap.
std::optional<OneFactor> find_one_factor(const Graph& g, const VertexSet& b_set,
                                         const VertexSet& a_set);

/// True iff phi maps every edge of h onto an edge of g.
bool check_homomorphism(const Graph& h, const Graph& g, std::span<const Vertex> phi);

/// Breadth-first distances from `sources`, stopping after `max_depth` layers.
/// Unreached vertices get -1.
std::vector<int> bfs_distances(const Graph& g, std::span<const Vertex> sources,
                               int max_depth = -1);

/// Edge-list text format: "<n> <m>" then m lines "<u> <v>"; '#' lines are
/// comments. Output is canonical (edges sorted, u < v).
Graph read_edge_list(std::istream& in);
void write_edge_list(std::ostream& out, const Graph& g);
Graph load_edge_list(const std::string& path);
void save_edge_list(const std::string& path, const Graph& g);

}  // namespace girthforge
