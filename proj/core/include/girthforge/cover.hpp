#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "girthforge/graph.hpp"
#include "girthforge/lp.hpp"
#include "girthforge/rational.hpp"

namespace girthforge {

/// A weighted complete multipartite subgraph: every pair of vertices in
/// different parts must be an edge of the host graph. A star is the two-part
/// piece {{center}, leaves}.
struct CoverPiece {
  std::vector<VertexSet> parts;
  Rational weight;

  VertexSet vertices() const;
  bool covers(Edge e) const;
  bool is_star() const { return parts.size() == 2 && parts[0].size() == 1; }
};

struct CoverSolution {
  std::vector<CoverPiece> pieces;
  Rational max_load;
  std::vector<Rational> edge_coverage;  // indexed like Graph::edges()
  std::vector<Rational> vertex_load;
};

/// Minimum over fractional star covers of the maximum vertex load, with an
/// explicit weighted star family realizing it.
CoverSolution star_cover_minmax(const Graph& g, const LPOptions& options = {});

inline constexpr std::size_t kMultipartiteVertexCap = 10;

/// Same objective over all spanned complete multipartite subgraphs. For each
/// vertex subset S the parts are the components of the complement of G[S].
/// Throws Error(size_limit) above kMultipartiteVertexCap vertices.
CoverSolution multipartite_cover_minmax(const Graph& g, const LPOptions& options = {});

enum class CoverVerdict { ok, invalid_piece, uncovered_edge, load_mismatch };

std::string_view verdict_name(CoverVerdict v) noexcept;

struct CoverReport {
  CoverVerdict verdict = CoverVerdict::ok;
  Edge edge{0, 0};       // offending edge for uncovered_edge / invalid_piece
  std::size_t piece = 0;  // offending piece for invalid_piece
  Rational max_load;
  std::vector<Rational> edge_coverage;
  std::vector<Rational> vertex_load;

  explicit operator bool() const noexcept { return verdict == CoverVerdict::ok; }
};

/// Recomputes coverage and loads exactly; the claimed `max_load` must match.
CoverReport verify_cover(const Graph& g, const CoverSolution& c);

/// (d + 1) / 2.
Rational stinson_upper(std::size_t d);

}  // namespace girthforge
