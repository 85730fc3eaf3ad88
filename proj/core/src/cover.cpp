#include "girthforge/cover.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

#include "girthforge/error.hpp"

namespace girthforge {

VertexSet CoverPiece::vertices() const {
  VertexSet all;
  for (const auto& p : parts) all = set_union(all, p);
  return all;
}

bool CoverPiece::covers(Edge e) const {
  int pu = -1, pv = -1;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (set_contains(parts[i], e.u)) pu = static_cast<int>(i);
    if (set_contains(parts[i], e.v)) pv = static_cast<int>(i);
  }
  return pu >= 0 && pv >= 0 && pu != pv;
}

std::string_view verdict_name(CoverVerdict v) noexcept {
  switch (v) {
    case CoverVerdict::ok: return "OK";
    case CoverVerdict::invalid_piece: return "INVALID_PIECE";
    case CoverVerdict::uncovered_edge: return "UNCOVERED_EDGE";
    case CoverVerdict::load_mismatch: return "LOAD_MISMATCH";
  }
  return "UNKNOWN";
}

Rational stinson_upper(std::size_t d) {
  Rational r(static_cast<long>(d) + 1, 2);
  r.canonicalize();
  return r;
}

namespace {

// Fills coverage and loads from the pieces.
void tally(const Graph& g, CoverSolution& c) {
  c.edge_coverage.assign(g.edge_count(), 0);
  c.vertex_load.assign(g.vertex_count(), 0);
  for (const auto& piece : c.pieces) {
    for (Vertex v : piece.vertices()) c.vertex_load[v] += piece.weight;
    for (std::size_t i = 0; i < g.edge_count(); ++i)
      if (piece.covers(g.edges()[i])) c.edge_coverage[i] += piece.weight;
  }
  c.max_load = 0;
  for (const auto& l : c.vertex_load) c.max_load = std::max(c.max_load, l);
}

}  // namespace

CoverSolution star_cover_minmax(const Graph& g, const LPOptions& options) {
  const auto& edges = g.edges();
  LPProblem lp;
  // y[2i] belongs to edges[i].u, y[2i+1] to edges[i].v.
  std::vector<std::size_t> y(2 * edges.size());
  for (std::size_t i = 0; i < edges.size(); ++i) {
    y[2 * i] = lp.add_variable("y" + std::to_string(edges[i].u) + "_" + std::to_string(i));
    y[2 * i + 1] = lp.add_variable("y" + std::to_string(edges[i].v) + "_" + std::to_string(i));
  }
  std::vector<std::size_t> c(g.vertex_count());
  for (Vertex v = 0; v < g.vertex_count(); ++v) c[v] = lp.add_variable("c" + std::to_string(v));
  const std::size_t t = lp.add_variable("t");

  std::vector<LinearExpr> load(g.vertex_count());
  for (Vertex v = 0; v < g.vertex_count(); ++v) load[v].emplace_back(t, 1), load[v].emplace_back(c[v], -1);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const auto [u, v] = edges[i];
    lp.add_constraint({{y[2 * i], 1}, {y[2 * i + 1], 1}}, Sense::ge, 1, "cover_" + std::to_string(i));
    lp.add_constraint({{c[u], 1}, {y[2 * i], -1}}, Sense::ge, 0);
    lp.add_constraint({{c[v], 1}, {y[2 * i + 1], -1}}, Sense::ge, 0);
    load[v].emplace_back(y[2 * i], -1);      // star at u covering uv contains v
    load[u].emplace_back(y[2 * i + 1], -1);  // star at v covering uv contains u
  }
  for (Vertex v = 0; v < g.vertex_count(); ++v)
    lp.add_constraint(std::move(load[v]), Sense::ge, 0, "load_" + std::to_string(v));
  lp.set_objective({{t, 1}});

  CoverSolution out;
  if (edges.empty()) {
    tally(g, out);
    return out;
  }
  auto sol = solve_lp(lp, options);
  if (sol.status != LPStatus::optimal)
    throw Error(Errc::precondition, "star cover LP did not reach an optimum");

  // Nest each center's edges by decreasing y; consecutive differences give
  // the star weights.
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    std::vector<std::pair<Rational, Vertex>> incident;
    for (std::size_t i = 0; i < edges.size(); ++i) {
      if (edges[i].u == v) incident.emplace_back(sol.primal[y[2 * i]], edges[i].v);
      if (edges[i].v == v) incident.emplace_back(sol.primal[y[2 * i + 1]], edges[i].u);
    }
    std::sort(incident.begin(), incident.end(),
              [](const auto& a, const auto& b) { return a.first > b.first || (a.first == b.first && a.second < b.second); });
    std::vector<Vertex> leaves;
    for (std::size_t j = 0; j < incident.size(); ++j) {
      leaves.push_back(incident[j].second);
      Rational next = j + 1 < incident.size() ? incident[j + 1].first : Rational(0);
      Rational w = incident[j].first - next;
      if (sgn(w) > 0) out.pieces.push_back({{{v}, make_set(leaves)}, w});
    }
  }
  tally(g, out);
  return out;
}

CoverSolution multipartite_cover_minmax(const Graph& g, const LPOptions& options) {
  const std::size_t n = g.vertex_count();
  if (n > kMultipartiteVertexCap)
    throw Error(Errc::size_limit, "multipartite cover enumerates subsets of at most " +
                                      std::to_string(kMultipartiteVertexCap) + " vertices");
  std::vector<CoverPiece> candidates;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    if (std::popcount(mask) < 2) continue;
    std::vector<Vertex> members;
    for (Vertex v = 0; v < n; ++v)
      if (mask >> v & 1) members.push_back(v);
    // Components of the complement of G[S].
    std::vector<int> comp(members.size(), -1);
    int count = 0;
    for (std::size_t s = 0; s < members.size(); ++s) {
      if (comp[s] >= 0) continue;
      comp[s] = count;
      std::vector<std::size_t> stack{s};
      while (!stack.empty()) {
        std::size_t x = stack.back();
        stack.pop_back();
        for (std::size_t y = 0; y < members.size(); ++y)
          if (comp[y] < 0 && y != x && !g.adjacent(members[x], members[y])) {
            comp[y] = count;
            stack.push_back(y);
          }
      }
      ++count;
    }
    if (count < 2) continue;
    CoverPiece piece;
    piece.parts.resize(static_cast<std::size_t>(count));
    for (std::size_t s = 0; s < members.size(); ++s) piece.parts[static_cast<std::size_t>(comp[s])].push_back(members[s]);
    candidates.push_back(std::move(piece));
  }

  LPProblem lp;
  std::vector<std::size_t> w(candidates.size());
  for (std::size_t i = 0; i < candidates.size(); ++i) w[i] = lp.add_variable("w" + std::to_string(i));
  const std::size_t t = lp.add_variable("t");
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    LinearExpr row;
    for (std::size_t i = 0; i < candidates.size(); ++i)
      if (candidates[i].covers(g.edges()[e])) row.emplace_back(w[i], 1);
    lp.add_constraint(std::move(row), Sense::ge, 1, "cover_" + std::to_string(e));
  }
  for (Vertex v = 0; v < n; ++v) {
    LinearExpr row{{t, 1}};
    for (std::size_t i = 0; i < candidates.size(); ++i)
      if (set_contains(candidates[i].vertices(), v)) row.emplace_back(w[i], -1);
    lp.add_constraint(std::move(row), Sense::ge, 0, "load_" + std::to_string(v));
  }
  lp.set_objective({{t, 1}});

  CoverSolution out;
  if (g.edge_count() == 0) {
    tally(g, out);
    return out;
  }
  auto sol = solve_lp(lp, options);
  if (sol.status != LPStatus::optimal)
    throw Error(Errc::precondition, "multipartite cover LP did not reach an optimum");
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (sgn(sol.primal[w[i]]) == 0) continue;
    candidates[i].weight = sol.primal[w[i]];
    out.pieces.push_back(std::move(candidates[i]));
  }
  tally(g, out);
  return out;
}

CoverReport verify_cover(const Graph& g, const CoverSolution& c) {
  CoverReport report;
  for (std::size_t i = 0; i < c.pieces.size(); ++i) {
    const auto& parts = c.pieces[i].parts;
    for (std::size_t a = 0; a < parts.size(); ++a)
      for (std::size_t b = a + 1; b < parts.size(); ++b)
        for (Vertex u : parts[a])
          for (Vertex v : parts[b])
            if (!g.adjacent(u, v) || sgn(c.pieces[i].weight) < 0) {
              report.verdict = CoverVerdict::invalid_piece;
              report.edge = Edge::of(u, v);
              report.piece = i;
              return report;
            }
    for (std::size_t a = 0; a < parts.size(); ++a)
      for (std::size_t b = a + 1; b < parts.size(); ++b)
        if (!sets_disjoint(parts[a], parts[b])) {
          report.verdict = CoverVerdict::invalid_piece;
          report.piece = i;
          return report;
        }
  }
  CoverSolution recomputed{c.pieces, 0, {}, {}};
  tally(g, recomputed);
  report.max_load = recomputed.max_load;
  report.edge_coverage = recomputed.edge_coverage;
  report.vertex_load = recomputed.vertex_load;
  for (std::size_t e = 0; e < g.edge_count(); ++e)
    if (recomputed.edge_coverage[e] < 1) {
      report.verdict = CoverVerdict::uncovered_edge;
      report.edge = g.edges()[e];
      return report;
    }
  if (recomputed.max_load != c.max_load) report.verdict = CoverVerdict::load_mismatch;
  return report;
}

}  // namespace girthforge
