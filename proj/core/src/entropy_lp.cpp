#include "girthforge/entropy_lp.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <set>

#include "girthforge/error.hpp"

namespace girthforge {

namespace {

using Mask = std::uint32_t;
using Row = std::vector<std::pair<Mask, int>>;  // sorted by mask, nonzero

class RowCollector {
 public:
  void add(std::initializer_list<std::pair<Mask, int>> terms, int rhs) {
    std::map<Mask, int> acc;
    for (auto [mask, c] : terms)
      if (mask != 0) acc[mask] += c;
    Row row;
    for (auto [mask, c] : acc)
      if (c != 0) row.emplace_back(mask, c);
    if (row.empty()) return;
    rows_.emplace(std::move(row), rhs);
  }

  const std::set<std::pair<Row, int>>& rows() const { return rows_; }

 private:
  std::set<std::pair<Row, int>> rows_;
};

struct Adjacency {
  std::vector<Mask> adj;

  explicit Adjacency(const Graph& g) : adj(g.vertex_count(), 0) {
    for (const auto& e : g.edges()) {
      adj[e.u] |= Mask{1} << e.v;
      adj[e.v] |= Mask{1} << e.u;
    }
  }

  bool independent(Mask s) const {
    for (Mask rest = s; rest; rest &= rest - 1)
      if (adj[std::countr_zero(rest)] & s) return false;
    return true;
  }

  Mask neighborhood(Mask s) const {
    Mask out = 0;
    for (Mask rest = s; rest; rest &= rest - 1) out |= adj[std::countr_zero(rest)];
    return out;
  }

  // Minimal Q, disjoint from independent C, with C u Q qualified.
  std::vector<Mask> minimal_qualifiers(Mask c) const {
    const std::size_t n = adj.size();
    const Mask nb = neighborhood(c);
    std::vector<Mask> out;
    for (std::size_t v = 0; v < n; ++v) {
      Mask bit = Mask{1} << v;
      if ((c & bit) == 0 && (nb & bit)) out.push_back(bit);
    }
    for (std::size_t u = 0; u < n; ++u)
      for (std::size_t v = u + 1; v < n; ++v) {
        Mask pair = (Mask{1} << u) | (Mask{1} << v);
        if ((adj[u] >> v & 1) && (pair & (c | nb)) == 0) out.push_back(pair);
      }
    return out;
  }
};

void shannon_rows(std::size_t n, RowCollector& rows) {
  const Mask full = (Mask{1} << n) - 1;
  for (std::size_t v = 0; v < n; ++v) rows.add({{full, 1}, {full & ~(Mask{1} << v), -1}}, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      Mask bi = Mask{1} << i, bj = Mask{1} << j;
      Mask rest = full & ~(bi | bj);
      // Enumerate every K inside rest.
      for (Mask k = rest;; k = (k - 1) & rest) {
        rows.add({{k | bi, 1}, {k | bj, 1}, {k, -1}, {k | bi | bj, -1}}, 0);
        if (k == 0) break;
      }
    }
}

void strict_rows_reduced(const Adjacency& a, std::size_t n, RowCollector& rows) {
  const Mask full = (Mask{1} << n) - 1;
  for (Mask c = 0; c <= full; ++c) {
    if (!a.independent(c)) continue;
    auto qs = a.minimal_qualifiers(c);
    for (Mask q : qs) rows.add({{c | q, 1}, {c, -1}}, 1);
    for (std::size_t x = 0; x < qs.size(); ++x)
      for (std::size_t y = x + 1; y < qs.size(); ++y) {
        if (qs[x] & qs[y]) continue;
        rows.add({{c | qs[x], 1}, {c | qs[y], 1}, {c, -1}, {c | qs[x] | qs[y], -1}}, 1);
      }
  }
}

void strict_rows_full(const Adjacency& a, std::size_t n, RowCollector& rows) {
  const Mask full = (Mask{1} << n) - 1;
  for (Mask lo = 0; lo <= full; ++lo) {
    if (!a.independent(lo)) continue;
    Mask rest = full & ~lo;
    for (Mask extra = rest; extra; extra = (extra - 1) & rest)
      if (!a.independent(lo | extra)) rows.add({{lo | extra, 1}, {lo, -1}}, 1);
  }
  // Label every vertex 0 (unused), 1 (A), 2 (B), 3 (C).
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= 4;
  for (std::size_t code = 0; code < total; ++code) {
    Mask sets[4] = {0, 0, 0, 0};
    std::size_t x = code;
    for (std::size_t v = 0; v < n; ++v, x /= 4) sets[x % 4] |= Mask{1} << v;
    Mask A = sets[1], B = sets[2], C = sets[3];
    if (A == 0 || B == 0 || A > B) continue;
    if (!a.independent(C) || a.independent(A | C) || a.independent(B | C)) continue;
    rows.add({{A | C, 1}, {B | C, 1}, {C, -1}, {A | B | C, -1}}, 1);
  }
}

}  // namespace

LPProblem build_entropy_lp(const Graph& g, const EntropyLPConfig& config) {
  const std::size_t n = g.vertex_count();
  if (n > kEntropyVertexCap)
    throw Error(Errc::size_limit, "entropy LP needs 2^|V| variables; at most " +
                                      std::to_string(kEntropyVertexCap) + " vertices");
  if (config.families == StrictFamilies::full && n > 8)
    throw Error(Errc::size_limit, "full strict families are generated for at most 8 vertices");
  for (Vertex v : config.query)
    if (!g.contains(v))
      throw Error(Errc::vertex_out_of_range, "vertex " + std::to_string(v) + " out of range", {v});

  Adjacency adjacency(g);
  RowCollector rows;
  shannon_rows(n, rows);
  if (config.families == StrictFamilies::reduced)
    strict_rows_reduced(adjacency, n, rows);
  else
    strict_rows_full(adjacency, n, rows);

  LPProblem lp;
  const Mask full = (Mask{1} << n) - 1;
  for (Mask m = 1; m <= full; ++m) {
    std::string name = "f{";
    for (std::size_t v = 0; v < n; ++v)
      if (m >> v & 1) name += (name.size() > 2 ? "," : "") + std::to_string(v);
    lp.add_variable(name + "}");
  }
  for (const auto& [row, rhs] : rows.rows()) {
    LinearExpr expr;
    for (auto [mask, c] : row) expr.emplace_back(mask - 1, c);
    lp.add_constraint(std::move(expr), Sense::ge, rhs);
  }
  switch (config.objective) {
    case EntropyObjective::minmax: {
      std::size_t t = lp.add_variable("t");
      for (std::size_t v = 0; v < n; ++v)
        lp.add_constraint({{t, 1}, {(Mask{1} << v) - 1, -1}}, Sense::ge, 0, "t_bound_" + std::to_string(v));
      lp.set_objective({{t, 1}});
      break;
    }
    case EntropyObjective::sum: {
      LinearExpr obj;
      for (std::size_t v = 0; v < n; ++v) obj.emplace_back((Mask{1} << v) - 1, 1);
      lp.set_objective(std::move(obj));
      break;
    }
    case EntropyObjective::set_query: {
      Mask s = 0;
      for (Vertex v : config.query) s |= Mask{1} << v;
      if (s != 0) lp.set_objective({{s - 1, 1}});
      break;
    }
  }
  return lp;
}

EntropyBound solve_entropy_lp(const Graph& g, const EntropyLPConfig& config, const LPOptions& options) {
  LPProblem lp = build_entropy_lp(g, config);
  EntropyBound out;
  out.solution = solve_lp(lp, options);
  if (out.solution.status != LPStatus::optimal)
    throw Error(Errc::precondition, std::string("entropy LP is ") + status_name(out.solution.status));
  out.value = out.solution.objective;
  const std::size_t subsets = std::size_t{1} << g.vertex_count();
  out.f.assign(subsets, 0);
  for (std::size_t m = 1; m < subsets; ++m) out.f[m] = out.solution.primal[m - 1];
  return out;
}

Rational entropy_lp_complexity(const Graph& g, EntropyObjective objective, const LPOptions& options) {
  return solve_entropy_lp(g, {objective, {}, StrictFamilies::reduced}, options).value;
}

Rational entropy_lp_set_query(const Graph& g, const VertexSet& s, const LPOptions& options) {
  return solve_entropy_lp(g, {EntropyObjective::set_query, s, StrictFamilies::reduced}, options).value;
}

}  // namespace girthforge
