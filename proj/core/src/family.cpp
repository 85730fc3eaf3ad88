#include "girthforge/family.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "girthforge/error.hpp"
#include "girthforge/rng.hpp"

namespace girthforge {

namespace {

VertexSet shifted(const VertexSet& s, Vertex offset) {
  VertexSet out(s.size());
  std::transform(s.begin(), s.end(), out.begin(), [&](Vertex v) { return v + offset; });
  return out;
}

// Subgraph on ids [lo, hi), relabeled to [0, hi - lo).
Graph range_subgraph(const Graph& g, Vertex lo, Vertex hi) {
  std::vector<Edge> edges;
  for (const auto& e : g.edges())
    if (e.u >= lo && e.v < hi) edges.push_back({e.u - lo, e.v - lo});
  return Graph(hi - lo, std::move(edges));
}

std::string describe(FactorCheck c) {
  return std::string(verdict_name(c.verdict)) + " at (" + std::to_string(c.b) + ", " +
         std::to_string(c.a) + ")";
}

// Lays out the copies on consecutive ranges and adds the junction factors.
GdGraph assemble(const std::vector<GdGraph>& copies, const std::vector<OneFactor>& junctions) {
  const std::size_t m = copies.size();
  const std::size_t s = copies[0].graph.vertex_count();
  GdGraph out;
  out.level = copies[0].level + 1;
  out.part_sizes = copies[0].part_sizes;
  out.part_sizes.push_back(m);
  out.in_family = m >= 5;
  std::vector<Edge> edges;
  std::vector<Vertex> a, b;
  for (std::size_t i = 0; i < m; ++i) {
    const auto lo = static_cast<Vertex>(i * s);
    out.copies.emplace_back(lo, static_cast<Vertex>(lo + s));
    for (const auto& e : copies[i].graph.edges()) edges.push_back({e.u + lo, e.v + lo});
    for (Vertex v : copies[i].sides.a) a.push_back(v + lo);
    for (Vertex v : copies[i].sides.b) b.push_back(v + lo);
    out.in_family = out.in_family && copies[i].in_family;
  }
  for (const auto& f : junctions)
    for (auto [bv, av] : f.pairs) edges.push_back(Edge::of(bv, av));
  out.graph = Graph(m * s, std::move(edges));
  out.sides = {make_set(std::move(a)), make_set(std::move(b))};
  out.junctions = junctions;
  out.children = copies;
  return out;
}

void check_copies(const std::vector<GdGraph>& copies, std::size_t min_copies) {
  if (copies.size() < min_copies)
    throw Error(Errc::too_few_copies, "need at least " + std::to_string(min_copies) + " copies, got " +
                                          std::to_string(copies.size()));
  for (const auto& c : copies)
    if (!c.has_structure()) throw Error(Errc::structure_unknown, "copy carries no recursion metadata");
  const std::size_t s = copies[0].graph.vertex_count();
  const std::size_t d = copies[0].level;
  for (std::size_t i = 1; i < copies.size(); ++i) {
    if (copies[i].graph.vertex_count() != s)
      throw Error(Errc::size_mismatch, "copy " + std::to_string(i) + " has " +
                                           std::to_string(copies[i].graph.vertex_count()) +
                                           " vertices, copy 0 has " + std::to_string(s));
    if (copies[i].level != d)
      throw Error(Errc::level_mismatch, "copy " + std::to_string(i) + " is level " +
                                            std::to_string(copies[i].level) + ", copy 0 is level " +
                                            std::to_string(d));
  }
}

std::vector<OneFactor> induced_junctions(const std::vector<GdGraph>& copies,
                                         const std::vector<std::uint32_t>& pi) {
  const std::size_t m = copies.size();
  const std::size_t s = copies[0].graph.vertex_count();
  for (const auto& c : copies) check_side_permutation(pi, c.sides.a.size());
  std::vector<OneFactor> out(m);
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t next = (i + 1) % m;
    const auto lo = static_cast<Vertex>(i * s), next_lo = static_cast<Vertex>(next * s);
    const auto& b = copies[i].sides.b;
    const auto& a = copies[next].sides.a;
    for (std::size_t k = 0; k < a.size(); ++k) out[i].pairs.emplace_back(b[pi[k]] + lo, a[k] + next_lo);
  }
  return out;
}

}  // namespace

GdGraph GdGraph::bare(Graph g) {
  GdGraph out;
  out.graph = std::move(g);
  out.in_family = false;
  return out;
}

void check_side_permutation(const std::vector<std::uint32_t>& pi, std::size_t side) {
  if (pi.size() != side)
    throw Error(Errc::size_mismatch, "permutation has domain " + std::to_string(pi.size()) +
                                         ", side has " + std::to_string(side) + " vertices");
  std::vector<bool> seen(side, false);
  for (auto x : pi) {
    if (x >= side || seen[x])
      throw Error(Errc::not_bijection, "value " + std::to_string(x) + " repeated or out of range");
    seen[x] = true;
  }
}

GdGraph build_cycle(std::size_t n) {
  if (n < 6 || n % 2 != 0)
    throw Error(Errc::bad_size, "cycle length must be even and at least 6, got " + std::to_string(n));
  GdGraph out;
  out.graph = Graph::cycle(n);
  out.level = 2;
  out.part_sizes = {n};
  out.cycle_order.resize(n);
  std::iota(out.cycle_order.begin(), out.cycle_order.end(), Vertex{0});
  for (Vertex v = 0; v < n; ++v) (v % 2 == 0 ? out.sides.a : out.sides.b).push_back(v);
  return out;
}

GdGraph extend_family(const std::vector<GdGraph>& copies, const FactorChoice& factors) {
  check_copies(copies, 5);
  const std::size_t m = copies.size();
  const std::size_t s = copies[0].graph.vertex_count();
  std::vector<OneFactor> junctions;
  if (const auto* ex = std::get_if<ExplicitFactors>(&factors)) {
    if (ex->junctions.size() != m)
      throw Error(Errc::size_mismatch, "expected " + std::to_string(m) + " junction factors, got " +
                                           std::to_string(ex->junctions.size()));
    junctions = ex->junctions;
  } else if (const auto* rnd = std::get_if<RandomFactors>(&factors)) {
    junctions.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
      const std::size_t next = (i + 1) % m;
      const auto& b = copies[i].sides.b;
      const auto& a = copies[next].sides.a;
      if (a.size() != b.size())
        throw Error(Errc::size_mismatch, "junction " + std::to_string(i) + " joins sides of unequal size");
      std::vector<Vertex> targets(a);
      Rng rng(Rng::derive(rnd->seed, i));
      rng.shuffle(std::span<Vertex>(targets));
      for (std::size_t k = 0; k < b.size(); ++k)
        junctions[i].pairs.emplace_back(b[k] + i * s, targets[k] + next * s);
    }
  } else {
    junctions = induced_junctions(copies, std::get<InducedFactors>(factors).pi);
  }

  GdGraph out;
  try {
    out = assemble(copies, junctions);
  } catch (const Error& e) {
    // Duplicate or out-of-range junction pairs surface as graph errors.
    throw Error(Errc::not_bijection, std::string("junction factors do not form bijections: ") + e.what());
  }
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t next = (i + 1) % m;
    auto check = verify_one_factor(out.graph, shifted(copies[i].sides.b, static_cast<Vertex>(i * s)),
                                   shifted(copies[next].sides.a, static_cast<Vertex>(next * s)),
                                   junctions[i]);
    if (!check)
      throw Error(Errc::not_bijection, "junction " + std::to_string(i) + ": " + describe(check),
                  {check.b, check.a});
  }
  return out;
}

GdGraph build_h(std::size_t m, const GdGraph& g, const std::vector<std::uint32_t>& pi) {
  if (m < 2) throw Error(Errc::precondition, "H(m, G, pi) needs m >= 2");
  std::vector<GdGraph> copies(m, g);
  check_copies(copies, 2);
  GdGraph out = assemble(copies, induced_junctions(copies, pi));
  return out;
}

Graph pi_union(const GdGraph& g, const std::vector<std::uint32_t>& pi) {
  check_side_permutation(pi, g.sides.a.size());
  std::set<Edge> edges(g.graph.edges().begin(), g.graph.edges().end());
  for (std::size_t k = 0; k < pi.size(); ++k) edges.insert(Edge::of(g.sides.a[k], g.sides.b[pi[k]]));
  return Graph(g.graph.vertex_count(), {edges.begin(), edges.end()});
}

std::vector<Vertex> copy_projection(const GdGraph& h) {
  if (h.level < 3) throw Error(Errc::structure_unknown, "projection needs a graph built from copies");
  std::vector<Vertex> phi(h.graph.vertex_count());
  for (const auto& [lo, hi] : h.copies)
    for (Vertex v = lo; v < hi; ++v) phi[v] = v - lo;
  return phi;
}

std::vector<Vertex> canonical_order(const GdGraph& g) {
  if (!g.has_structure()) throw Error(Errc::structure_unknown, "graph carries no recursion metadata");
  if (g.level == 2) {
    if (g.cycle_order.size() != g.graph.vertex_count())
      throw Error(Errc::structure_unknown, "cycle order missing");
    return g.cycle_order;
  }
  std::vector<Vertex> order;
  order.reserve(g.graph.vertex_count());
  for (std::size_t i = 0; i < g.copies.size(); ++i)
    for (Vertex v : canonical_order(g.children[i])) order.push_back(v + g.copies[i].first);
  return order;
}

std::size_t max_circular_distance(const Graph& g) {
  const std::size_t n = g.vertex_count();
  std::size_t best = 0;
  for (const auto& e : g.edges()) {
    std::size_t d = e.v - e.u;
    best = std::max(best, std::min(d, n - d));
  }
  return best;
}

GdGraph canonical_relabel(const GdGraph& g) {
  const auto order = canonical_order(g);
  std::vector<Vertex> label(order.size());
  for (std::size_t p = 0; p < order.size(); ++p) label[order[p]] = static_cast<Vertex>(p);

  GdGraph out = g;
  std::vector<Edge> edges;
  for (const auto& e : g.graph.edges()) edges.push_back(Edge::of(label[e.u], label[e.v]));
  out.graph = Graph(g.graph.vertex_count(), std::move(edges));
  auto relabel_set = [&](const VertexSet& s) {
    std::vector<Vertex> r;
    for (Vertex v : s) r.push_back(label[v]);
    return make_set(std::move(r));
  };
  out.sides = {relabel_set(g.sides.a), relabel_set(g.sides.b)};
  for (auto& f : out.junctions)
    for (auto& [b, a] : f.pairs) b = label[b], a = label[a];
  for (auto& c : out.children) c = canonical_relabel(c);
  if (g.level == 2) {
    out.cycle_order.resize(order.size());
    std::iota(out.cycle_order.begin(), out.cycle_order.end(), Vertex{0});
  }

  for (Vertex v : out.sides.a)
    if (v % 2 != 0) throw Error(Errc::structure_unknown, "A vertex landed on odd position " + std::to_string(v));
  const std::size_t limit = g.level == 2 ? 1 : 3 * g.copy_size();
  const std::size_t reach = max_circular_distance(out.graph);
  if (reach > limit)
    throw Error(Errc::structure_unknown, "edge spans circular distance " + std::to_string(reach) +
                                             " > " + std::to_string(limit));
  return out;
}

std::optional<std::string> check_structure(const GdGraph& g) {
  if (!g.has_structure()) return "no recursion metadata";
  const std::size_t n = g.graph.vertex_count();
  try {
    auto sides = check_regular_bipartite(g.graph, g.level);
    (void)sides;
  } catch (const Error& e) {
    return std::string("not ") + std::to_string(g.level) + "-regular bipartite: " + e.what();
  }
  if (set_union(g.sides.a, g.sides.b).size() != n || !sets_disjoint(g.sides.a, g.sides.b) ||
      g.sides.a.size() != g.sides.b.size())
    return "sides do not split the vertices into equal halves";
  if (!is_independent(g.graph, g.sides.a) || !is_independent(g.graph, g.sides.b))
    return "a side is not independent";
  std::size_t product = 1;
  for (auto p : g.part_sizes) product *= p;
  if (g.part_sizes.size() != g.level - 1 || product != n) return "part sizes do not match the vertex count";

  if (g.level == 2) {
    if (g.cycle_order.size() != n || make_set(g.cycle_order).size() != n) return "cycle order is not a permutation";
    for (std::size_t p = 0; p < n; ++p) {
      if (!g.graph.adjacent(g.cycle_order[p], g.cycle_order[(p + 1) % n])) return "cycle order skips an edge";
      if (set_contains(g.sides.a, g.cycle_order[p]) != (p % 2 == 0)) return "cycle order does not alternate from A";
    }
    return std::nullopt;
  }

  const std::size_t m = g.copies.size();
  if (m < 2 || g.children.size() != m || g.junctions.size() != m) return "copy metadata has inconsistent lengths";
  if (g.part_sizes.back() != m) return "last part size differs from the copy count";
  const std::size_t s = n / m;
  std::vector<Vertex> a, b;
  std::size_t edges = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const auto& child = g.children[i];
    if (g.copies[i].first != i * s || g.copies[i].second != (i + 1) * s) return "copies are not consecutive ranges";
    if (child.level + 1 != g.level) return "copy " + std::to_string(i) + " has the wrong level";
    if (!(child.graph == range_subgraph(g.graph, g.copies[i].first, g.copies[i].second)))
      return "copy " + std::to_string(i) + " differs from its induced subgraph";
    if (auto why = check_structure(child)) return "copy " + std::to_string(i) + ": " + *why;
    for (Vertex v : child.sides.a) a.push_back(v + g.copies[i].first);
    for (Vertex v : child.sides.b) b.push_back(v + g.copies[i].first);
    edges += child.graph.edge_count();
  }
  if (make_set(a) != g.sides.a || make_set(b) != g.sides.b) return "sides are not the union of the copies' sides";
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t next = (i + 1) % m;
    auto check = verify_one_factor(g.graph, shifted(g.children[i].sides.b, g.copies[i].first),
                                   shifted(g.children[next].sides.a, g.copies[next].first), g.junctions[i]);
    if (!check) return "junction " + std::to_string(i) + ": " + describe(check);
    edges += g.junctions[i].pairs.size();
  }
  if (edges != g.graph.edge_count()) return "edges outside copies and junctions";
  return std::nullopt;
}

}  // namespace girthforge
