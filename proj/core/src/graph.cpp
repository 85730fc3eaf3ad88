#include "girthforge/graph.hpp"

#include <algorithm>
#include <atomic>
#include <deque>
#include <thread>
#include <unordered_map>

#include "girthforge/error.hpp"

namespace girthforge {

VertexSet make_set(std::vector<Vertex> vertices) {
  std::sort(vertices.begin(), vertices.end());
  vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
  return vertices;
}

VertexSet set_union(const VertexSet& a, const VertexSet& b) {
  VertexSet out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool set_contains(const VertexSet& s, Vertex v) {
  return std::binary_search(s.begin(), s.end(), v);
}

bool sets_disjoint(const VertexSet& a, const VertexSet& b) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i == *j) return false;
    if (*i < *j) ++i; else ++j;
  }
  return true;
}

bool is_subset(const VertexSet& sub, const VertexSet& super) {
  return std::includes(super.begin(), super.end(), sub.begin(), sub.end());
}

Graph::Graph(std::size_t n, std::vector<Edge> edges) : n_(n) {
  for (auto& e : edges) {
    if (e.u == e.v) throw Error(Errc::invalid_graph, "self-loop at " + std::to_string(e.u), {e.u});
    if (e.u >= n || e.v >= n)
      throw Error(Errc::invalid_graph, "edge endpoint out of range", {e.u, e.v});
    e = Edge::of(e.u, e.v);
  }
  std::sort(edges.begin(), edges.end());
  if (auto dup = std::adjacent_find(edges.begin(), edges.end()); dup != edges.end())
    throw Error(Errc::invalid_graph, "duplicate edge", {dup->u, dup->v});
  edges_ = std::move(edges);

  offsets_.assign(n_ + 1, 0);
  for (const auto& e : edges_) {
    ++offsets_[e.u + 1];
    ++offsets_[e.v + 1];
  }
  for (std::size_t i = 0; i < n_; ++i) offsets_[i + 1] += offsets_[i];
  targets_.resize(offsets_[n_]);
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (const auto& e : edges_) {
    targets_[fill[e.u]++] = e.v;
    targets_[fill[e.v]++] = e.u;
  }
  for (std::size_t v = 0; v < n_; ++v)
    std::sort(targets_.begin() + static_cast<std::ptrdiff_t>(offsets_[v]),
              targets_.begin() + static_cast<std::ptrdiff_t>(offsets_[v + 1]));
}

Graph Graph::cycle(std::size_t n) {
  if (n < 3) throw Error(Errc::bad_size, "cycle needs at least 3 vertices");
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i)
    edges.push_back(Edge::of(static_cast<Vertex>(i), static_cast<Vertex>((i + 1) % n)));
  return Graph(n, std::move(edges));
}

Graph Graph::path(std::size_t n) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i + 1 < n; ++i)
    edges.push_back({static_cast<Vertex>(i), static_cast<Vertex>(i + 1)});
  return Graph(n, std::move(edges));
}

Graph Graph::complete(std::size_t n) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      edges.push_back({static_cast<Vertex>(i), static_cast<Vertex>(j)});
  return Graph(n, std::move(edges));
}

Graph Graph::complete_bipartite(std::size_t left, std::size_t right) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < left; ++i)
    for (std::size_t j = 0; j < right; ++j)
      edges.push_back({static_cast<Vertex>(i), static_cast<Vertex>(left + j)});
  return Graph(left + right, std::move(edges));
}

Graph Graph::star(std::size_t leaves) {
  std::vector<Edge> edges;
  for (std::size_t i = 1; i <= leaves; ++i) edges.push_back({0, static_cast<Vertex>(i)});
  return Graph(leaves + 1, std::move(edges));
}

std::size_t Graph::max_degree() const {
  std::size_t best = 0;
  for (std::size_t v = 0; v < n_; ++v) best = std::max(best, degree(static_cast<Vertex>(v)));
  return best;
}

bool Graph::adjacent(Vertex u, Vertex v) const {
  if (u >= n_ || v >= n_) return false;
  auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

Graph Graph::without_edge(Edge e) const {
  e = Edge::of(e.u, e.v);
  std::vector<Edge> rest;
  rest.reserve(edges_.size());
  for (const auto& x : edges_)
    if (x != e) rest.push_back(x);
  return Graph(n_, std::move(rest));
}

Graph Graph::with_edges(std::span<const Edge> extra) const {
  std::vector<Edge> all = edges_;
  all.insert(all.end(), extra.begin(), extra.end());
  return Graph(n_, std::move(all));
}

VertexSet OneFactor::b_side() const {
  std::vector<Vertex> out;
  for (const auto& [b, a] : pairs) out.push_back(b);
  return make_set(std::move(out));
}

VertexSet OneFactor::a_side() const {
  std::vector<Vertex> out;
  for (const auto& [b, a] : pairs) out.push_back(a);
  return make_set(std::move(out));
}

std::string_view verdict_name(FactorVerdict v) noexcept {
  switch (v) {
    case FactorVerdict::ok: return "OK";
    case FactorVerdict::unsaturated: return "UNSATURATED";
    case FactorVerdict::outside_set: return "OUTSIDE_SET";
    case FactorVerdict::repeated_vertex: return "REPEATED_VERTEX";
    case FactorVerdict::missing_edge: return "MISSING_EDGE";
    case FactorVerdict::forbidden_edge: return "FORBIDDEN_EDGE";
  }
  return "UNKNOWN";
}

namespace {

// Scratch space for repeated bounded BFS runs; `stamp` avoids clearing.
struct BfsScratch {
  std::vector<std::uint32_t> stamp;
  std::vector<int> dist;
  std::vector<Vertex> queue;
  std::uint32_t epoch = 0;

  explicit BfsScratch(std::size_t n) : stamp(n, 0), dist(n, 0) { queue.reserve(n); }
};

// Distance from u to v avoiding the direct edge uv, or -1 if it exceeds limit.
int distance_without_edge(const Graph& g, Vertex u, Vertex v, int limit, BfsScratch& s) {
  if (++s.epoch == 0) {
    std::fill(s.stamp.begin(), s.stamp.end(), 0);
    s.epoch = 1;
  }
  s.queue.clear();
  s.queue.push_back(u);
  s.stamp[u] = s.epoch;
  s.dist[u] = 0;
  for (std::size_t head = 0; head < s.queue.size(); ++head) {
    Vertex x = s.queue[head];
    int dx = s.dist[x];
    if (dx >= limit) break;
    for (Vertex y : g.neighbors(x)) {
      if (x == u && y == v) continue;
      if (s.stamp[y] == s.epoch) continue;
      if (y == v) return dx + 1;
      s.stamp[y] = s.epoch;
      s.dist[y] = dx + 1;
      s.queue.push_back(y);
    }
  }
  return -1;
}

}  // namespace

std::optional<std::size_t> girth(const Graph& g, unsigned jobs) {
  const auto& edges = g.edges();
  if (edges.empty()) return std::nullopt;
  constexpr std::size_t kNone = SIZE_MAX;
  std::atomic<std::size_t> best{kNone};

  auto scan = [&](std::size_t start, std::size_t stride) {
    BfsScratch scratch(g.vertex_count());
    for (std::size_t i = start; i < edges.size(); i += stride) {
      std::size_t current = best.load(std::memory_order_relaxed);
      if (current == 3) return;
      // Only paths of length <= current - 2 can improve the answer.
      int limit = current == kNone ? static_cast<int>(g.vertex_count())
                                   : static_cast<int>(current) - 2;
      int d = distance_without_edge(g, edges[i].u, edges[i].v, limit, scratch);
      if (d < 0) continue;
      std::size_t len = static_cast<std::size_t>(d) + 1;
      while (len < current &&
             !best.compare_exchange_weak(current, len, std::memory_order_relaxed)) {
      }
    }
  };

  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(edges.size())));
  if (jobs == 1) {
    scan(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(scan, t, jobs);
    for (auto& th : pool) th.join();
  }
  std::size_t result = best.load();
  if (result == kNone) return std::nullopt;
  return result;
}

Bipartition bipartition(const Graph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<int> color(n, -1);
  std::vector<Vertex> parent(n, 0);
  Bipartition out;
  for (Vertex root = 0; root < n; ++root) {
    if (color[root] >= 0) continue;
    color[root] = 0;
    parent[root] = root;
    std::deque<Vertex> queue{root};
    while (!queue.empty()) {
      Vertex x = queue.front();
      queue.pop_front();
      for (Vertex y : g.neighbors(x)) {
        if (color[y] < 0) {
          color[y] = 1 - color[x];
          parent[y] = x;
          queue.push_back(y);
        } else if (color[y] == color[x]) {
          // Odd cycle: x -> ... -> lca <- ... <- y, closed by edge xy.
          std::vector<Vertex> px{x}, py{y};
          while (parent[px.back()] != px.back()) px.push_back(parent[px.back()]);
          while (parent[py.back()] != py.back()) py.push_back(parent[py.back()]);
          while (px.size() > 1 && py.size() > 1 && px[px.size() - 2] == py[py.size() - 2]) {
            px.pop_back();
            py.pop_back();
          }
          std::vector<std::uint64_t> cycle(px.begin(), px.end());
          for (auto it = py.rbegin() + 1; it != py.rend(); ++it) cycle.push_back(*it);
          throw Error(Errc::not_bipartite,
                      "odd cycle of length " + std::to_string(cycle.size()),
                      std::move(cycle));
        }
      }
    }
  }
  for (Vertex v = 0; v < n; ++v) (color[v] == 0 ? out.a : out.b).push_back(v);
  return out;
}

Bipartition check_regular_bipartite(const Graph& g, std::size_t d) {
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (g.degree(v) != d)
      throw Error(Errc::not_regular,
                  "vertex " + std::to_string(v) + " has degree " + std::to_string(g.degree(v)),
                  {v, g.degree(v)});
  }
  return bipartition(g);
}

bool is_independent(const Graph& g, std::span<const Vertex> s) {
  std::vector<char> in(g.vertex_count(), 0);
  for (Vertex v : s) {
    if (!g.contains(v))
      throw Error(Errc::vertex_out_of_range, "vertex " + std::to_string(v) + " out of range", {v});
    in[v] = 1;
  }
  for (Vertex v : s)
    for (Vertex w : g.neighbors(v))
      if (in[w]) return false;
  return true;
}

FactorCheck verify_one_factor(const Graph& g, const VertexSet& b_set, const VertexSet& a_set,
                              const OneFactor& f) {
  std::unordered_map<Vertex, std::size_t> a_index;
  std::unordered_map<Vertex, std::size_t> b_index;
  for (std::size_t i = 0; i < f.pairs.size(); ++i) {
    auto [b, a] = f.pairs[i];
    if (!set_contains(b_set, b) || !set_contains(a_set, a)) return {FactorVerdict::outside_set, b, a};
    if (!a_index.emplace(a, i).second || !b_index.emplace(b, i).second)
      return {FactorVerdict::repeated_vertex, b, a};
  }
  if (b_index.size() != b_set.size()) {
    for (Vertex b : b_set)
      if (!b_index.count(b)) return {FactorVerdict::unsaturated, b, 0};
  }
  for (auto [b, a] : f.pairs)
    if (!g.adjacent(b, a)) return {FactorVerdict::missing_edge, b, a};
  for (std::size_t i = 0; i < f.pairs.size(); ++i) {
    Vertex b = f.pairs[i].first;
    for (Vertex w : g.neighbors(b)) {
      auto it = a_index.find(w);
      if (it != a_index.end() && it->second != i) return {FactorVerdict::forbidden_edge, b, w};
    }
  }
  return {};
}

std::optional<OneFactor> find_one_factor(const Graph& g, const VertexSet& b_set,
                                         const VertexSet& a_set) {
  if (b_set.size() > kOneFactorSearchCap)
    throw Error(Errc::size_limit, "1-factor search is capped at |B| <= " +
                                      std::to_string(kOneFactorSearchCap));
  if (b_set.size() > a_set.size()) return std::nullopt;

  std::vector<std::vector<Vertex>> options(b_set.size());
  for (std::size_t i = 0; i < b_set.size(); ++i)
    for (Vertex w : g.neighbors(b_set[i]))
      if (set_contains(a_set, w)) options[i].push_back(w);

  std::vector<Vertex> chosen;
  chosen.reserve(b_set.size());
  // Eager pruning: the new pair must not be adjacent to any earlier pair.
  auto compatible = [&](std::size_t i, Vertex a) {
    for (std::size_t j = 0; j < chosen.size(); ++j) {
      if (chosen[j] == a) return false;
      if (g.adjacent(b_set[i], chosen[j]) || g.adjacent(b_set[j], a)) return false;
    }
    return true;
  };
  auto search = [&](auto&& self, std::size_t i) -> bool {
    if (i == b_set.size()) return true;
    for (Vertex a : options[i]) {
      if (!compatible(i, a)) continue;
      chosen.push_back(a);
      if (self(self, i + 1)) return true;
      chosen.pop_back();
    }
    return false;
  };
  if (!search(search, 0)) return std::nullopt;
  OneFactor f;
  for (std::size_t i = 0; i < b_set.size(); ++i) f.pairs.emplace_back(b_set[i], chosen[i]);
  return f;
}

bool check_homomorphism(const Graph& h, const Graph& g, std::span<const Vertex> phi) {
  if (phi.size() != h.vertex_count())
    throw Error(Errc::precondition, "vertex map must be total on the source graph");
  for (Vertex x : phi)
    if (!g.contains(x))
      throw Error(Errc::vertex_out_of_range, "image vertex " + std::to_string(x) + " out of range", {x});
  for (const auto& e : h.edges())
    if (!g.adjacent(phi[e.u], phi[e.v])) return false;
  return true;
}

std::vector<int> bfs_distances(const Graph& g, std::span<const Vertex> sources, int max_depth) {
  std::vector<int> dist(g.vertex_count(), -1);
  std::vector<Vertex> queue;
  for (Vertex s : sources) {
    if (dist[s] < 0) {
      dist[s] = 0;
      queue.push_back(s);
    }
  }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    Vertex x = queue[head];
    if (max_depth >= 0 && dist[x] >= max_depth) continue;
    for (Vertex y : g.neighbors(x)) {
      if (dist[y] >= 0) continue;
      dist[y] = dist[x] + 1;
      queue.push_back(y);
    }
  }
  return dist;
}

}  // namespace girthforge
