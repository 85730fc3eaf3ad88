#pragma once

// Reference implementations used only by tests. They share no code with the
// library beyond the Graph container.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <queue>
#include <vector>

#include "girthforge/graph.hpp"

namespace oracle {

using girthforge::Graph;
using girthforge::Vertex;

// Shortest cycle by BFS from every vertex: a non-tree edge (u, w) met while
// exploring closes a closed walk of length d(u) + d(w) + 1, and the minimum
// over all roots is the girth.
inline std::optional<std::size_t> girth(const Graph& g) {
  const std::size_t n = g.vertex_count();
  std::size_t best = std::numeric_limits<std::size_t>::max();
  std::vector<int> dist(n), parent(n);
  for (Vertex root = 0; root < n; ++root) {
    std::fill(dist.begin(), dist.end(), -1);
    std::fill(parent.begin(), parent.end(), -1);
    std::queue<Vertex> q;
    dist[root] = 0;
    q.push(root);
    while (!q.empty()) {
      Vertex u = q.front();
      q.pop();
      if (2 * static_cast<std::size_t>(dist[u]) + 1 >= best) break;
      for (Vertex w : g.neighbors(u)) {
        if (dist[w] < 0) {
          dist[w] = dist[u] + 1;
          parent[w] = static_cast<int>(u);
          q.push(w);
        } else if (parent[u] != static_cast<int>(w)) {
          best = std::min<std::size_t>(best, static_cast<std::size_t>(dist[u] + dist[w] + 1));
        }
      }
    }
  }
  if (best == std::numeric_limits<std::size_t>::max()) return std::nullopt;
  return best;
}

// Union-find: true iff the edges close no cycle.
inline bool acyclic(const Graph& g) {
  std::vector<std::size_t> up(g.vertex_count());
  std::iota(up.begin(), up.end(), 0);
  auto find = [&](std::size_t x) {
    while (up[x] != x) x = up[x] = up[up[x]];
    return x;
  };
  for (const auto& e : g.edges()) {
    auto a = find(e.u), b = find(e.v);
    if (a == b) return false;
    up[a] = b;
  }
  return true;
}

inline bool independent(const Graph& g, const std::vector<Vertex>& s) {
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i + 1; j < s.size(); ++j)
      for (const auto& e : g.edges())
        if ((e.u == s[i] && e.v == s[j]) || (e.u == s[j] && e.v == s[i])) return false;
  return true;
}

// Induced 1-factor by definition: pairs adjacent, cross pairs not.
inline bool induced_factor(const Graph& g, const std::vector<std::pair<Vertex, Vertex>>& pairs) {
  for (std::size_t i = 0; i < pairs.size(); ++i)
    for (std::size_t j = 0; j < pairs.size(); ++j) {
      bool edge = false;
      for (const auto& e : g.edges())
        if ((e.u == pairs[i].first && e.v == pairs[j].second) || (e.v == pairs[i].first && e.u == pairs[j].second))
          edge = true;
      if (edge != (i == j)) return false;
    }
  return true;
}

// Seeded random simple graph on n vertices with edge probability num/den.
inline Graph random_graph(std::size_t n, std::uint64_t seed, unsigned num = 1, unsigned den = 2) {
  std::uint64_t s = seed * 0x9e3779b97f4a7c15ULL + 1;
  auto next = [&] {
    s ^= s << 13;
    s ^= s >> 7;
    s ^= s << 17;
    return s;
  };
  std::vector<girthforge::Edge> edges;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (next() % den < num) edges.push_back({u, v});
  return Graph(n, std::move(edges));
}

}  // namespace oracle
