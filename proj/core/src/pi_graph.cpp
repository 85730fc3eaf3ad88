#include "girthforge/pi_graph.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <set>
#include <stdexcept>

#include "girthforge/error.hpp"
#include "girthforge/rng.hpp"

namespace girthforge {

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

// Adjacency lists that grow during the greedy phase, with epoch-stamped
// bounded breadth-first balls.
class GrowingGraph {
 public:
  explicit GrowingGraph(const Graph& g) : adj_(g.vertex_count()), stamp_(g.vertex_count(), 0) {
    for (const auto& e : g.edges()) add(e.u, e.v);
  }

  void add(Vertex u, Vertex v) {
    adj_[u].push_back(v);
    adj_[v].push_back(u);
  }

  /// Stamps every vertex within distance `radius` of the sources.
  void ball(std::span<const Vertex> sources, std::size_t radius) {
    ++epoch_;
    queue_.clear();
    for (Vertex s : sources) {
      if (stamp_[s] == epoch_) continue;
      stamp_[s] = epoch_;
      queue_.emplace_back(s, 0);
    }
    for (std::size_t head = 0; head < queue_.size(); ++head) {
      auto [x, depth] = queue_[head];
      if (depth == radius) continue;
      for (Vertex y : adj_[x]) {
        if (stamp_[y] == epoch_) continue;
        stamp_[y] = epoch_;
        queue_.emplace_back(y, depth + 1);
      }
    }
  }

  bool in_ball(Vertex v) const { return stamp_[v] == epoch_; }

  /// Vertices reached by the last ball() call.
  std::vector<Vertex> last_ball() const {
    std::vector<Vertex> out;
    for (auto [v, depth] : queue_) out.push_back(v);
    return out;
  }

 private:
  std::vector<std::vector<Vertex>> adj_;
  std::vector<std::uint32_t> stamp_;
  std::uint32_t epoch_ = 0;
  std::vector<std::pair<Vertex, std::size_t>> queue_;
};

struct GreedyOutcome {
  std::vector<std::pair<Vertex, Vertex>> matched;  // (a, b)
  std::vector<Vertex> free_a;
  std::vector<Vertex> free_b;
};

// Adds edges a - b with dist(a, b) >= g in seeded random order. An a without
// a far free b never gains one later, since added edges only shrink
// distances, so one pass suffices.
GreedyOutcome grow_factor(GrowingGraph& g, std::vector<Vertex> a_side, const std::vector<Vertex>& b_side,
                          std::size_t girth, Rng& rng, std::size_t stop_below) {
  rng.shuffle(std::span<Vertex>(a_side));
  GreedyOutcome out;
  std::vector<Vertex> free_b = b_side;
  std::vector<std::size_t> slot;
  for (std::size_t i = 0; i < free_b.size(); ++i) {
    if (slot.size() <= free_b[i]) slot.resize(free_b[i] + 1, kNone);
    slot[free_b[i]] = i;
  }
  std::size_t unmatched = a_side.size();
  std::vector<Vertex> candidates;
  for (std::size_t idx = 0; idx < a_side.size(); ++idx) {
    const Vertex a = a_side[idx];
    if (unmatched < stop_below || free_b.empty()) {
      out.free_a.push_back(a);
      continue;
    }
    g.ball(std::span<const Vertex>(&a, 1), girth - 1);
    std::optional<Vertex> pick;
    for (int t = 0; t < 32 && !pick; ++t) {
      Vertex c = free_b[rng.below(free_b.size())];
      if (!g.in_ball(c)) pick = c;
    }
    if (!pick) {
      candidates.clear();
      for (Vertex c : free_b)
        if (!g.in_ball(c)) candidates.push_back(c);
      if (!candidates.empty()) pick = candidates[rng.below(candidates.size())];
    }
    if (!pick) {
      out.free_a.push_back(a);
      continue;
    }
    g.add(a, *pick);
    out.matched.emplace_back(a, *pick);
    --unmatched;
    const std::size_t at = slot[*pick];
    slot[free_b.back()] = at;
    std::swap(free_b[at], free_b.back());
    free_b.pop_back();
  }
  out.free_b = std::move(free_b);
  std::sort(out.free_a.begin(), out.free_a.end());
  std::sort(out.free_b.begin(), out.free_b.end());
  return out;
}

std::size_t a_index(Vertex v) { return v / 2; }
std::size_t b_index(Vertex v, std::size_t n) { return ((v + 1) / 2) % n; }

// Walks the edges outside the matching, which must form one Hamiltonian
// cycle, and returns the π-graph labeling along it.
PiGraph thread_cycle(std::size_t total, const std::vector<Edge>& edges,
                     const std::vector<std::pair<Vertex, Vertex>>& matching) {
  std::vector<Vertex> partner(total, 0);
  std::set<Edge> matched;
  for (auto [a, b] : matching) {
    partner[a] = b;
    partner[b] = a;
    matched.insert(Edge::of(a, b));
  }
  std::vector<std::vector<Vertex>> ring(total);
  for (const auto& e : edges)
    if (!matched.count(e)) ring[e.u].push_back(e.v), ring[e.v].push_back(e.u);
  for (Vertex v = 0; v < total; ++v)
    if (ring[v].size() != 2) throw std::logic_error("surgery left a vertex off the Hamiltonian cycle");

  std::vector<Vertex> order{0};
  std::vector<std::size_t> position(total, kNone);
  position[0] = 0;
  Vertex prev = 0, cur = ring[0][0];
  while (cur != 0) {
    position[cur] = order.size();
    order.push_back(cur);
    Vertex next = ring[cur][0] == prev ? ring[cur][1] : ring[cur][0];
    prev = cur;
    cur = next;
  }
  if (order.size() != total) throw std::logic_error("edges outside the matching split into several cycles");

  const std::size_t n = total / 2;
  std::vector<std::uint32_t> pi(n);
  for (std::size_t i = 0; i < n; ++i)
    pi[i] = static_cast<std::uint32_t>(b_index(static_cast<Vertex>(position[partner[order[2 * i]]]), n));
  return make_pi_graph(std::move(pi));
}

struct Site {
  std::size_t start;  // first index of the interval
  std::size_t pu;     // offsets of u and l inside it
  std::size_t pl;
};

// Interval selection, then the vertex/edge edits and re-threading.
std::optional<std::pair<PiGraph, std::vector<SurgerySite>>> surgery(const GreedyOutcome& greedy, std::size_t g,
                                                                    std::size_t n, GrowingGraph& dyn) {
  const std::size_t k = greedy.free_a.size();
  if (g >= 40) return std::nullopt;
  // Unmatched pairs are taken in index order; b_0 has the largest id.
  std::vector<Vertex> free_b(greedy.free_b);
  std::sort(free_b.begin(), free_b.end(), [&](Vertex x, Vertex y) { return b_index(x, n) < b_index(y, n); });
  const std::size_t len = (std::size_t{1} << g) + 1;
  if (len > n) return std::nullopt;

  std::vector<char> forbidden(2 * n, 0);
  auto forbid_ball = [&](const std::vector<Vertex>& sources) {
    dyn.ball(sources, g - 1);
    for (Vertex v : dyn.last_ball()) forbidden[v] = 1;
  };
  std::vector<Vertex> degree_two(greedy.free_a);
  degree_two.insert(degree_two.end(), greedy.free_b.begin(), greedy.free_b.end());
  forbid_ball(degree_two);

  std::vector<Site> sites;
  for (std::size_t s = 0; s < k; ++s) {
    std::vector<int> bad(n);
    for (std::size_t i = 0; i < n; ++i)
      bad[i] = forbidden[PiGraph::a(n, i)] || forbidden[PiGraph::b(n, i)];
    std::size_t count = 0;
    for (std::size_t t = 0; t < len; ++t) count += bad[t % n];
    std::size_t start = kNone;
    for (std::size_t p = 0; p < n; ++p) {
      if (count == 0) {
        start = p;
        break;
      }
      count += bad[(p + len) % n];
      count -= bad[p];
    }
    if (start == kNone) return std::nullopt;

    std::optional<Site> site;
    for (std::size_t pu = 0; pu + 1 < len && !site; ++pu) {
      const Vertex bu = PiGraph::b(n, start + pu);
      dyn.ball(std::span<const Vertex>(&bu, 1), g - 1);
      for (std::size_t pl = len - 1; pl > pu; --pl)
        if (!dyn.in_ball(PiGraph::a(n, start + pl))) {
          site = Site{start, pu, pl};
          break;
        }
    }
    if (!site) return std::nullopt;
    sites.push_back(*site);
    std::vector<Vertex> members;
    for (std::size_t t = 0; t < len; ++t) {
      members.push_back(PiGraph::a(n, start + t));
      members.push_back(PiGraph::b(n, start + t));
    }
    forbid_ball(members);
  }

  // Phase 3 adds a*_s, b*_s; phase 4 swaps the a_i - b_i edges inside
  // [u_s, l_s] for shifted ones so every degree returns to 3.
  const std::size_t total = 2 * n + 2 * k;
  std::set<Edge> removed;
  std::vector<Edge> added;
  std::vector<std::pair<Vertex, Vertex>> matching(greedy.matched);
  std::vector<SurgerySite> report;
  for (std::size_t s = 0; s < k; ++s) {
    const auto [start, pu, pl] = sites[s];
    const auto a_star = static_cast<Vertex>(2 * n + 2 * s);
    const auto b_star = static_cast<Vertex>(2 * n + 2 * s + 1);
    const Vertex bj = free_b[s], ai = greedy.free_a[s];
    auto at = [&](std::size_t offset) { return start + offset; };
    added.push_back(Edge::of(bj, a_star));
    added.push_back(Edge::of(a_star, PiGraph::b(n, at(pu))));
    added.push_back(Edge::of(ai, b_star));
    added.push_back(Edge::of(b_star, PiGraph::a(n, at(pl))));
    for (std::size_t t = pu; t <= pl; ++t) removed.insert(Edge::of(PiGraph::a(n, at(t)), PiGraph::b(n, at(t))));
    added.push_back(Edge::of(a_star, PiGraph::b(n, at(pu + 1))));
    added.push_back(Edge::of(PiGraph::a(n, at(pl - 1)), b_star));
    for (std::size_t t = pu + 1; t < pl; ++t)
      added.push_back(Edge::of(PiGraph::a(n, at(t - 1)), PiGraph::b(n, at(t + 1))));
    matching.emplace_back(a_star, bj);
    matching.emplace_back(ai, b_star);
    report.push_back({at(pu) % n, at(pl) % n, a_index(ai), b_index(bj, n)});
  }
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i) {
    Edge e1 = Edge::of(PiGraph::a(n, i), PiGraph::b(n, i));
    if (!removed.count(e1)) edges.push_back(e1);
    edges.push_back(Edge::of(PiGraph::a(n, i), PiGraph::b(n, i + 1)));
  }
  for (auto [a, b] : greedy.matched) edges.push_back(Edge::of(a, b));
  edges.insert(edges.end(), added.begin(), added.end());
  Graph check(total, edges);  // rejects duplicate edges
  return std::make_pair(thread_cycle(total, check.edges(), matching), report);
}

}  // namespace

PiGraph make_pi_graph(std::vector<std::uint32_t> pi) {
  const std::size_t n = pi.size();
  check_side_permutation(pi, n);
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i) {
    edges.push_back(Edge::of(PiGraph::a(n, i), PiGraph::b(n, i)));
    edges.push_back(Edge::of(PiGraph::a(n, i), PiGraph::b(n, i + 1)));
    edges.push_back(Edge::of(PiGraph::a(n, i), PiGraph::b(n, pi[i])));
  }
  PiGraph out;
  out.n = n;
  out.graph = Graph(2 * n, std::move(edges));
  out.pi = std::move(pi);
  return out;
}

std::optional<std::string> check_pi_graph(const PiGraph& p) {
  if (p.graph.vertex_count() != 2 * p.n || p.pi.size() != p.n) return "sizes disagree";
  try {
    auto sides = check_regular_bipartite(p.graph, 3);
    (void)sides;
  } catch (const Error& e) {
    return std::string("not 3-regular bipartite: ") + e.what();
  }
  for (std::size_t i = 0; i < p.n; ++i) {
    const Vertex a = PiGraph::a(p.n, i);
    if (a % 2 != 0) return "a vertex on an odd id";
    for (std::size_t j : {i, i + 1, static_cast<std::size_t>(p.pi[i])})
      if (!p.graph.adjacent(a, PiGraph::b(p.n, j)))
        return "a_" + std::to_string(i) + " misses b_" + std::to_string(j % p.n);
  }
  std::vector<bool> hit(p.n, false);
  for (auto x : p.pi) {
    if (x >= p.n || hit[x]) return "factor edges are not a perfect matching";
    hit[x] = true;
  }
  return std::nullopt;
}

GdGraph pi_base_cycle(const PiGraph& p) { return build_cycle(2 * p.n); }

std::vector<std::uint32_t> pi_side_permutation(const PiGraph& p) {
  // build_cycle sorts B as 1, 3, ..., 2n - 1, so b_j sits at index j - 1.
  std::vector<std::uint32_t> out(p.n);
  for (std::size_t i = 0; i < p.n; ++i) out[i] = static_cast<std::uint32_t>((p.pi[i] + p.n - 1) % p.n);
  return out;
}

PiGraphBuild build_pi_graph(std::size_t g, std::size_t n, std::uint64_t seed, const PiGraphOptions& options) {
  if (g <= 3) throw Error(Errc::precondition, "girth target must exceed 3");
  if (n < 3) throw Error(Errc::precondition, "need at least 3 index pairs");
  const Graph cycle = Graph::cycle(2 * n);
  std::vector<Vertex> a_side, b_side;
  for (std::size_t i = 0; i < n; ++i) a_side.push_back(PiGraph::a(n, i)), b_side.push_back(PiGraph::b(n, i));
  const std::size_t stop = options.stop_below.value_or(0);

  auto attempt = [&](std::size_t r, GrowingGraph& dyn) {
    Rng rng(Rng::derive(seed, r));
    return grow_factor(dyn, a_side, b_side, g, rng, stop);
  };
  auto finish = [&](PiGraphBuild out) {
    out.target = g;
    out.girth = girth(out.result.graph);
    const std::size_t measured = out.girth.value_or(std::numeric_limits<std::size_t>::max());
    out.guarantee_met = out.surgery ? 3 * measured > g : measured > g;
    if (auto why = check_pi_graph(out.result)) throw std::logic_error("construction broke the π-graph form: " + *why);
    if (!out.surgery && !out.guarantee_met) throw std::logic_error("greedy phase produced a short cycle");
    return out;
  };

  std::vector<std::pair<std::size_t, std::size_t>> stalled;  // (leftover, attempt)
  for (std::size_t r = 0; r < options.max_retries; ++r) {
    GrowingGraph dyn(cycle);
    auto greedy = attempt(r, dyn);
    if (greedy.free_a.empty()) {
      std::vector<std::uint32_t> pi(n);
      for (auto [a, b] : greedy.matched) pi[a_index(a)] = static_cast<std::uint32_t>(b_index(b, n));
      PiGraphBuild out;
      out.result = make_pi_graph(std::move(pi));
      out.attempts = r + 1;
      out.attempt_seed = Rng::derive(seed, r);
      return finish(std::move(out));
    }
    stalled.emplace_back(greedy.free_a.size(), r);
  }
  if (options.surgery) {
    std::sort(stalled.begin(), stalled.end());
    for (auto [leftover, r] : stalled) {
      GrowingGraph dyn(cycle);
      auto greedy = attempt(r, dyn);
      auto repaired = surgery(greedy, g, n, dyn);
      if (!repaired) continue;
      PiGraphBuild out;
      out.result = std::move(repaired->first);
      out.sites = std::move(repaired->second);
      out.attempts = options.max_retries;
      out.attempt_seed = Rng::derive(seed, r);
      out.leftover = leftover;
      out.surgery = true;
      return finish(std::move(out));
    }
  }
  std::size_t best = stalled.empty() ? 0 : std::min_element(stalled.begin(), stalled.end())->first;
  throw Error(Errc::retries_exhausted, "no girth > " + std::to_string(g) + " factor on " + std::to_string(2 * n) +
                                           " vertices after " + std::to_string(options.max_retries) +
                                           " attempts (fewest unmatched: " + std::to_string(best) + ")");
}

BigInt guaranteed_n(std::size_t g) {
  BigInt out = 1;
  out <<= static_cast<mp_bitcnt_t>(12 * g + 4);
  return out;
}

std::optional<std::vector<std::uint32_t>> grow_girth_factor(const GdGraph& host, std::size_t g, std::uint64_t seed,
                                                            std::size_t retries) {
  const auto& a = host.sides.a;
  const auto& b = host.sides.b;
  if (a.size() != b.size()) throw Error(Errc::size_mismatch, "sides differ in size");
  for (std::size_t r = 0; r < retries; ++r) {
    GrowingGraph dyn(host.graph);
    Rng rng(Rng::derive(seed, r));
    auto greedy = grow_factor(dyn, a, b, g, rng, 0);
    if (!greedy.free_a.empty()) continue;
    std::vector<std::uint32_t> pi(a.size());
    for (auto [av, bv] : greedy.matched) {
      auto ia = std::lower_bound(a.begin(), a.end(), av) - a.begin();
      auto ib = std::lower_bound(b.begin(), b.end(), bv) - b.begin();
      pi[static_cast<std::size_t>(ia)] = static_cast<std::uint32_t>(ib);
    }
    return pi;
  }
  return std::nullopt;
}

}  // namespace girthforge
