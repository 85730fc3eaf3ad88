#include "girthforge/scheme.hpp"

#include <algorithm>
#include <bit>
#include <thread>

#include "girthforge/error.hpp"

namespace girthforge {

PrimeField::PrimeField(std::uint64_t q) : q_(q) {
  if (!is_prime(q)) throw Error(Errc::precondition, std::to_string(q) + " is not prime");
}

bool PrimeField::is_prime(std::uint64_t q) noexcept {
  if (q < 2) return false;
  for (std::uint64_t p = 2; p * p <= q; ++p)
    if (q % p == 0) return false;
  return true;
}

std::uint64_t PrimeField::pow(std::uint64_t a, std::uint64_t e) const noexcept {
  std::uint64_t out = 1 % q_;
  a %= q_;
  for (; e; e >>= 1, a = mul(a, a))
    if (e & 1) out = mul(out, a);
  return out;
}

std::uint64_t PrimeField::inverse(std::uint64_t a) const {
  if (a % q_ == 0) throw Error(Errc::precondition, "zero has no inverse");
  return pow(a, q_ - 2);
}

std::size_t DecompositionScheme::star_count() const {
  std::size_t n = 0;
  for (const auto& s : stars) n += s.multiplicity;
  return n;
}

std::vector<std::vector<std::size_t>> DecompositionScheme::memberships() const {
  std::vector<std::vector<std::size_t>> out(graph.vertex_count());
  for (std::size_t i = 0; i < stars.size(); ++i) {
    for (std::size_t k = 0; k < stars[i].multiplicity; ++k) {
      out[stars[i].center].push_back(i);
      for (Vertex leaf : stars[i].leaves) out[leaf].push_back(i);
    }
  }
  for (auto& list : out) std::sort(list.begin(), list.end());
  return out;
}

DecompositionScheme make_star_decomposition(const Graph& g) {
  DecompositionScheme s;
  s.graph = g;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (g.degree(v) == 0) throw Error(Errc::isolated_vertex, "vertex " + std::to_string(v) + " has no edges", {v});
    auto nb = g.neighbors(v);
    s.stars.push_back({v, VertexSet(nb.begin(), nb.end()), 1, 0});
  }
  return s;
}

DecompositionScheme realize_scheme(const DecompositionScheme& skeleton, std::uint64_t q) {
  const PrimeField field(q);
  if (q <= skeleton.star_count())
    throw Error(Errc::field_too_small,
                "q = " + std::to_string(q) + " but " + std::to_string(skeleton.star_count()) + " stars need distinct points",
                {q, skeleton.star_count()});
  DecompositionScheme out;
  out.graph = skeleton.graph;
  out.lambda = skeleton.lambda;
  out.q = field.order();
  for (const auto& star : skeleton.stars) {
    for (std::size_t k = 0; k < star.multiplicity; ++k) {
      out.stars.push_back({star.center, star.leaves, 1, out.stars.size() + 1});
    }
  }
  out.randomness.resize(out.stars.size());
  for (std::size_t i = 0; i < out.randomness.size(); ++i) out.randomness[i] = i;
  return out;
}

DecompositionScheme share_randomness(DecompositionScheme s, std::size_t source, std::size_t reuser) {
  if (source >= s.randomness.size() || reuser >= s.randomness.size())
    throw Error(Errc::precondition, "star index out of range");
  s.randomness[reuser] = s.randomness[source];
  return s;
}

JointDistribution enumerate_joint(const DecompositionScheme& s, std::uint64_t budget) {
  if (s.q == 0 || s.randomness.size() != s.stars.size())
    throw Error(Errc::precondition, "scheme has not been realized over a field");
  if (s.lambda == 0) throw Error(Errc::precondition, "lambda must be positive");
  JointDistribution jd;
  jd.scheme_ = s;
  jd.masks_ = s.stars.size();
  std::uint64_t states = 1;
  for (std::size_t k = 0; k < s.lambda + jd.masks_; ++k) {
    if (states > budget / s.q)
      throw Error(Errc::budget_exceeded,
                  "q^" + std::to_string(s.lambda + jd.masks_) + " states exceed the budget of " + std::to_string(budget),
                  {s.q, s.lambda + jd.masks_, budget});
    states *= s.q;
    if (k + 1 == s.lambda) jd.secrets_ = states;
  }
  jd.states_ = states;
  jd.coords_.resize(s.graph.vertex_count());
  for (std::size_t i = 0; i < s.stars.size(); ++i) {
    jd.coords_[s.stars[i].center].push_back({i, false});
    for (Vertex leaf : s.stars[i].leaves) jd.coords_[leaf].push_back({i, true});
  }
  for (auto& list : jd.coords_)
    std::sort(list.begin(), list.end(), [](const auto& x, const auto& y) { return x.star < y.star; });
  return jd;
}

std::optional<unsigned __int128> JointDistribution::tuple_space(const VertexSet& s) const {
  unsigned __int128 space = 1;
  const unsigned __int128 limit = static_cast<unsigned __int128>(1) << 120;
  for (Vertex v : s)
    for (std::size_t k = 0; k < coords_.at(v).size(); ++k) {
      space *= scheme_.q;
      if (space > limit) return std::nullopt;
    }
  return space;
}

namespace {

// Walks consecutive states. A state index is secret + secrets * (mask
// odometer in base q); sub-secrets P(x_i) are tabulated per secret.
class StateDecoder {
 public:
  explicit StateDecoder(const DecompositionScheme& s) : s_(s), q_(s.q) {
    const PrimeField field(s.q);
    for (std::size_t k = 0; k < s.lambda; ++k) secrets_ *= s.q;
    const std::size_t t = s.stars.size();
    sub_.resize(secrets_ * t);
    for (std::uint64_t secret = 0; secret < secrets_; ++secret) {
      for (std::size_t i = 0; i < t; ++i) {
        std::uint64_t c = 0, rest = secret;
        for (std::size_t k = 0; k < s.lambda; ++k, rest /= s.q)
          c = field.add(c, field.mul(rest % s.q, field.pow(s.stars[i].x, k)));
        sub_[secret * t + i] = c;
      }
    }
    masks_.resize(t);
  }

  void seek(std::uint64_t state) {
    secret_ = state % secrets_;
    state /= secrets_;
    for (auto& d : masks_) {
      d = state % q_;
      state /= q_;
    }
  }

  void next() {
    if (++secret_ < secrets_) return;
    secret_ = 0;
    for (auto& d : masks_) {
      if (++d < q_) return;
      d = 0;
    }
  }

  std::uint64_t value(std::size_t star, bool leaf) const {
    const std::uint64_t r = masks_[s_.randomness[star]];
    if (!leaf) return r;
    const std::uint64_t v = sub_[secret_ * masks_.size() + star] + r;
    return v >= q_ ? v - q_ : v;
  }

 private:
  const DecompositionScheme& s_;
  std::uint64_t q_;
  std::uint64_t secrets_ = 1;
  std::uint64_t secret_ = 0;
  std::vector<std::uint64_t> sub_, masks_;
};

template <class Work>
void split_range(std::uint64_t total, unsigned jobs, Work work) {
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::uint64_t>(1, total))));
  if (jobs == 1) {
    work(0, 0, total);
    return;
  }
  std::vector<std::thread> threads;
  for (unsigned j = 0; j < jobs; ++j)
    threads.emplace_back(work, j, total * j / jobs, total * (j + 1) / jobs);
  for (auto& t : threads) t.join();
}

}  // namespace

std::vector<unsigned __int128> JointDistribution::joint_keys(const VertexSet& s, unsigned jobs) const {
  if (!tuple_space(s)) throw Error(Errc::budget_exceeded, "joint share tuple does not fit in 120 bits");
  std::vector<unsigned __int128> keys(states_);
  std::vector<std::uint64_t> bounds;
  split_range(states_, jobs, [&](unsigned, std::uint64_t begin, std::uint64_t end) {
    StateDecoder dec(scheme_);
    dec.seek(begin);
    for (std::uint64_t st = begin; st < end; ++st, dec.next()) {
      unsigned __int128 key = 0;
      for (Vertex v : s)
        for (const auto& c : coords_[v]) key = key * scheme_.q + dec.value(c.star, c.leaf);
      keys[st] = key * secrets_ + st % secrets_;
    }
    std::sort(keys.begin() + static_cast<std::ptrdiff_t>(begin), keys.begin() + static_cast<std::ptrdiff_t>(end));
  });
  // Chunks are sorted; finish with a full sort, which is near-linear on runs.
  std::sort(keys.begin(), keys.end());
  return keys;
}

std::vector<std::uint32_t> JointDistribution::joint_counts(const VertexSet& s, unsigned jobs) const {
  const auto space = tuple_space(s);
  if (!space || *space > kDenseCountCap / secrets_)
    throw Error(Errc::budget_exceeded, "joint share space is too large for dense counting");
  const auto size = static_cast<std::size_t>(*space * secrets_);
  jobs = std::max(1u, jobs);
  std::vector<std::vector<std::uint32_t>> partial(jobs);
  split_range(states_, jobs, [&](unsigned j, std::uint64_t begin, std::uint64_t end) {
    StateDecoder dec(scheme_);
    dec.seek(begin);
    auto& counts = partial[j];
    counts.assign(size, 0);
    for (std::uint64_t st = begin; st < end; ++st, dec.next()) {
      std::uint64_t key = 0;
      for (Vertex v : s)
        for (const auto& c : coords_[v]) key = key * scheme_.q + dec.value(c.star, c.leaf);
      ++counts[key * secrets_ + st % secrets_];
    }
  });
  for (std::size_t j = 1; j < partial.size(); ++j)
    for (std::size_t k = 0; k < partial[j].size(); ++k) partial[0][k] += partial[j][k];
  return partial[0];
}

std::vector<std::uint64_t> JointDistribution::share_counts(Vertex v, unsigned jobs) const {
  const auto space = tuple_space({v});
  if (!space || *space > kEnumerationBudget)
    throw Error(Errc::budget_exceeded, "share space of vertex " + std::to_string(v) + " is too large", {v});
  const auto size = static_cast<std::size_t>(*space);
  jobs = std::max(1u, jobs);
  std::vector<std::vector<std::uint64_t>> partial(jobs, std::vector<std::uint64_t>(size, 0));
  split_range(states_, jobs, [&](unsigned j, std::uint64_t begin, std::uint64_t end) {
    StateDecoder dec(scheme_);
    dec.seek(begin);
    auto& counts = partial[j];
    for (std::uint64_t st = begin; st < end; ++st, dec.next()) {
      std::uint64_t key = 0;
      for (const auto& c : coords_[v]) key = key * scheme_.q + dec.value(c.star, c.leaf);
      ++counts[key];
    }
  });
  for (std::size_t j = 1; j < partial.size(); ++j)
    for (std::size_t k = 0; k < size; ++k) partial[0][k] += partial[j][k];
  return partial[0];
}

bool PerfectnessReport::determines_all() const {
  return std::all_of(edges.begin(), edges.end(), [](const auto& e) { return e.determines; });
}

bool PerfectnessReport::hides_all() const {
  return std::all_of(independent_sets.begin(), independent_sets.end(), [](const auto& s) { return s.independent; });
}

std::string PerfectnessReport::first_failure() const {
  for (const auto& e : edges)
    if (!e.determines) return "edge " + std::to_string(e.u) + "-" + std::to_string(e.v) + " does not determine the secret";
  for (const auto& s : independent_sets) {
    if (s.independent) continue;
    std::string out = "independent set {";
    for (std::size_t i = 0; i < s.set.size(); ++i) out += (i ? "," : "") + std::to_string(s.set[i]);
    return out + "} learns about the secret";
  }
  return {};
}

std::vector<VertexSet> maximal_independent_sets(const Graph& g) {
  const std::size_t n = g.vertex_count();
  if (n > 64) throw Error(Errc::size_limit, "maximal independent sets are enumerated for at most 64 vertices");
  using Mask = std::uint64_t;
  const Mask all = n == 64 ? ~Mask{0} : (Mask{1} << n) - 1;
  std::vector<Mask> free_of(n);  // vertices non-adjacent to v, v excluded
  for (Vertex v = 0; v < n; ++v) {
    Mask adj = Mask{1} << v;
    for (Vertex u : g.neighbors(v)) adj |= Mask{1} << u;
    free_of[v] = all & ~adj;
  }
  std::vector<VertexSet> out;
  auto expand = [&](auto&& self, Mask r, Mask p, Mask x) -> void {
    if (!p && !x) {
      VertexSet s;
      for (Mask m = r; m; m &= m - 1) s.push_back(static_cast<Vertex>(std::countr_zero(m)));
      out.push_back(std::move(s));
      return;
    }
    const Mask px = p | x;
    const auto pivot = static_cast<Vertex>(std::countr_zero(px));
    for (Mask cand = p & ~free_of[pivot]; cand; cand &= cand - 1) {
      const auto v = static_cast<Vertex>(std::countr_zero(cand));
      const Mask bit = Mask{1} << v;
      if (!(p & bit)) continue;
      self(self, r | bit, p & free_of[v], x & free_of[v]);
      p &= ~bit;
      x |= bit;
    }
  };
  if (n > 0) expand(expand, 0, all, 0);
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

// Calls visit(counts) for every attained share tuple of s, where counts[k] is
// the number of states with that tuple and secret k.
template <class Visit>
void for_each_tuple(const JointDistribution& jd, const VertexSet& s, unsigned jobs, Visit visit) {
  const std::uint64_t secrets = jd.secrets();
  std::vector<std::uint64_t> counts(secrets);
  const auto space = jd.tuple_space(s);
  if (space && *space <= kDenseCountCap / secrets) {
    const auto dense = jd.joint_counts(s, jobs);
    for (std::size_t base = 0; base < dense.size(); base += secrets) {
      bool seen = false;
      for (std::uint64_t k = 0; k < secrets; ++k) seen |= (counts[k] = dense[base + k]) > 0;
      if (seen && !visit(counts)) return;
    }
    return;
  }
  const auto keys = jd.joint_keys(s, jobs);
  for (std::size_t i = 0; i < keys.size();) {
    const auto tuple = keys[i] / secrets;
    std::fill(counts.begin(), counts.end(), 0);
    for (; i < keys.size() && keys[i] / secrets == tuple; ++i) ++counts[static_cast<std::size_t>(keys[i] % secrets)];
    if (!visit(counts)) return;
  }
}

}  // namespace

PerfectnessReport verify_perfect(const Graph& g, const JointDistribution& jd, unsigned jobs) {
  if (g.vertex_count() != jd.scheme().graph.vertex_count())
    throw Error(Errc::size_mismatch, "graph and scheme disagree on the vertex count");
  PerfectnessReport report;

  for (const auto& e : g.edges()) {
    bool ok = true;
    for_each_tuple(jd, {e.u, e.v}, jobs, [&](const auto& counts) {
      ok = std::count_if(counts.begin(), counts.end(), [](auto c) { return c > 0; }) == 1;
      return ok;
    });
    report.edges.push_back({e.u, e.v, ok});
  }

  for (auto& set : maximal_independent_sets(g)) {
    bool ok = true;
    for_each_tuple(jd, set, jobs, [&](const auto& counts) {
      ok = std::adjacent_find(counts.begin(), counts.end(), std::not_equal_to<>()) == counts.end();
      return ok;
    });
    report.independent_sets.push_back({std::move(set), ok});
  }

  report.uniform = true;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    const auto counts = jd.share_counts(v, jobs);
    const auto support = static_cast<std::uint64_t>(std::count_if(counts.begin(), counts.end(), [](auto c) { return c > 0; }));
    report.support.push_back(support);
    if (support != counts.size() || std::adjacent_find(counts.begin(), counts.end(), std::not_equal_to<>()) != counts.end())
      report.uniform = false;
  }
  if (report.perfect() && report.uniform) report.ratio = structural_ratio(jd.scheme());
  return report;
}

Rational measured_ratio(const JointDistribution& jd, unsigned jobs) {
  for (Vertex v = 0; v < jd.scheme().graph.vertex_count(); ++v) {
    const auto counts = jd.share_counts(v, jobs);
    const auto expected = jd.states() / counts.size();
    for (std::size_t k = 0; k < counts.size(); ++k)
      if (counts[k] != expected)
        throw Error(Errc::nonuniform_share, "share of vertex " + std::to_string(v) + " is not uniform", {v, k});
  }
  return structural_ratio(jd.scheme());
}

Rational structural_ratio(const DecompositionScheme& s) {
  std::size_t most = 0;
  for (const auto& list : s.memberships()) most = std::max(most, list.size());
  Rational r(static_cast<long>(most), static_cast<long>(s.lambda));
  r.canonicalize();
  return r;
}

}  // namespace girthforge
