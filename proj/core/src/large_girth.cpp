#include "girthforge/large_girth.hpp"

#include <algorithm>

#include "girthforge/error.hpp"
#include "girthforge/rng.hpp"

namespace girthforge {

namespace {

constexpr std::size_t kFirstCopies = 5;

[[noreturn]] void out_of_budget(std::size_t level, const std::string& why) {
  throw Error(Errc::infeasible_at_budget, "level " + std::to_string(level) + ": " + why,
              {static_cast<std::uint64_t>(level)});
}

// Smallest even cycle length above the target that is also a family member.
std::size_t cycle_length(std::size_t target) {
  std::size_t n = std::max<std::size_t>(6, target + 1);
  return n + n % 2;
}

// A π-graph on |h| vertices whose girth exceeds target * 3|G_k|, read through
// the canonical order of h: position 2i is a_i, position 2j - 1 is b_j.
std::optional<std::vector<std::uint32_t>> relabeled_factor(const GdGraph& h, std::size_t copy_size,
                                                           std::size_t target, const PracticalPolicy& policy,
                                                           std::uint64_t seed) {
  const std::size_t inner = target * 3 * copy_size;
  const std::size_t total = h.graph.vertex_count();
  // A cubic graph with girth > inner has at least 2^(inner / 2) vertices.
  if (inner / 2 >= 63 || total < (std::size_t{1} << (inner / 2))) return std::nullopt;
  PiGraphBuild built;
  try {
    built = build_pi_graph(inner, total / 2, seed, {policy.retries, false, std::nullopt});
  } catch (const Error& e) {
    if (e.code() == Errc::retries_exhausted) return std::nullopt;
    throw;
  }
  const auto order = canonical_order(h);
  const auto& a = h.sides.a;
  const auto& b = h.sides.b;
  std::vector<std::uint32_t> pi(a.size());
  for (std::size_t i = 0; i < built.result.n; ++i) {
    const Vertex av = order[PiGraph::a(built.result.n, i)];
    const Vertex bv = order[PiGraph::b(built.result.n, built.result.pi[i])];
    const auto ia = std::lower_bound(a.begin(), a.end(), av) - a.begin();
    const auto ib = std::lower_bound(b.begin(), b.end(), bv) - b.begin();
    pi[static_cast<std::size_t>(ia)] = static_cast<std::uint32_t>(ib);
  }
  return pi;
}

}  // namespace

LargeGirthResult build_large_girth(std::size_t d, std::size_t target, const PracticalPolicy& policy) {
  if (d < 2) throw Error(Errc::precondition, "level must be at least 2");
  if (target <= 3) throw Error(Errc::precondition, "girth target must exceed 3");
  LargeGirthResult out;
  out.target = target;

  if (d == 2) {
    const std::size_t n = cycle_length(target);
    if (n > policy.max_vertices) out_of_budget(2, "cycle of length " + std::to_string(n) + " exceeds the budget");
    out.graph = build_cycle(n);
    out.girth = n;
    out.levels.push_back({2, n, 0, n, std::nullopt});
    return out;
  }

  // Base: the smallest π-graph size at which the greedy succeeds.
  std::size_t half = std::max<std::size_t>(3, (target + 2) / 2);
  for (;;) {
    if (2 * half > policy.max_vertices) out_of_budget(2, "no π-graph with girth > " + std::to_string(target));
    try {
      out.base = build_pi_graph(target, half, Rng::derive(policy.seed, 0), {policy.retries, false, std::nullopt});
      break;
    } catch (const Error& e) {
      if (e.code() != Errc::retries_exhausted) throw;
      half += std::max<std::size_t>(1, half / 8);
    }
  }
  GdGraph current = pi_base_cycle(out.base->result);
  std::vector<std::uint32_t> pi = pi_side_permutation(out.base->result);
  out.levels.push_back({2, current.graph.vertex_count(), 0, current.graph.vertex_count(), out.base->girth});

  for (std::size_t level = 2; level < d; ++level) {
    for (std::size_t m = kFirstCopies;; ++m) {
      if (m * current.graph.vertex_count() > policy.max_vertices)
        out_of_budget(level + 1, "no extendable member within " + std::to_string(policy.max_vertices) + " vertices");
      GdGraph next = build_h(m, current, pi);
      LevelReport report{level + 1, next.graph.vertex_count(), m, std::nullopt, std::nullopt};
      if (level + 1 == d) {
        out.previous = std::move(current);
        out.previous_pi = std::move(pi);
        out.graph = std::move(next);
        out.levels.push_back(report);
        break;
      }
      const std::uint64_t seed = Rng::derive(policy.seed, level * 1000 + m);
      auto next_pi = policy.factor_source == FactorSource::host_greedy
                         ? grow_girth_factor(next, target, seed, policy.retries)
                         : relabeled_factor(next, current.graph.vertex_count(), target, policy, seed);
      if (!next_pi) continue;
      report.union_girth = girth(pi_union(next, *next_pi), policy.jobs);
      if (!report.union_girth || *report.union_girth <= target)
        throw Error(Errc::witness_failure, "factor growth produced a short cycle at level " + std::to_string(level + 1));
      out.levels.push_back(report);
      current = std::move(next);
      pi = std::move(*next_pi);
      break;
    }
  }

  out.girth = girth(out.graph.graph, policy.jobs);
  out.levels.back().girth = out.girth;
  if (out.girth && *out.girth <= target)
    throw Error(Errc::witness_failure, "level " + std::to_string(d) + " has girth " + std::to_string(*out.girth));
  out.projection_ok = check_homomorphism(out.graph.graph, pi_union(out.previous, out.previous_pi),
                                         copy_projection(out.graph));
  return out;
}

std::vector<SizeEstimate> guaranteed_sizes(std::size_t d, std::size_t target) {
  if (d < 2) throw Error(Errc::precondition, "level must be at least 2");
  if (target <= 3) throw Error(Errc::precondition, "girth target must exceed 3");
  const std::string g = std::to_string(target);
  std::vector<SizeEstimate> out;
  if (d == 2) {
    const auto n = cycle_length(target);
    out.push_back({2, "even cycle length > " + g, BigInt(static_cast<unsigned long>(n)), std::nullopt});
    return out;
  }
  const auto base = static_cast<unsigned long>(12 * target + 4);
  SizeEstimate n2{2, "2 * 2^(12*" + g + "+4)", guaranteed_n(target) * 2, BigInt(base + 1)};
  SizeEstimate n3{3, "12 * 2^(12*" + g + "+4)", guaranteed_n(target) * 12, BigInt(base)};
  out.push_back(n2);
  out.push_back(n3);
  // Exact values are kept while the exponent stays below this many bits.
  constexpr unsigned long kWritableBits = 1u << 16;
  for (std::size_t level = 4; level <= d; ++level) {
    const auto& prev = out.back();
    SizeEstimate next;
    next.level = level;
    next.formula = "12 * 2^(36*" + g + "*N_" + std::to_string(level - 1) + ")";
    if (prev.value) {
      BigInt exponent = BigInt(36 * static_cast<unsigned long>(target)) * *prev.value;
      next.log2 = exponent;
      if (exponent < kWritableBits) {
        BigInt v = 12;
        v <<= static_cast<mp_bitcnt_t>(exponent.get_ui());
        next.value = v;
      }
    }
    out.push_back(std::move(next));
  }
  return out;
}

}  // namespace girthforge
