#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "girthforge/graph.hpp"
#include "girthforge/rational.hpp"

namespace girthforge {

/// Arithmetic in GF(q). Construction throws Error(precondition) unless q is prime.
class PrimeField {
 public:
  explicit PrimeField(std::uint64_t q);

  std::uint64_t order() const noexcept { return q_; }
  std::uint64_t add(std::uint64_t a, std::uint64_t b) const noexcept { return (a + b) % q_; }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const noexcept {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % q_);
  }
  std::uint64_t pow(std::uint64_t a, std::uint64_t e) const noexcept;
  std::uint64_t inverse(std::uint64_t a) const;  // a != 0

  static bool is_prime(std::uint64_t q) noexcept;

 private:
  std::uint64_t q_;
};

/// A full star: the center and all of its neighbors.
struct Star {
  Vertex center = 0;
  VertexSet leaves;
  std::size_t multiplicity = 1;
  std::uint64_t x = 0;  // evaluation point, set by realize_scheme
};

/// Stars covering every edge at least lambda times. Star i deals its random
/// mask r_{randomness[i]} to the center and P(x_i) + that mask to each leaf,
/// where the secret is the lambda coefficients of P.
struct DecompositionScheme {
  Graph graph;
  std::vector<Star> stars;
  std::size_t lambda = 2;
  std::uint64_t q = 0;                 // 0 for an unrealized skeleton
  std::vector<std::size_t> randomness; // mask index per star, i by default

  std::size_t star_count() const;  // with multiplicity
  /// Star indices holding a share of each vertex, in star order.
  std::vector<std::vector<std::size_t>> memberships() const;
};

/// One full star per vertex, lambda = 2. Throws Error(isolated_vertex).
DecompositionScheme make_star_decomposition(const Graph& g);

/// Expands multiplicities, sets x_i = i (1-based) and q. Throws
/// Error(field_too_small) when q <= number of stars and Error(precondition)
/// when q is not prime. Edge coverage is not enforced here; an under-covered
/// skeleton yields a scheme that verify_perfect rejects.
DecompositionScheme realize_scheme(const DecompositionScheme& skeleton, std::uint64_t q);

/// Makes star `reuser` deal the same mask as star `source`.
DecompositionScheme share_randomness(DecompositionScheme s, std::size_t source, std::size_t reuser);

inline constexpr std::uint64_t kEnumerationBudget = 100'000'000;
inline constexpr std::uint64_t kDenseCountCap = std::uint64_t{1} << 26;

/// Every (secret, randomness) pair with equal weight. States are indexed
/// 0..states()-1 and decoded on demand, so memory stays proportional to the
/// largest query rather than to the full table.
class JointDistribution {
 public:
  const DecompositionScheme& scheme() const noexcept { return scheme_; }
  std::uint64_t states() const noexcept { return states_; }
  std::uint64_t secrets() const noexcept { return secrets_; }
  std::size_t arity(Vertex v) const { return coords_[v].size(); }

  /// Number of distinct values of the joint share of `s`, q^(total arity).
  /// nullopt when it does not fit in 120 bits.
  std::optional<unsigned __int128> tuple_space(const VertexSet& s) const;

  /// Sorted (share tuple of s) * secrets() + secret over all states.
  std::vector<unsigned __int128> joint_keys(const VertexSet& s, unsigned jobs = 1) const;

  /// Dense counts indexed by (share tuple of s) * secrets() + secret. Throws
  /// Error(budget_exceeded) when that index space exceeds kDenseCountCap.
  std::vector<std::uint32_t> joint_counts(const VertexSet& s, unsigned jobs = 1) const;

  /// Count of each share value of v (encoded base q). Throws
  /// Error(budget_exceeded) when q^arity(v) exceeds the enumeration budget.
  std::vector<std::uint64_t> share_counts(Vertex v, unsigned jobs = 1) const;

 private:
  friend JointDistribution enumerate_joint(const DecompositionScheme&, std::uint64_t);

  struct Coordinate {
    std::size_t star;
    bool leaf;
  };

  DecompositionScheme scheme_;
  std::uint64_t states_ = 0;
  std::uint64_t secrets_ = 0;
  std::size_t masks_ = 0;
  std::vector<std::vector<Coordinate>> coords_;
};

/// Throws Error(budget_exceeded) when q^(lambda + masks) > budget and
/// Error(precondition) for an unrealized skeleton.
JointDistribution enumerate_joint(const DecompositionScheme& s, std::uint64_t budget = kEnumerationBudget);

struct EdgeVerdict {
  Vertex u = 0, v = 0;
  bool determines = false;
};

struct IndependenceVerdict {
  VertexSet set;
  bool independent = false;
};

struct PerfectnessReport {
  std::vector<EdgeVerdict> edges;
  std::vector<IndependenceVerdict> independent_sets;  // maximal ones
  std::vector<std::uint64_t> support;  // distinct share values per vertex
  bool uniform = false;                // every share uniform on q^arity values
  std::optional<Rational> ratio;       // when perfect and uniform

  bool determines_all() const;
  bool hides_all() const;
  bool perfect() const { return determines_all() && hides_all(); }
  std::string first_failure() const;  // empty when perfect
};

/// Maximal independent sets, each sorted, in lexicographic order.
/// Throws Error(size_limit) above 64 vertices.
std::vector<VertexSet> maximal_independent_sets(const Graph& g);

/// Exact counting checks: every edge's shares determine the secret, and every
/// maximal independent set's shares have identical counts for each secret.
PerfectnessReport verify_perfect(const Graph& g, const JointDistribution& jd, unsigned jobs = 1);

/// max_v arity(v) / lambda. Throws Error(nonuniform_share) unless every share
/// is uniform over all q^arity values.
Rational measured_ratio(const JointDistribution& jd, unsigned jobs = 1);

/// The same ratio read off the star structure, for schemes too large to
/// enumerate. Perfectness is not claimed.
Rational structural_ratio(const DecompositionScheme& s);

}  // namespace girthforge
