#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "girthforge/family.hpp"
#include "girthforge/graph.hpp"
#include "girthforge/rational.hpp"

namespace girthforge {

/// Values on vertex subsets. Either an explicit table, or a seeded
/// pseudo-random rational for every subset (f(empty) = 0 in both cases).
class SetFunction {
 public:
  SetFunction() = default;
  static SetFunction random(std::uint64_t seed);

  void set(VertexSet s, Rational value);
  /// Throws Error(missing_subset) for a table without `s`.
  Rational operator()(const VertexSet& s) const;

 private:
  std::map<VertexSet, Rational> table_;
  std::optional<std::uint64_t> seed_;
};

/// I(A;B) = f(A) + f(B) - f(AB) when C is empty,
/// I(A;B|C) = f(AC) + f(BC) - f(C) - f(ABC) otherwise.
Rational eval_I(const SetFunction& f, const VertexSet& a, const VertexSet& b, const VertexSet& c = {});

/// The n - 1 pairs (X, Y) with sum_i f(E_i) - f(E_1...E_n) = sum I(X;Y):
/// (E1;E2), (E1E2;E3), (E1E2E3; E4...En), (E4;E5), ..., (E4...E_{n-1}; En).
/// Needs n >= 5.
std::vector<std::pair<VertexSet, VertexSet>> chain_decomposition(const std::vector<VertexSet>& blocks);

struct DecompositionCheck {
  bool ok = true;
  std::size_t trials = 0;
  std::string counterexample;  // blocks and f values of the first failure
};

/// Random overlapping blocks over a small ground set and random rational f;
/// compares both sides exactly. Throws Error(precondition) for n < 5.
DecompositionCheck check_decomposition_identity(std::size_t n, std::size_t trials, std::uint64_t seed);

enum class TermKind {
  shannon,            // I(A;B|C) >= 0
  strict_submodular,  // C empty or independent, AC and BC qualified: I(A;B|C) >= 1
  factor_information, // B independent, A qualified, factor B -> A: I(A;B) >= |B|
  factor_entropy,     // same premises: f(A) >= |B| + 1
  split_information,  // A, B qualified, B' in B independent, factor B' -> A: I(A;B) >= |B'| + 1
};

std::string_view kind_name(TermKind k) noexcept;
std::optional<TermKind> parse_kind(std::string_view name);

/// One inequality with its combinatorial witness. factor_entropy bounds f(A);
/// every other kind bounds I(A;B|C).
struct TermBound {
  TermKind kind = TermKind::shannon;
  VertexSet a, b, c, b_prime;
  OneFactor factor;
  Rational bound;
};

enum class TermVerdict {
  ok,
  out_of_range,
  not_disjoint,
  c_qualified,
  ac_independent,
  bc_independent,
  a_independent,
  b_independent,
  b_qualified,
  b_prime_not_subset,
  b_prime_qualified,
  bad_factor,
  bound_exceeds,
};

std::string_view verdict_name(TermVerdict v) noexcept;

struct TermCheck {
  TermVerdict verdict = TermVerdict::ok;
  Rational entitled;   // the bound the premises allow
  FactorCheck factor;  // details for bad_factor

  explicit operator bool() const noexcept { return verdict == TermVerdict::ok; }
  std::string describe() const;
};

/// Checks the premises of `t.kind` against `g` and that t.bound does not
/// exceed the entitled bound. An empty B in factor_information is the trivial
/// case I(A; empty) >= 0.
TermCheck verify_term(const Graph& g, const TermBound& t);

enum class Claim {
  sum,  // sum_{v in V} f(v) >= subtotal
  gap,  // sum_{v in V} f(v) - f(V) >= subtotal
};

/// The claim's left side equals the children's left sides plus the terms'
/// expressions (an identity in f); the subtotal is the sum of their bounds.
struct CertificateNode {
  Claim claim = Claim::gap;
  std::size_t level = 0;
  VertexSet vertices;
  std::vector<VertexSet> blocks;
  std::vector<TermBound> terms;
  std::vector<CertificateNode> children;
  Rational subtotal;
};

struct Certificate {
  CertificateNode sum;  // sum f(v) >= (d+1)/2 |V|
  CertificateNode gap;  // sum f(v) - f(V) >= d/2 |V| - 1
  Rational total() const { return sum.subtotal; }
};

/// Builds both inductions from the recursion metadata and verifies every
/// witness. Throws Error(structure_unknown) without metadata,
/// Error(precondition) for fewer than 5 copies at some level, and
/// Error(witness_failure) naming the level and term when a witness fails.
Certificate certify_sum_bound(const GdGraph& g);

struct AuditReport {
  bool ok = true;
  std::string failure;  // path of the first failing node and the reason
  std::size_t nodes = 0;
  std::size_t terms = 0;
  Rational sum_total;
  Rational gap_total;

  explicit operator bool() const noexcept { return ok; }
};

/// Re-verifies every term against `g`, re-checks each node's identity with
/// `trials` random set functions and re-adds every subtotal. Uses only the
/// certificate and the graph. `jobs` > 1 checks terms on several threads.
AuditReport audit_certificate(const Graph& g, const Certificate& c, std::size_t trials, std::uint64_t seed,
                              unsigned jobs = 1);

/// Number of terms in the tree.
std::size_t term_count(const CertificateNode& node);

}  // namespace girthforge
