#include "girthforge/certificate.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>
#include <sstream>
#include <thread>

#include "girthforge/error.hpp"
#include "girthforge/rng.hpp"

namespace girthforge {

SetFunction SetFunction::random(std::uint64_t seed) {
  SetFunction f;
  f.seed_ = seed;
  return f;
}

void SetFunction::set(VertexSet s, Rational value) { table_[make_set(std::move(s))] = std::move(value); }

Rational SetFunction::operator()(const VertexSet& s) const {
  if (s.empty()) return 0;
  if (auto it = table_.find(s); it != table_.end()) return it->second;
  if (!seed_) {
    std::vector<std::uint64_t> witness(s.begin(), s.end());
    throw Error(Errc::missing_subset, "set function has no value for a subset of size " + std::to_string(s.size()),
                std::move(witness));
  }
  std::uint64_t h = *seed_;
  for (Vertex v : s) h = Rng::derive(h, v);
  h = Rng::derive(h, s.size());
  Rational value(static_cast<long>(h & 0xFFFFF), static_cast<long>((h >> 20) % 997 + 1));
  value.canonicalize();
  return value;
}

Rational eval_I(const SetFunction& f, const VertexSet& a, const VertexSet& b, const VertexSet& c) {
  const VertexSet ac = set_union(a, c), bc = set_union(b, c);
  return f(ac) + f(bc) - f(c) - f(set_union(ac, b));
}

std::vector<std::pair<VertexSet, VertexSet>> chain_decomposition(const std::vector<VertexSet>& blocks) {
  const std::size_t n = blocks.size();
  if (n < 5) throw Error(Errc::precondition, "the chain decomposition needs at least 5 blocks");
  auto join = [&](std::size_t lo, std::size_t hi) {
    VertexSet out;
    for (std::size_t i = lo; i < hi; ++i) out = set_union(out, blocks[i]);
    return out;
  };
  std::vector<std::pair<VertexSet, VertexSet>> out;
  out.emplace_back(blocks[0], blocks[1]);
  out.emplace_back(join(0, 2), blocks[2]);
  out.emplace_back(join(0, 3), join(3, n));
  for (std::size_t k = 4; k < n; ++k) out.emplace_back(join(3, k), blocks[k]);
  return out;
}

DecompositionCheck check_decomposition_identity(std::size_t n, std::size_t trials, std::uint64_t seed) {
  if (n < 5) throw Error(Errc::precondition, "the chain decomposition needs at least 5 blocks");
  DecompositionCheck out;
  const std::size_t ground = 3 * n;
  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng(Rng::derive(seed, t));
    std::vector<VertexSet> blocks(n);
    for (auto& block : blocks)
      for (Vertex v = 0; v < ground; ++v)
        if (rng.below(3) == 0) block.push_back(v);
    const SetFunction f = SetFunction::random(rng.next());

    Rational lhs = 0;
    VertexSet all;
    for (const auto& block : blocks) {
      lhs += f(block);
      all = set_union(all, block);
    }
    lhs -= f(all);
    Rational rhs = 0;
    for (const auto& [x, y] : chain_decomposition(blocks)) rhs += eval_I(f, x, y);
    ++out.trials;
    if (lhs != rhs) {
      std::ostringstream msg;
      msg << "trial " << t << ": lhs " << to_string(lhs) << " rhs " << to_string(rhs) << "; blocks";
      for (const auto& block : blocks) {
        msg << " {";
        for (std::size_t i = 0; i < block.size(); ++i) msg << (i ? "," : "") << block[i];
        msg << "}=" << to_string(f(block));
      }
      out.ok = false;
      out.counterexample = msg.str();
      return out;
    }
  }
  return out;
}

std::string_view kind_name(TermKind k) noexcept {
  switch (k) {
    case TermKind::shannon: return "shannon";
    case TermKind::strict_submodular: return "strict_submodular";
    case TermKind::factor_information: return "factor_information";
    case TermKind::factor_entropy: return "factor_entropy";
    case TermKind::split_information: return "split_information";
  }
  return "unknown";
}

std::optional<TermKind> parse_kind(std::string_view name) {
  for (auto k : {TermKind::shannon, TermKind::strict_submodular, TermKind::factor_information,
                 TermKind::factor_entropy, TermKind::split_information})
    if (kind_name(k) == name) return k;
  return std::nullopt;
}

std::string_view verdict_name(TermVerdict v) noexcept {
  switch (v) {
    case TermVerdict::ok: return "OK";
    case TermVerdict::out_of_range: return "OUT_OF_RANGE";
    case TermVerdict::not_disjoint: return "NOT_DISJOINT";
    case TermVerdict::c_qualified: return "C_QUALIFIED";
    case TermVerdict::ac_independent: return "AC_INDEPENDENT";
    case TermVerdict::bc_independent: return "BC_INDEPENDENT";
    case TermVerdict::a_independent: return "A_INDEPENDENT";
    case TermVerdict::b_independent: return "B_INDEPENDENT";
    case TermVerdict::b_qualified: return "B_QUALIFIED";
    case TermVerdict::b_prime_not_subset: return "B_PRIME_NOT_SUBSET";
    case TermVerdict::b_prime_qualified: return "B_PRIME_QUALIFIED";
    case TermVerdict::bad_factor: return "BAD_FACTOR";
    case TermVerdict::bound_exceeds: return "BOUND_EXCEEDS";
  }
  return "UNKNOWN";
}

std::string TermCheck::describe() const {
  std::string out(verdict_name(verdict));
  if (verdict == TermVerdict::bad_factor)
    out += std::string(" ") + std::string(verdict_name(factor.verdict)) + "(" + std::to_string(factor.b) + ", " +
           std::to_string(factor.a) + ")";
  if (verdict == TermVerdict::bound_exceeds) out += " (entitled " + to_string(entitled) + ")";
  return out;
}

TermCheck verify_term(const Graph& g, const TermBound& t) {
  TermCheck r;
  auto fail = [&](TermVerdict v) {
    r.verdict = v;
    return r;
  };
  for (const auto* s : {&t.a, &t.b, &t.c, &t.b_prime})
    for (Vertex v : *s)
      if (!g.contains(v)) return fail(TermVerdict::out_of_range);
  for (auto [b, a] : t.factor.pairs)
    if (!g.contains(a) || !g.contains(b)) return fail(TermVerdict::out_of_range);

  switch (t.kind) {
    case TermKind::shannon:
      r.entitled = 0;
      break;
    case TermKind::strict_submodular:
      if (is_qualified(g, t.c)) return fail(TermVerdict::c_qualified);
      if (is_independent(g, set_union(t.a, t.c))) return fail(TermVerdict::ac_independent);
      if (is_independent(g, set_union(t.b, t.c))) return fail(TermVerdict::bc_independent);
      r.entitled = 1;
      break;
    case TermKind::factor_information:
    case TermKind::factor_entropy: {
      if (!sets_disjoint(t.a, t.b)) return fail(TermVerdict::not_disjoint);
      if (t.kind == TermKind::factor_information && t.b.empty()) {
        r.entitled = 0;
        break;
      }
      if (is_qualified(g, t.b)) return fail(TermVerdict::b_qualified);
      if (is_independent(g, t.a)) return fail(TermVerdict::a_independent);
      r.factor = verify_one_factor(g, t.b, t.a, t.factor);
      if (!r.factor) return fail(TermVerdict::bad_factor);
      r.entitled = static_cast<long>(t.b.size()) + (t.kind == TermKind::factor_entropy ? 1 : 0);
      break;
    }
    case TermKind::split_information:
      if (!sets_disjoint(t.a, t.b)) return fail(TermVerdict::not_disjoint);
      if (is_independent(g, t.a)) return fail(TermVerdict::a_independent);
      if (is_independent(g, t.b)) return fail(TermVerdict::b_independent);
      if (!is_subset(t.b_prime, t.b)) return fail(TermVerdict::b_prime_not_subset);
      if (is_qualified(g, t.b_prime)) return fail(TermVerdict::b_prime_qualified);
      r.factor = verify_one_factor(g, t.b_prime, t.a, t.factor);
      if (!r.factor) return fail(TermVerdict::bad_factor);
      r.entitled = static_cast<long>(t.b_prime.size()) + 1;
      break;
  }
  if (t.bound > r.entitled) return fail(TermVerdict::bound_exceeds);
  return r;
}

namespace {

VertexSet range_set(Vertex lo, Vertex hi) {
  VertexSet out(hi - lo);
  std::iota(out.begin(), out.end(), lo);
  return out;
}

VertexSet shifted(const VertexSet& s, Vertex offset) {
  VertexSet out(s);
  for (auto& v : out) v += offset;
  return out;
}

// Pairs of junction i (b in B^i, a in A^{i+1}) as a factor from A^{i+1}
// into B^i.
OneFactor reversed(const OneFactor& f, Vertex offset) {
  OneFactor out;
  for (auto [b, a] : f.pairs) out.pairs.emplace_back(a + offset, b + offset);
  return out;
}

OneFactor forward(const OneFactor& f, Vertex offset) {
  OneFactor out;
  for (auto [b, a] : f.pairs) out.pairs.emplace_back(b + offset, a + offset);
  return out;
}

OneFactor joined(OneFactor x, const OneFactor& y) {
  x.pairs.insert(x.pairs.end(), y.pairs.begin(), y.pairs.end());
  return x;
}

TermBound term(TermKind kind, VertexSet a, VertexSet b, VertexSet b_prime, OneFactor factor, long bound) {
  TermBound t;
  t.kind = kind;
  t.a = make_set(std::move(a));
  t.b = make_set(std::move(b));
  t.b_prime = make_set(std::move(b_prime));
  t.factor = std::move(factor);
  t.bound = bound;
  return t;
}

void close_node(CertificateNode& node) {
  node.subtotal = 0;
  for (const auto& t : node.terms) node.subtotal += t.bound;
  for (const auto& c : node.children) node.subtotal += c.subtotal;
}

void require_structure(const GdGraph& g) {
  if (!g.has_structure()) throw Error(Errc::structure_unknown, "graph carries no recursion metadata");
  if (g.level == 2 && g.graph.vertex_count() < 6)
    throw Error(Errc::precondition, "cycles need at least 6 vertices");
  if (g.level > 2 && g.copies.size() < 5)
    throw Error(Errc::precondition, "a level with " + std::to_string(g.copies.size()) + " copies (need 5)");
}

// sum f(v) - f(V) >= d/2 |V| - 1 for the member `g` placed at `offset`.
CertificateNode gap_node(const GdGraph& g, Vertex offset) {
  require_structure(g);
  CertificateNode node;
  node.claim = Claim::gap;
  node.level = g.level;
  const std::size_t n = g.graph.vertex_count();
  node.vertices = range_set(offset, static_cast<Vertex>(offset + n));

  if (g.level == 2) {
    std::vector<Vertex> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = g.cycle_order[i] + offset;
    for (Vertex x : v) node.blocks.push_back({x});
    const auto K = TermKind::factor_information;
    node.terms.push_back(term(TermKind::shannon, {v[0]}, {v[1]}, {}, {}, 0));
    node.terms.push_back(term(K, {v[0], v[1]}, {v[2]}, {}, {{{v[2], v[1]}}}, 1));
    node.terms.push_back(term(TermKind::split_information, {v[0], v[1], v[2]}, {v.begin() + 3, v.end()},
                              {v[3], v[n - 1]}, {{{v[3], v[2]}, {v[n - 1], v[0]}}}, 3));
    node.terms.push_back(term(TermKind::shannon, {v[3]}, {v[4]}, {}, {}, 0));
    for (std::size_t k = 5; k < n; ++k)
      node.terms.push_back(term(K, {v.begin() + 3, v.begin() + static_cast<long>(k)}, {v[k]}, {},
                                {{{v[k], v[k - 1]}}}, 1));
    close_node(node);
    return node;
  }

  const std::size_t m = g.copies.size();
  const long half = static_cast<long>(g.copy_size() / 2);
  std::vector<VertexSet> V(m), A(m), B(m);
  for (std::size_t i = 0; i < m; ++i) {
    const Vertex lo = offset + g.copies[i].first;
    V[i] = range_set(lo, offset + g.copies[i].second);
    A[i] = shifted(g.children[i].sides.a, lo);
    B[i] = shifted(g.children[i].sides.b, lo);
    node.children.push_back(gap_node(g.children[i], lo));
  }
  node.blocks = V;
  auto join = [&](std::size_t lo, std::size_t hi) {
    VertexSet out;
    for (std::size_t i = lo; i < hi; ++i) out = set_union(out, V[i]);
    return out;
  };
  const auto& J = g.junctions;
  const auto S = TermKind::split_information;
  node.terms.push_back(term(S, V[0], V[1], A[1], reversed(J[0], offset), half + 1));
  node.terms.push_back(term(S, join(0, 2), V[2], A[2], reversed(J[1], offset), half + 1));
  node.terms.push_back(term(S, join(3, m), join(0, 3), set_union(A[0], B[2]),
                            joined(reversed(J[m - 1], offset), forward(J[2], offset)), 2 * half + 1));
  node.terms.push_back(term(S, V[3], V[4], A[4], reversed(J[3], offset), half + 1));
  for (std::size_t j = 5; j < m; ++j)
    node.terms.push_back(term(S, join(3, j), V[j], A[j], reversed(J[j - 1], offset), half + 1));
  close_node(node);
  return node;
}

// sum f(v) >= (d+1)/2 |V|.
CertificateNode sum_node(const GdGraph& g) {
  require_structure(g);
  CertificateNode node;
  node.claim = Claim::sum;
  node.level = g.level;
  const std::size_t n = g.graph.vertex_count();
  node.vertices = range_set(0, static_cast<Vertex>(n));

  if (g.level == 2) {
    const auto& v = g.cycle_order;
    for (std::size_t i = 0; i < n; i += 2) {
      const Vertex b = v[i], c = v[i + 1];
      const Vertex a = v[(i + n - 1) % n], d = v[(i + 2) % n];
      node.blocks.push_back(make_set({b, c}));
      node.terms.push_back(term(TermKind::factor_entropy, {b, c}, {a, d}, {}, {{{a, b}, {d, c}}}, 3));
      node.terms.push_back(term(TermKind::shannon, {b}, {c}, {}, {}, 0));
    }
    close_node(node);
    return node;
  }

  const std::size_t m = g.copies.size();
  const long size = static_cast<long>(g.copy_size());
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t prev = (i + m - 1) % m, next = (i + 1) % m;
    const Vertex lo = g.copies[i].first;
    node.blocks.push_back(range_set(lo, g.copies[i].second));
    node.children.push_back(gap_node(g.children[i], lo));
    VertexSet outside = set_union(shifted(g.children[prev].sides.b, g.copies[prev].first),
                                  shifted(g.children[next].sides.a, g.copies[next].first));
    node.terms.push_back(term(TermKind::factor_entropy, node.blocks.back(), std::move(outside), {},
                              joined(forward(g.junctions[prev], 0), reversed(g.junctions[i], 0)), size + 1));
  }
  close_node(node);
  return node;
}

void verify_node(const Graph& host, const CertificateNode& node, const std::string& path) {
  for (std::size_t k = 0; k < node.terms.size(); ++k) {
    auto check = verify_term(host, node.terms[k]);
    if (!check)
      throw Error(Errc::witness_failure, path + " (level " + std::to_string(node.level) + ") term " +
                                             std::to_string(k) + ": " + check.describe(),
                  {node.level, k});
  }
  for (std::size_t i = 0; i < node.children.size(); ++i)
    verify_node(host, node.children[i], path + "/" + std::to_string(i));
}

}  // namespace

Certificate certify_sum_bound(const GdGraph& g) {
  Certificate out;
  out.sum = sum_node(g);
  out.gap = gap_node(g, 0);
  verify_node(g.graph, out.sum, "sum");
  verify_node(g.graph, out.gap, "gap");
  return out;
}

std::size_t term_count(const CertificateNode& node) {
  std::size_t n = node.terms.size();
  for (const auto& c : node.children) n += term_count(c);
  return n;
}

namespace {

struct TermRef {
  const TermBound* term;
  const std::string* path;
  std::size_t index;
};

Rational claim_side(const SetFunction& f, const CertificateNode& node) {
  Rational out = 0;
  for (Vertex v : node.vertices) out += f({v});
  if (node.claim == Claim::gap) out -= f(node.vertices);
  return out;
}

Rational term_side(const SetFunction& f, const TermBound& t) {
  return t.kind == TermKind::factor_entropy ? f(t.a) : eval_I(f, t.a, t.b, t.c);
}

class Auditor {
 public:
  Auditor(std::size_t trials, std::uint64_t seed) {
    for (std::size_t t = 0; t < trials; ++t) functions_.push_back(SetFunction::random(Rng::derive(seed, t)));
  }

  // Structure, arithmetic and identities; terms are queued for later.
  std::optional<std::string> walk(const CertificateNode& node, const std::string& path) {
    ++nodes_;
    paths_.push_back(std::make_unique<std::string>(path));
    for (std::size_t k = 0; k < node.terms.size(); ++k) terms_.push_back({&node.terms[k], paths_.back().get(), k});
    Rational sum = 0;
    for (const auto& t : node.terms) sum += t.bound;
    for (const auto& c : node.children) {
      if (c.claim != Claim::gap) return path + ": child claim is not a gap bound";
      sum += c.subtotal;
    }
    if (sum != node.subtotal)
      return path + ": subtotal " + to_string(node.subtotal) + " but parts add to " + to_string(sum);
    for (std::size_t t = 0; t < functions_.size(); ++t) {
      const auto& f = functions_[t];
      Rational rhs = 0;
      for (const auto& c : node.children) rhs += claim_side(f, c);
      for (const auto& term : node.terms) rhs += term_side(f, term);
      if (claim_side(f, node) != rhs) return path + ": decomposition identity fails for random function " + std::to_string(t);
    }
    for (std::size_t i = 0; i < node.children.size(); ++i)
      if (auto bad = walk(node.children[i], path + "/" + std::to_string(i))) return bad;
    return std::nullopt;
  }

  std::optional<std::string> check_terms(const Graph& g, unsigned jobs) const {
    const std::size_t total = terms_.size();
    std::atomic<std::size_t> first_bad{total};
    auto work = [&](std::size_t begin, std::size_t step) {
      for (std::size_t i = begin; i < total && i < first_bad.load(); i += step) {
        if (verify_term(g, *terms_[i].term)) continue;
        std::size_t cur = first_bad.load();
        while (i < cur && !first_bad.compare_exchange_weak(cur, i)) {
        }
      }
    };
    jobs = std::max(1u, jobs);
    if (jobs == 1) {
      work(0, 1);
    } else {
      std::vector<std::thread> threads;
      for (unsigned j = 0; j < jobs; ++j) threads.emplace_back(work, j, jobs);
      for (auto& t : threads) t.join();
    }
    if (first_bad.load() == total) return std::nullopt;
    const auto& ref = terms_[first_bad.load()];
    return *ref.path + " term " + std::to_string(ref.index) + ": " + verify_term(g, *ref.term).describe();
  }

  std::size_t nodes() const { return nodes_; }
  std::size_t terms() const { return terms_.size(); }

 private:
  std::vector<SetFunction> functions_;
  std::vector<std::unique_ptr<std::string>> paths_;
  std::vector<TermRef> terms_;
  std::size_t nodes_ = 0;
};

}  // namespace

AuditReport audit_certificate(const Graph& g, const Certificate& c, std::size_t trials, std::uint64_t seed,
                              unsigned jobs) {
  AuditReport report;
  report.sum_total = c.sum.subtotal;
  report.gap_total = c.gap.subtotal;
  auto fail = [&](std::string why) {
    report.ok = false;
    report.failure = std::move(why);
    return report;
  };
  const VertexSet all = range_set(0, static_cast<Vertex>(g.vertex_count()));
  if (c.sum.claim != Claim::sum || c.sum.vertices != all) return fail("sum: root does not cover the graph");
  if (c.gap.claim != Claim::gap || c.gap.vertices != all) return fail("gap: root does not cover the graph");

  Auditor auditor(trials, seed);
  if (auto bad = auditor.walk(c.sum, "sum")) return fail(*bad);
  if (auto bad = auditor.walk(c.gap, "gap")) return fail(*bad);
  report.nodes = auditor.nodes();
  report.terms = auditor.terms();
  if (auto bad = auditor.check_terms(g, jobs)) return fail(*bad);
  return report;
}

}  // namespace girthforge
