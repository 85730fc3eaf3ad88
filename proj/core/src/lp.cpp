#include "girthforge/lp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "girthforge/error.hpp"

namespace girthforge {

namespace {

// mpq_class(p, q) does not reduce; callers may hand us such values.
void canonical(LinearExpr& e) {
  for (auto& [j, a] : e) a.canonicalize();
}

}  // namespace

std::size_t LPProblem::add_variable(std::string name, std::optional<Rational> lower,
                                    std::optional<Rational> upper) {
  if (lower) lower->canonicalize();
  if (upper) upper->canonicalize();
  if (lower && upper && *lower > *upper)
    throw Error(Errc::precondition, "variable '" + name + "' has lower > upper");
  variables_.push_back({std::move(name), std::move(lower), std::move(upper)});
  return variables_.size() - 1;
}

void LPProblem::add_constraint(LinearExpr coefs, Sense sense, Rational rhs, std::string name) {
  for (const auto& [j, a] : coefs)
    if (j >= variables_.size())
      throw Error(Errc::precondition, "constraint references undeclared variable " + std::to_string(j));
  canonical(coefs);
  rhs.canonicalize();
  constraints_.push_back({std::move(coefs), sense, std::move(rhs), std::move(name)});
}

void LPProblem::set_objective(LinearExpr coefs) {
  for (const auto& [j, a] : coefs)
    if (j >= variables_.size())
      throw Error(Errc::precondition, "objective references undeclared variable " + std::to_string(j));
  canonical(coefs);
  objective_ = std::move(coefs);
}

Rational LPProblem::evaluate(const std::vector<Rational>& x) const {
  Rational v = 0;
  for (const auto& [j, c] : objective_) v += c * x[j];
  return v;
}

const char* status_name(LPStatus s) noexcept {
  switch (s) {
    case LPStatus::optimal: return "OPTIMAL";
    case LPStatus::infeasible: return "INFEASIBLE";
    case LPStatus::unbounded: return "UNBOUNDED";
  }
  return "UNKNOWN";
}

std::optional<std::string> check_optimality(const LPProblem& p, const LPSolution& s) {
  if (s.status != LPStatus::optimal) return "status is not OPTIMAL";
  const std::size_t n = p.variable_count();
  if (s.primal.size() != n) return "primal has wrong length";
  if (s.dual.size() != p.constraint_count()) return "dual has wrong length";
  for (std::size_t j = 0; j < n; ++j) {
    const auto& v = p.variables()[j];
    if (v.lower && s.primal[j] < *v.lower) return "variable " + v.name + " below its lower bound";
    if (v.upper && s.primal[j] > *v.upper) return "variable " + v.name + " above its upper bound";
  }
  std::vector<Rational> reduced(n, 0);
  for (const auto& [j, c] : p.objective()) reduced[j] += c;
  Rational dual_value = 0;
  for (std::size_t i = 0; i < p.constraint_count(); ++i) {
    const auto& con = p.constraints()[i];
    const Rational& y = s.dual[i];
    Rational lhs = 0;
    for (const auto& [j, a] : con.coefs) {
      lhs += a * s.primal[j];
      reduced[j] -= y * a;
    }
    std::string label = con.name.empty() ? "#" + std::to_string(i) : con.name;
    switch (con.sense) {
      case Sense::ge:
        if (lhs < con.rhs) return "constraint " + label + " violated";
        if (sgn(y) < 0) return "dual of >= constraint " + label + " is negative";
        break;
      case Sense::le:
        if (lhs > con.rhs) return "constraint " + label + " violated";
        if (sgn(y) > 0) return "dual of <= constraint " + label + " is positive";
        break;
      case Sense::eq:
        if (lhs != con.rhs) return "constraint " + label + " violated";
        break;
    }
    dual_value += y * con.rhs;
  }
  for (std::size_t j = 0; j < n; ++j) {
    const auto& v = p.variables()[j];
    int sign = sgn(reduced[j]);
    if (sign > 0) {
      if (!v.lower) return "dual unbounded along free-below variable " + v.name;
      dual_value += reduced[j] * *v.lower;
    } else if (sign < 0) {
      if (!v.upper) return "dual unbounded along free-above variable " + v.name;
      dual_value += reduced[j] * *v.upper;
    }
  }
  Rational primal_value = p.evaluate(s.primal);
  if (primal_value != s.objective) return "reported objective differs from c.x";
  if (primal_value != dual_value)
    return "duality gap " + to_string(Rational(primal_value - dual_value));
  return std::nullopt;
}

namespace {

constexpr double kTol = 1e-9;

inline bool positive(double x) { return x > kTol; }
inline bool positive(const Rational& x) { return sgn(x) > 0; }
// Pricing threshold; the float pass stops a little early and leaves the
// last steps to the exact repair.
inline bool improving(double d) { return d > 1e-7; }
inline bool improving(const Rational& d) { return sgn(d) > 0; }
inline bool nonzero(double x) { return std::fabs(x) > kTol; }
inline bool nonzero(const Rational& x) { return sgn(x) != 0; }
inline double magnitude(double x) { return std::fabs(x); }
inline double magnitude(const Rational& x) { return std::fabs(x.get_d()); }

template <class T>
using SparseVec = std::vector<std::pair<std::uint32_t, T>>;

// max w.z subject to M z <= h, z >= 0; M stored by columns.
template <class T>
struct Engine {
  std::size_t rows = 0;
  std::vector<SparseVec<T>> cols;
  std::vector<T> w;
  std::vector<T> h;
};

enum class EngineStatus { optimal, infeasible, unbounded, stalled };

template <class T>
struct EngineResult {
  EngineStatus status = EngineStatus::stalled;
  std::vector<T> z;
  std::vector<T> u;
  std::vector<std::size_t> basis;
  std::size_t pivots = 0;
};

// Revised simplex on the row-signed equality form
//   sign_i (M_i z + s_i) [+ art_i] = |h_i|
// with a dense column-major basis inverse. Column ids: [0, N) structural,
// [N, N+k) slack, [N+k, N+2k) artificial (only rows with h_i < 0 get one).
template <class T>
class Simplex {
 public:
  static constexpr bool kFloat = std::is_same_v<T, double>;

  Simplex(const Engine<T>& e, const LPOptions& options)
      : e_(e), options_(options), k_(e.rows), n_(e.cols.size()) {
    sign_.assign(k_, 1);
    for (std::size_t i = 0; i < k_; ++i)
      if (e_.h[i] < 0) sign_[i] = -1;
    restore_rhs();
    basic_pos_.assign(n_ + 2 * k_, npos);
  }

  // Shifts every right-hand side up by a small deterministic amount so that
  // no basic variable sits at zero; undone by `unperturb`.
  void perturb() {
    std::uint64_t state = 0x2545f4914f6cdd1dULL;
    for (auto& v : rhs_) {
      state = state * 6364136223846793005ULL + 1442695040888963407ULL;
      double unit = static_cast<double>(state >> 11) / static_cast<double>(1ULL << 53);
      v += T(1e-7 * (1.0 + unit));
    }
  }

  EngineResult<T> solve() {
    basis_.resize(k_);
    for (std::size_t i = 0; i < k_; ++i) basis_[i] = sign_[i] > 0 ? slack(i) : artificial(i);
    set_identity();
    x_ = rhs_;
    index_basis();
    bool has_art = std::any_of(sign_.begin(), sign_.end(), [](int s) { return s < 0; });
    if (has_art) {
      phase_ = 1;
      auto st = iterate();
      if (st == EngineStatus::stalled) return finish(st);
      T infeas = 0;
      for (std::size_t i = 0; i < k_; ++i)
        if (is_artificial(basis_[i])) infeas += x_[i];
      bool infeasible;
      if constexpr (kFloat)
        infeasible = infeas > 1e-5;
      else
        infeasible = positive(infeas);
      if (infeasible) return finish(EngineStatus::infeasible);
      drive_out_artificials();
    }
    phase_ = 2;
    return finish(iterate());
  }

  // Restores the exact right-hand side on the current basis, repairs primal
  // feasibility with the dual simplex and finishes phase 2.
  EngineResult<T> unperturb() {
    restore_rhs();
    if (!reinvert()) return finish(EngineStatus::stalled);
    for (std::size_t i = 0; i < k_; ++i)
      if (is_artificial(basis_[i]) && nonzero(x_[i])) return finish(EngineStatus::stalled);
    phase_ = 2;
    if (dual_iterate() != EngineStatus::optimal) return finish(EngineStatus::stalled);
    return finish(iterate());
  }

  // Phase 2 from a given basis without artificials. Returns nullopt when the
  // basis is singular, or neither primal nor dual feasible.
  std::optional<EngineResult<T>> solve_from(const std::vector<std::size_t>& basis) {
    if (basis.size() != k_) return std::nullopt;
    for (auto j : basis)
      if (j >= n_ + k_) return std::nullopt;
    basis_ = basis;
    if (!reinvert()) return std::nullopt;
    index_basis();
    phase_ = 2;
    bool feasible = std::none_of(x_.begin(), x_.end(), [](const T& v) { return v < 0; });
    if (!feasible) {
      if (!dual_feasible()) return std::nullopt;
      auto st = dual_iterate();
      if (st != EngineStatus::optimal) return finish(st);
    }
    return finish(iterate());
  }

 private:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  std::size_t slack(std::size_t i) const { return n_ + i; }
  std::size_t artificial(std::size_t i) const { return n_ + k_ + i; }
  bool is_artificial(std::size_t j) const { return j >= n_ + k_; }

  // Entry (i, r) of the basis inverse.
  T& inv(std::size_t i, std::size_t r) { return binv_[r * k_ + i]; }
  const T& inv(std::size_t i, std::size_t r) const { return binv_[r * k_ + i]; }

  void restore_rhs() {
    rhs_.resize(k_);
    for (std::size_t i = 0; i < k_; ++i) rhs_[i] = sign_[i] > 0 ? e_.h[i] : T(-e_.h[i]);
  }

  template <class F>
  void for_column(std::size_t j, F&& f) const {
    if (j < n_) {
      for (const auto& [i, a] : e_.cols[j]) f(i, sign_[i] > 0 ? a : T(-a));
    } else if (j < n_ + k_) {
      std::size_t i = j - n_;
      f(i, T(sign_[i]));
    } else {
      f(j - n_ - k_, T(1));
    }
  }

  T cost(std::size_t j) const {
    if (phase_ == 1) return is_artificial(j) ? T(-1) : T(0);
    return j < n_ ? e_.w[j] : T(0);
  }

  void set_identity() {
    binv_.assign(k_ * k_, T(0));
    for (std::size_t i = 0; i < k_; ++i) inv(i, i) = 1;
  }

  void index_basis() {
    std::fill(basic_pos_.begin(), basic_pos_.end(), npos);
    for (std::size_t i = 0; i < k_; ++i) basic_pos_[basis_[i]] = i;
  }

  // Gauss-Jordan on [B | I] (row-major scratch), then x_B = B^-1 rhs.
  bool reinvert() {
    std::vector<T> b(k_ * k_, T(0));
    std::vector<T> e(k_ * k_, T(0));
    for (std::size_t c = 0; c < k_; ++c)
      for_column(basis_[c], [&](std::size_t i, const T& a) { b[i * k_ + c] = a; });
    for (std::size_t i = 0; i < k_; ++i) e[i * k_ + i] = 1;
    for (std::size_t c = 0; c < k_; ++c) {
      std::size_t piv = npos;
      double best = 0;
      for (std::size_t r = c; r < k_; ++r) {
        if (!nonzero(b[r * k_ + c])) continue;
        if constexpr (kFloat) {
          if (magnitude(b[r * k_ + c]) > best) {
            best = magnitude(b[r * k_ + c]);
            piv = r;
          }
        } else {
          piv = r;
          break;
        }
      }
      if (piv == npos) return false;
      if (piv != c) {
        std::swap_ranges(b.begin() + piv * k_, b.begin() + (piv + 1) * k_, b.begin() + c * k_);
        std::swap_ranges(e.begin() + piv * k_, e.begin() + (piv + 1) * k_, e.begin() + c * k_);
      }
      T* bc = &b[c * k_];
      T* ec = &e[c * k_];
      T scale = T(1) / bc[c];
      std::vector<std::size_t> bnz, enz;
      for (std::size_t t = 0; t < k_; ++t) {
        if (nonzero(bc[t])) {
          bc[t] *= scale;
          bnz.push_back(t);
        } else if constexpr (kFloat) {
          bc[t] = 0;
        }
        if (nonzero(ec[t])) {
          ec[t] *= scale;
          enz.push_back(t);
        } else if constexpr (kFloat) {
          ec[t] = 0;
        }
      }
      for (std::size_t r = 0; r < k_; ++r) {
        if (r == c || !nonzero(b[r * k_ + c])) continue;
        T f = b[r * k_ + c];
        T* br = &b[r * k_];
        T* er = &e[r * k_];
        for (std::size_t t : bnz) br[t] -= f * bc[t];
        for (std::size_t t : enz) er[t] -= f * ec[t];
        br[c] = 0;
      }
    }
    binv_.assign(k_ * k_, T(0));
    for (std::size_t i = 0; i < k_; ++i)
      for (std::size_t r = 0; r < k_; ++r) inv(i, r) = e[i * k_ + r];
    x_.assign(k_, T(0));
    for (std::size_t r = 0; r < k_; ++r) {
      if (!nonzero(rhs_[r])) continue;
      for (std::size_t i = 0; i < k_; ++i) {
        if constexpr (kFloat)
          x_[i] += inv(i, r) * rhs_[r];
        else if (nonzero(inv(i, r)))
          x_[i] += inv(i, r) * rhs_[r];
      }
    }
    return true;
  }

  // Max-norm of B x_B - rhs; cheap drift check for the float inverse.
  double residual() const {
    std::vector<double> r(k_, 0.0);
    for (std::size_t i = 0; i < k_; ++i) r[i] = -magnitude(rhs_[i]) * (rhs_[i] < 0 ? -1 : 1);
    for (std::size_t c = 0; c < k_; ++c) {
      double xc = magnitude(x_[c]) * (x_[c] < 0 ? -1 : 1);
      for_column(basis_[c], [&](std::size_t i, const T& a) { r[i] += magnitude(a) * (a < 0 ? -1 : 1) * xc; });
    }
    double worst = 0;
    for (double v : r) worst = std::max(worst, std::fabs(v));
    return worst;
  }

  std::vector<T> prices() const {
    std::vector<T> cb(k_);
    bool any = false;
    for (std::size_t i = 0; i < k_; ++i) {
      cb[i] = cost(basis_[i]);
      any = any || nonzero(cb[i]);
    }
    std::vector<T> pi(k_, T(0));
    if (!any) return pi;
    std::vector<std::size_t> nz;
    for (std::size_t i = 0; i < k_; ++i)
      if (nonzero(cb[i])) nz.push_back(i);
    for (std::size_t r = 0; r < k_; ++r) {
      const T* col = &binv_[r * k_];
      T acc = 0;
      for (std::size_t i : nz)
        if (nonzero(col[i])) acc += cb[i] * col[i];
      pi[r] = acc;
    }
    return pi;
  }

  T reduced_cost(std::size_t j, const std::vector<T>& pi) const {
    T d = cost(j);
    for_column(j, [&](std::size_t i, const T& a) {
      if (nonzero(pi[i])) d -= pi[i] * a;
    });
    return d;
  }

  std::vector<T> ftran(std::size_t j) const {
    std::vector<T> alpha(k_, T(0));
    for_column(j, [&](std::size_t r, const T& a) {
      const T* col = &binv_[r * k_];
      for (std::size_t i = 0; i < k_; ++i) {
        if constexpr (kFloat)
          alpha[i] += col[i] * a;
        else if (nonzero(col[i]))
          alpha[i] += col[i] * a;
      }
    });
    return alpha;
  }

  void pivot(std::size_t row, std::size_t entering, const std::vector<T>& alpha, const T& theta) {
    for (std::size_t i = 0; i < k_; ++i) {
      if (i == row) continue;
      if (nonzero(alpha[i])) x_[i] -= theta * alpha[i];
    }
    x_[row] = theta;
    if constexpr (kFloat) {
      for (auto& v : x_)
        if (v < 0 && v > -kTol) v = 0;
    }
    const T inv_pivot = T(1) / alpha[row];
    std::vector<std::size_t> nz;
    for (std::size_t i = 0; i < k_; ++i)
      if (i != row && nonzero(alpha[i])) nz.push_back(i);
    for (std::size_t t = 0; t < k_; ++t) {
      T* col = &binv_[t * k_];
      if (!nonzero(col[row])) continue;
      T p = col[row] * inv_pivot;
      for (std::size_t i : nz) col[i] -= alpha[i] * p;
      col[row] = p;
    }
    basic_pos_[basis_[row]] = npos;
    basis_[row] = entering;
    basic_pos_[entering] = row;
    ++pivots_;
    if constexpr (kFloat) {
      if (++since_reinvert_ >= 100) {
        since_reinvert_ = 0;
        if (residual() > 1e-9) reinvert();
      }
    }
  }

  // Leaving row for a primal pivot, or npos when the column is unbounded.
  // Exact: minimum ratio, ties to the lowest basic index. Float: Harris
  // two-pass test preferring the largest pivot among near-minimal ratios.
  std::size_t ratio_test(const std::vector<T>& alpha, bool bland, T& theta) const {
    std::size_t row = npos;
    // A zero-level artificial left in the basis after phase 1 leaves first.
    if (phase_ == 2) {
      for (std::size_t i = 0; i < k_; ++i)
        if (is_artificial(basis_[i]) && nonzero(alpha[i]) && (row == npos || basis_[i] < basis_[row]))
          row = i;
      if (row != npos) {
        theta = 0;
        return row;
      }
    }
    if constexpr (kFloat) {
      double bound = 0;
      bool found = false;
      for (std::size_t i = 0; i < k_; ++i) {
        if (alpha[i] <= kTol) continue;
        double r = (x_[i] + kTol) / alpha[i];
        if (!found || r < bound) bound = r;
        found = true;
      }
      if (!found) return npos;
      for (std::size_t i = 0; i < k_; ++i) {
        if (alpha[i] <= kTol || x_[i] / alpha[i] > bound) continue;
        if (row == npos) {
          row = i;
        } else if (bland) {
          if (basis_[i] < basis_[row]) row = i;
        } else if (alpha[i] > alpha[row]) {
          row = i;
        }
      }
      theta = std::max(0.0, x_[row] / alpha[row]);
      return row;
    } else {
      for (std::size_t i = 0; i < k_; ++i) {
        if (!positive(alpha[i])) continue;
        T r = x_[i] / alpha[i];
        if (row == npos || r < theta || (r == theta && basis_[i] < basis_[row])) {
          row = i;
          theta = r;
        }
      }
      return row;
    }
  }

  // Devex reference weights (float pass only), updated from the pivot row
  // before the basis changes.
  void update_devex(std::size_t row, std::size_t entering, const std::vector<T>& alpha) {
    if (devex_.size() != n_ + 2 * k_) devex_.assign(n_ + 2 * k_, 1.0);
    std::vector<double> rho(k_);
    for (std::size_t r = 0; r < k_; ++r) rho[r] = inv(row, r);
    const double wq = devex_[entering];
    const double aq = alpha[row];
    for (std::size_t j = 0; j < n_ + k_; ++j) {
      if (basic_pos_[j] != npos || j == entering) continue;
      double a = 0;
      for_column(j, [&](std::size_t r, const T& v) { a += rho[r] * v; });
      if (a == 0) continue;
      double ratio = a / aq;
      devex_[j] = std::max(devex_[j], ratio * ratio * wq);
    }
    devex_[basis_[row]] = std::max(wq / (aq * aq), 1.0);
  }

  EngineStatus iterate() {
    if constexpr (kFloat) devex_.assign(n_ + 2 * k_, 1.0);
    std::size_t degenerate_run = 0;
    bool bland = false;
    const std::size_t limit = 100000 + 50 * (n_ + k_);
    for (std::size_t iter = 0;; ++iter) {
      if constexpr (kFloat) {
        if (iter > limit) return EngineStatus::stalled;
      }
      auto pi = prices();
      std::size_t entering = npos;
      T best_d = 0;
      for (std::size_t j = 0; j < n_ + k_; ++j) {
        if (basic_pos_[j] != npos) continue;
        T d = reduced_cost(j, pi);
        if (!improving(d)) continue;
        if (bland) {
          entering = j;
          break;
        }
        if constexpr (kFloat) d = d * d / devex_[j];
        if (entering == npos || d > best_d) {
          entering = j;
          best_d = d;
        }
      }
      if (entering == npos) return EngineStatus::optimal;

      auto alpha = ftran(entering);
      T theta = 0;
      std::size_t row = ratio_test(alpha, bland, theta);
      if (row == npos) return EngineStatus::unbounded;
      bool stalled_step;
      if constexpr (kFloat)
        stalled_step = theta * reduced_cost(entering, pi) <= 1e-12;
      else
        stalled_step = !positive(theta);
      if (stalled_step) {
        if (++degenerate_run > options_.degenerate_limit) bland = true;
      } else {
        degenerate_run = 0;
      }
      if constexpr (kFloat) update_devex(row, entering, alpha);
      pivot(row, entering, alpha, theta);
    }
  }

  bool dual_feasible() const {
    auto pi = prices();
    for (std::size_t j = 0; j < n_ + k_; ++j)
      if (basic_pos_[j] == npos && positive(reduced_cost(j, pi))) return false;
    return true;
  }

  // Dual simplex on a dual-feasible basis until x_B >= 0. Leaving row: most
  // negative (float) or lowest basic index (exact); entering: minimum dual
  // ratio, ties to the lowest column index.
  EngineStatus dual_iterate() {
    const std::size_t limit = 100000 + 50 * (n_ + k_);
    std::vector<T> rho(k_);
    for (std::size_t iter = 0; iter <= limit; ++iter) {
      std::size_t row = npos;
      for (std::size_t i = 0; i < k_; ++i) {
        bool negative;
        if constexpr (kFloat)
          negative = x_[i] < -kTol;
        else
          negative = sgn(x_[i]) < 0;
        if (!negative) continue;
        if (row == npos) {
          row = i;
        } else if constexpr (kFloat) {
          if (x_[i] < x_[row]) row = i;
        } else {
          if (basis_[i] < basis_[row]) row = i;
        }
      }
      if (row == npos) {
        if constexpr (kFloat) {
          for (auto& v : x_)
            if (v < 0) v = 0;
        }
        return EngineStatus::optimal;
      }
      auto pi = prices();
      for (std::size_t r = 0; r < k_; ++r) rho[r] = inv(row, r);
      std::size_t entering = npos;
      T best = 0;
      for (std::size_t j = 0; j < n_ + k_; ++j) {
        if (basic_pos_[j] != npos) continue;
        T a = 0;
        for_column(j, [&](std::size_t r, const T& v) {
          if (nonzero(rho[r])) a += rho[r] * v;
        });
        if (!(a < 0) || !nonzero(a)) continue;
        T d = reduced_cost(j, pi);
        if (d > 0) d = 0;
        T ratio = d / a;
        if (entering == npos || ratio < best) {
          entering = j;
          best = ratio;
        }
      }
      if (entering == npos) return EngineStatus::infeasible;
      auto alpha = ftran(entering);
      T theta = x_[row] / alpha[row];
      pivot(row, entering, alpha, theta);
    }
    return EngineStatus::stalled;
  }

  void drive_out_artificials() {
    for (std::size_t i = 0; i < k_; ++i) {
      if (!is_artificial(basis_[i])) continue;
      for (std::size_t j = 0; j < n_ + k_; ++j) {
        if (basic_pos_[j] != npos) continue;
        T a = 0;
        for_column(j, [&](std::size_t r, const T& v) {
          if (nonzero(inv(i, r))) a += inv(i, r) * v;
        });
        if (!nonzero(a)) continue;
        auto alpha = ftran(j);
        pivot(i, j, alpha, T(0));
        break;
      }
    }
  }

  EngineResult<T> finish(EngineStatus st) {
    EngineResult<T> out;
    out.status = st;
    out.pivots = pivots_;
    out.basis = basis_;
    if (st != EngineStatus::optimal) return out;
    out.z.assign(n_, T(0));
    for (std::size_t i = 0; i < k_; ++i)
      if (basis_[i] < n_) out.z[basis_[i]] = x_[i];
    auto pi = prices();
    out.u.resize(k_);
    for (std::size_t i = 0; i < k_; ++i) out.u[i] = sign_[i] > 0 ? pi[i] : T(-pi[i]);
    return out;
  }

  const Engine<T>& e_;
  LPOptions options_;
  std::size_t k_;
  std::size_t n_;
  std::vector<int> sign_;
  std::vector<T> rhs_;
  std::vector<std::size_t> basis_;
  std::vector<std::size_t> basic_pos_;
  std::vector<T> binv_;
  std::vector<T> x_;
  int phase_ = 2;
  std::size_t pivots_ = 0;
  std::size_t since_reinvert_ = 0;
  std::vector<double> devex_;
};

// min c.p subject to A p >= b, p >= 0, plus the map back to the caller's
// variables and constraints.
struct Canonical {
  std::size_t vars = 0;
  std::vector<SparseVec<Rational>> rows;
  std::vector<Rational> b;
  std::vector<Rational> c;

  struct VarMap {
    Rational shift;
    std::size_t plus = SIZE_MAX;   // coefficient +1
    std::size_t minus = SIZE_MAX;  // coefficient -1
  };
  std::vector<VarMap> var_map;
  std::vector<std::pair<std::size_t, int>> row_origin;  // (constraint, sign) or SIZE_MAX
};

Canonical canonicalize(const LPProblem& p) {
  Canonical out;
  out.var_map.resize(p.variable_count());
  std::vector<std::pair<std::size_t, Rational>> bound_rows;
  for (std::size_t j = 0; j < p.variable_count(); ++j) {
    const auto& v = p.variables()[j];
    auto& m = out.var_map[j];
    if (v.lower) {
      m.shift = *v.lower;
      m.plus = out.vars++;
      if (v.upper) bound_rows.emplace_back(m.plus, Rational(*v.lower - *v.upper));
    } else if (v.upper) {
      m.shift = *v.upper;
      m.minus = out.vars++;
    } else {
      m.plus = out.vars++;
      m.minus = out.vars++;
    }
  }
  auto substitute = [&](const LinearExpr& expr, Rational& constant) {
    std::vector<Rational> dense;
    std::vector<std::uint32_t> touched;
    SparseVec<Rational> row;
    for (const auto& [j, a] : expr) {
      const auto& m = out.var_map[j];
      constant += a * m.shift;
      if (m.plus != SIZE_MAX) row.emplace_back(static_cast<std::uint32_t>(m.plus), a);
      if (m.minus != SIZE_MAX) row.emplace_back(static_cast<std::uint32_t>(m.minus), Rational(-a));
    }
    std::sort(row.begin(), row.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    SparseVec<Rational> merged;
    for (auto& [i, a] : row) {
      if (!merged.empty() && merged.back().first == i)
        merged.back().second += a;
      else
        merged.emplace_back(i, a);
    }
    std::erase_if(merged, [](const auto& e) { return sgn(e.second) == 0; });
    return merged;
  };
  for (std::size_t i = 0; i < p.constraint_count(); ++i) {
    const auto& con = p.constraints()[i];
    Rational constant = 0;
    auto row = substitute(con.coefs, constant);
    Rational rhs = con.rhs - constant;
    if (con.sense != Sense::le) {
      out.rows.push_back(row);
      out.b.push_back(rhs);
      out.row_origin.emplace_back(i, 1);
    }
    if (con.sense != Sense::ge) {
      for (auto& [k, a] : row) a = -a;
      out.rows.push_back(std::move(row));
      out.b.push_back(-rhs);
      out.row_origin.emplace_back(i, -1);
    }
  }
  for (auto& [var, rhs] : bound_rows) {
    out.rows.push_back({{static_cast<std::uint32_t>(var), Rational(-1)}});
    out.b.push_back(rhs);
    out.row_origin.emplace_back(SIZE_MAX, 0);
  }
  out.c.assign(out.vars, 0);
  Rational ignored = 0;
  for (const auto& [k, a] : substitute(p.objective(), ignored)) out.c[k] = a;
  return out;
}

enum class Route { dual, direct };

template <class T>
T convert(const Rational& r) {
  if constexpr (std::is_same_v<T, double>)
    return r.get_d();
  else
    return r;
}

template <class T>
Engine<T> make_engine(const Canonical& cf, Route route, bool zero_cost) {
  Engine<T> e;
  const std::size_t r = cf.rows.size();
  if (route == Route::dual) {
    e.rows = cf.vars;
    e.cols.resize(r);
    for (std::size_t i = 0; i < r; ++i)
      for (const auto& [k, a] : cf.rows[i]) e.cols[i].emplace_back(k, convert<T>(a));
    e.w.reserve(r);
    for (const auto& v : cf.b) e.w.push_back(convert<T>(v));
    e.h.assign(cf.vars, T(0));
    if (!zero_cost)
      for (std::size_t k = 0; k < cf.vars; ++k) e.h[k] = convert<T>(cf.c[k]);
  } else {
    e.rows = r;
    e.cols.resize(cf.vars);
    for (std::size_t i = 0; i < r; ++i)
      for (const auto& [k, a] : cf.rows[i])
        e.cols[k].emplace_back(static_cast<std::uint32_t>(i), convert<T>(Rational(-a)));
    e.w.assign(cf.vars, T(0));
    if (!zero_cost)
      for (std::size_t k = 0; k < cf.vars; ++k) e.w[k] = convert<T>(Rational(-cf.c[k]));
    e.h.reserve(r);
    for (const auto& v : cf.b) e.h.push_back(convert<T>(Rational(-v)));
  }
  return e;
}

LPSolution assemble(const LPProblem& p, const Canonical& cf, const std::vector<Rational>& px,
                    const std::vector<Rational>& py) {
  LPSolution s;
  s.status = LPStatus::optimal;
  s.primal.resize(p.variable_count());
  for (std::size_t j = 0; j < p.variable_count(); ++j) {
    const auto& m = cf.var_map[j];
    Rational x = m.shift;
    if (m.plus != SIZE_MAX) x += px[m.plus];
    if (m.minus != SIZE_MAX) x -= px[m.minus];
    s.primal[j] = x;
  }
  s.dual.assign(p.constraint_count(), 0);
  for (std::size_t i = 0; i < cf.row_origin.size(); ++i) {
    auto [origin, sign] = cf.row_origin[i];
    if (origin == SIZE_MAX) continue;
    if (sign > 0) s.dual[origin] += py[i]; else s.dual[origin] -= py[i];
  }
  s.objective = p.evaluate(s.primal);
  return s;
}

// Canonical primal p and multipliers y from an engine result.
template <class T>
std::pair<std::vector<T>, std::vector<T>> split(const EngineResult<T>& r, Route route) {
  if (route == Route::dual) return {r.u, r.z};
  return {r.z, r.u};
}

LPSolution status_only(LPStatus st, std::size_t pivots) {
  LPSolution s;
  s.status = st;
  s.pivots = pivots;
  return s;
}

LPSolution solve_exact(const LPProblem& p, const Canonical& cf, Route route, const LPOptions& opt,
                       const std::vector<std::size_t>* warm) {
  auto engine = make_engine<Rational>(cf, route, false);
  Simplex<Rational> simplex(engine, opt);
  std::optional<EngineResult<Rational>> result;
  if (warm) result = simplex.solve_from(*warm);
  if (!result) {
    Simplex<Rational> fresh(engine, opt);
    result = fresh.solve();
  }
  const std::size_t pivots = result->pivots;
  switch (result->status) {
    case EngineStatus::optimal: {
      auto [px, py] = split(*result, route);
      LPSolution s = assemble(p, cf, px, py);
      s.pivots = pivots;
      if (auto why = check_optimality(p, s))
        throw std::logic_error("exact simplex produced an uncertified optimum: " + *why);
      return s;
    }
    case EngineStatus::unbounded:
      return status_only(route == Route::direct ? LPStatus::unbounded : LPStatus::infeasible, pivots);
    case EngineStatus::infeasible:
      if (route == Route::direct) return status_only(LPStatus::infeasible, pivots);
      break;
    case EngineStatus::stalled:
      throw std::logic_error("exact simplex stalled");
  }
  // Dual infeasible: the primal is either infeasible or unbounded. A
  // zero-cost copy separates the cases (its dual is feasible at z = 0).
  auto feas = make_engine<Rational>(cf, Route::dual, true);
  Simplex<Rational> check(feas, opt);
  auto fr = check.solve();
  return status_only(fr.status == EngineStatus::unbounded ? LPStatus::infeasible : LPStatus::unbounded,
                     pivots + fr.pivots);
}

}  // namespace

LPSolution solve_lp(const LPProblem& p, const LPOptions& options) {
  Canonical cf = canonicalize(p);
  Route route = cf.vars <= cf.rows.size() ? Route::dual : Route::direct;
  const std::size_t basis_size = route == Route::dual ? cf.vars : cf.rows.size();
  std::size_t nnz = 0;
  for (const auto& r : cf.rows) nnz += r.size();

  LPStrategy strategy = options.strategy;
  if (strategy == LPStrategy::automatic)
    strategy = basis_size <= 24 && nnz <= 2000 ? LPStrategy::exact_only : LPStrategy::float_then_exact;
  if (strategy == LPStrategy::exact_only) return solve_exact(p, cf, route, options, nullptr);

  auto engine = make_engine<double>(cf, route, false);
  Simplex<double> simplex(engine, options);
  simplex.perturb();
  auto fr = simplex.solve();
  if (fr.status == EngineStatus::optimal) {
    std::size_t pivots = fr.pivots;
    fr = simplex.unperturb();
    fr.pivots = std::max(fr.pivots, pivots);
  }
  if (fr.status != EngineStatus::optimal) {
    LPSolution s = solve_exact(p, cf, route, options, nullptr);
    s.pivots += fr.pivots;
    return s;
  }
  auto [fx, fy] = split(fr, route);
  std::vector<Rational> px, py;
  px.reserve(fx.size());
  py.reserve(fy.size());
  for (double v : fx) px.push_back(rationalize(v, 1e-7, 100000));
  for (double v : fy) py.push_back(rationalize(v, 1e-7, 100000));
  LPSolution s = assemble(p, cf, px, py);
  s.pivots = fr.pivots;
  s.float_accelerated = true;
  if (!check_optimality(p, s)) return s;

  // Rounding did not certify; repair exactly from the final float basis.
  LPSolution exact = solve_exact(p, cf, route, options, &fr.basis);
  exact.pivots += fr.pivots;
  exact.float_accelerated = true;
  return exact;
}

}  // namespace girthforge
