#include "girthforge/rational.hpp"

#include <cmath>

#include "girthforge/error.hpp"

namespace girthforge {

std::string to_string(const Rational& r) { return r.get_str(); }

std::string to_string(const BigInt& z) { return z.get_str(); }

Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw Error(Errc::parse, "empty rational");
  if (auto dot = s.find('.'); dot != std::string::npos) {
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    std::string denom = "1" + std::string(s.size() - dot - 1, '0');
    if (digits == "-" || digits.empty()) throw Error(Errc::parse, "bad rational '" + s + "'");
    s = digits + "/" + denom;
  }
  Rational r;
  if (r.set_str(s, 10) != 0) throw Error(Errc::parse, "bad rational '" + std::string(text) + "'");
  if (r.get_den() == 0) throw Error(Errc::parse, "zero denominator in '" + std::string(text) + "'");
  r.canonicalize();
  return r;
}

std::string to_decimal(const Rational& r, int places) {
  BigInt scale = 1;
  for (int i = 0; i < places; ++i) scale *= 10;
  BigInt num = abs(r.get_num()) * scale * 2 + r.get_den();
  BigInt den = r.get_den() * 2;
  BigInt q = num / den;  // rounded magnitude
  std::string digits = q.get_str();
  if (places > 0) {
    if (digits.size() <= static_cast<std::size_t>(places))
      digits.insert(0, static_cast<std::size_t>(places) + 1 - digits.size(), '0');
    digits.insert(digits.size() - static_cast<std::size_t>(places), ".");
  }
  if (sgn(r) < 0 && q != 0) digits.insert(0, "-");
  return digits;
}

Rational rationalize(double x, double tolerance, long max_denominator) {
  if (!std::isfinite(x)) throw Error(Errc::precondition, "cannot rationalize a non-finite value");
  // Convergents h/k of the continued fraction of x.
  BigInt h_prev = 1, h = static_cast<long>(std::floor(x));
  BigInt k_prev = 0, k = 1;
  double frac = x - std::floor(x);
  Rational best(h, k);
  for (int iter = 0; iter < 64; ++iter) {
    if (std::fabs(x - best.get_d()) < tolerance || frac < 1e-15) break;
    double inv = 1.0 / frac;
    long a = static_cast<long>(std::floor(inv));
    frac = inv - static_cast<double>(a);
    BigInt h_next = a * h + h_prev;
    BigInt k_next = a * k + k_prev;
    if (k_next > max_denominator) break;
    h_prev = h; h = h_next;
    k_prev = k; k = k_next;
    best = Rational(h, k);
    best.canonicalize();
  }
  return best;
}

}  // namespace girthforge
