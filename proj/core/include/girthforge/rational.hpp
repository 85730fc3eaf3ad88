#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace girthforge {

/// Exact rational in canonical form (gcd 1, positive denominator). GMP keeps
/// results canonical after every arithmetic operation.
using Rational = mpq_class;
using BigInt = mpz_class;

/// "p/q", or just "p" when the denominator is 1.
std::string to_string(const Rational& r);
std::string to_string(const BigInt& z);

/// Accepts "p", "p/q", "-p/q" and plain decimals such as "1.5".
Rational parse_rational(std::string_view text);

/// Fixed-point decimal rendering, rounded half away from zero.
std::string to_decimal(const Rational& r, int places = 6);

/// Best rational approximation of `x` whose error is below `tolerance`, with
/// denominator at most `max_denominator`. Continued-fraction convergents.
Rational rationalize(double x, double tolerance = 1e-9,
                     long max_denominator = 10'000'000);

}  // namespace girthforge
