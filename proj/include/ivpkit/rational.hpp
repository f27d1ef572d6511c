#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>

namespace ivpkit {

/// Exact rational. mpq_class keeps itself canonical (gcd 1, positive denominator)
/// after every arithmetic operation.
using Rat = mpq_class;

/// Parses "n" or "p/q" (optional leading '-'). Returns nullopt on anything else,
/// including a zero denominator.
std::optional<Rat> parse_rat(std::string_view text);

/// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rat& r);

/// num/den in lowest terms. The two-argument mpq_class constructor does not reduce.
inline Rat frac(long num, long den) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

inline Rat midpoint(const Rat& a, const Rat& b) { return Rat((a + b) / 2); }

inline int sign(const Rat& r) { return sgn(r); }

/// Decimal rendering with a fixed number of fractional digits, rounded half away
/// from zero. Used for SVG output only.
std::string to_fixed(const Rat& r, int digits);

}  // namespace ivpkit
