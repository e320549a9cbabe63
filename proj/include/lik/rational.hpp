#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace lik {

using Rational = mpq_class;

// Renders as "p" or "p/q"; never as a decimal.
std::string to_string(const Rational& value);

// Accepts "p" or "p/q" with an optional leading sign.
Rational parse_rational(std::string_view text);

inline Rational make_rational(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

}  // namespace lik
