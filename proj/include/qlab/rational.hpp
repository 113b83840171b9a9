#pragma once

#include <string>
#include <string_view>

#include <gmpxx.h>

namespace qlab {

// Exact rational; GMP keeps it canonical (reduced, positive denominator).
using Rational = mpq_class;

/// "3/2", or "2" for integers.
std::string to_string(const Rational& q);

/// Always "num/den", e.g. "2/1". Used in machine-readable reports.
std::string to_fraction_string(const Rational& q);

/// Accepts "a", "-a", "a/b" and decimal fractions such as "0.25".
Rational parse_rational(std::string_view text);

double to_double(const Rational& q);

}  // namespace qlab
