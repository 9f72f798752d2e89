#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace mhdflow {

/// Exact rational, always canonical (lowest terms, positive denominator).
using Rational = mpq_class;
using BigInt = mpz_class;

/// Parses a base-10 literal such as "-1.8", "4", "2.5e-3" into the exact
/// rational it denotes ("1.8" -> 9/5). Throws SolverError(NotRepresentable)
/// on malformed input.
Rational parse_decimal(std::string_view text);

/// Exact rational for a double, read through its shortest round-trip decimal
/// form so that 1.8 maps to 9/5 rather than to the nearest binary fraction.
/// Values whose shortest form needs more than 15 significant digits are
/// treated as not exactly representable.
Rational rational_from_double(double value);

double to_double(const Rational& q);

/// "p/q", or "p" when the denominator is one.
std::string to_string(const Rational& q);

/// Rational k / 2^shift.
Rational dyadic(const BigInt& k, unsigned shift);

}  // namespace mhdflow
