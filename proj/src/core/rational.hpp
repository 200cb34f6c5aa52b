#pragma once

#include <gmpxx.h>

#include <string>

namespace stodom {

// Exact rational arithmetic. All probabilities and weights in the exact
// code paths are Rationals; verdicts that depend on them are certificates,
// never float comparisons.
using Rational = mpq_class;

// Canonical fraction from machine integers. Throws InputError on den == 0.
Rational rat(long num, long den = 1);

// Parses "num/den" or "num" (optionally signed). Throws InputError on
// malformed text or zero denominator.
Rational parse_rational(const std::string& text);

// Renders as "num/den", or "num" when the denominator is 1.
std::string rational_str(const Rational& q);

double rational_double(const Rational& q);

Rational rational_pow(const Rational& base, unsigned exp);

}  // namespace stodom
