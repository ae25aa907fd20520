#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace zpl {

using Rational = mpq_class;

/// Parses "p/q", an integer, or a decimal with optional exponent ("1.25e-3")
/// into an exact rational. Throws ParseError.
Rational parse_rational(std::string_view text);

/// Exact rational value of a finite double.
Rational rational_from_double(double x);

/// 2^e as an exact rational (e may be negative).
Rational pow2(int e);

/// Nearest multiple of 2^-bits; ties away from zero.
Rational round_to_dyadic(const Rational& x, int bits);
Rational floor_to_dyadic(const Rational& x, int bits);
Rational ceil_to_dyadic(const Rational& x, int bits);

/// Exact decimal text when the denominator is 2^a 5^b, otherwise "p/q".
std::string exact_string(const Rational& x);

/// Fixed-point decimal with `decimals` digits after the point, rounded to
/// nearest (ties away from zero). Exact integer arithmetic.
std::string fixed_string(const Rational& x, int decimals);

/// Scientific notation with `sig` significant digits, rounded toward +inf
/// for x >= 0. Used for error radii, which must stay upper bounds.
std::string scientific_string_up(const Rational& x, int sig);

double to_double(const Rational& x);

}  // namespace zpl
