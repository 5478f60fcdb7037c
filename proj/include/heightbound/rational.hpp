#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace hb {

using Integer = mpz_class;
using Rational = mpq_class;

// Parses "p", "-p", "p/q" or a decimal/scientific literal ("1.5", "1e-10")
// into a canonical rational. Throws ParseError.
Rational parse_rational(std::string_view text);

// "p" when the denominator is 1, otherwise "p/q". Never uses a decimal point.
std::string format_rational(const Rational& q);

Rational make_rational(const Integer& num, const Integer& den);

Integer pow_integer(const Integer& base, unsigned long exponent);
Rational pow_rational(const Rational& base, long exponent);

// Prime factorisation of |n| (n != 0) as (prime, multiplicity) pairs in
// increasing order. Trial division followed by Pollard-Brent rho.
std::vector<std::pair<Integer, unsigned>> factorize(const Integer& n);

}  // namespace hb
