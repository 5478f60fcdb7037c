#pragma once

#include <mpfr.h>

#include <string>

#include "heightbound/rational.hpp"

namespace hb {

inline constexpr long kDefaultPrecision = 128;

enum class Rounding { Upper, Lower, Nearest };

std::string to_string(Rounding r);
Rounding parse_rounding(const std::string& s);
mpfr_rnd_t to_mpfr(Rounding r);

// Owning wrapper around an mpfr_t with value semantics.
class BigFloat {
public:
    explicit BigFloat(long precision = kDefaultPrecision);
    BigFloat(const BigFloat& other);
    BigFloat(BigFloat&& other) noexcept;
    BigFloat& operator=(const BigFloat& other);
    BigFloat& operator=(BigFloat&& other) noexcept;
    ~BigFloat();

    static BigFloat from_rational(const Rational& q, long precision, mpfr_rnd_t rnd);
    static BigFloat from_integer(const Integer& z, long precision, mpfr_rnd_t rnd);

    mpfr_ptr get() { return value_; }
    mpfr_srcptr get() const { return value_; }
    long precision() const { return static_cast<long>(mpfr_get_prec(value_)); }

    double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }
    // Exact conversion; the value must be finite.
    Rational to_rational() const;
    // Shortest decimal with at most `digits` significant digits, rounded in
    // direction `rnd`. Fixed notation for moderate exponents, otherwise
    // "d.ddde<exp>". Trailing zeros are trimmed.
    std::string to_decimal(int digits, mpfr_rnd_t rnd) const;

    int sign() const { return mpfr_sgn(value_); }

private:
    mpfr_t value_;
};

int compare(const BigFloat& a, const BigFloat& b);

// A real number known only from one side: an Upper value is >= the exact
// quantity, a Lower value is <= it. Nearest carries no guarantee beyond the
// working precision.
class BoundedReal {
public:
    BoundedReal(BigFloat value, Rounding direction) : value_(std::move(value)), direction_(direction) {}

    static BoundedReal from_rational(const Rational& q, Rounding direction, long precision = kDefaultPrecision);

    const BigFloat& value() const { return value_; }
    Rounding direction() const { return direction_; }
    long precision() const { return value_.precision(); }
    double to_double() const { return value_.to_double(); }

    // Decimal string rounded consistently with the direction.
    std::string to_decimal(int digits) const;
    std::string to_decimal() const;

private:
    BigFloat value_;
    Rounding direction_;
};

// Arithmetic that keeps directions sound. Both operands must carry the same
// direction. mul() additionally requires nonnegative operands, which is the
// case for every height and constant in this library.
BoundedReal add(const BoundedReal& a, const BoundedReal& b);
BoundedReal mul(const BoundedReal& a, const BoundedReal& b);
// Multiplication by an exact nonnegative rational.
BoundedReal scale(const BoundedReal& a, const Rational& factor);
BoundedReal with_precision(const BoundedReal& a, long precision);

enum class Ordering { Less, Greater, Indeterminate };

std::string to_string(Ordering o);

// Strict ordering only when the one-sided intervals are disjoint.
Ordering compare_bound(const BoundedReal& a, const BoundedReal& b);

}  // namespace hb
