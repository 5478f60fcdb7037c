#pragma once

#include <memory>
#include <string>

#include "heightbound/bounded_real.hpp"
#include "heightbound/rational.hpp"

namespace hb {

// Closed interval [lo, hi] with outward-rounded endpoints.
struct Interval {
    BigFloat lo;
    BigFloat hi;
};

// Immutable symbolic expression over exact rationals, powers of pi with
// half-integer exponent, logarithms of positive rationals, Gamma at
// half-integers and factorials. Evaluated only at the end, with directed
// rounding, through interval arithmetic.
class ConstExpr {
public:
    ConstExpr();  // zero
    ConstExpr(const Rational& q);           // NOLINT(google-explicit-constructor)
    ConstExpr(long v) : ConstExpr(Rational(v)) {}  // NOLINT(google-explicit-constructor)

    static ConstExpr rational(const Rational& q);
    // pi^(half_exponent / 2)
    static ConstExpr pi_pow_half(long half_exponent);
    static ConstExpr pi_pow(long exponent) { return pi_pow_half(2 * exponent); }
    static ConstExpr log(const Rational& q);
    // Gamma(k/2 + 1) for k >= 0.
    static ConstExpr gamma_half(long k);
    static ConstExpr factorial(long n);
    // Volume of the Euclidean unit ball in R^r: pi^(r/2) / Gamma(r/2 + 1).
    static ConstExpr unit_ball_volume(long r);

    friend ConstExpr operator+(const ConstExpr& a, const ConstExpr& b);
    friend ConstExpr operator-(const ConstExpr& a, const ConstExpr& b);
    friend ConstExpr operator*(const ConstExpr& a, const ConstExpr& b);
    friend ConstExpr operator/(const ConstExpr& a, const ConstExpr& b);
    friend ConstExpr operator-(const ConstExpr& a);
    ConstExpr pow(long exponent) const;

    Interval enclose(long precision) const;
    std::string to_string() const;

    struct Node;

private:
    explicit ConstExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    std::shared_ptr<const Node> node_;
};

inline constexpr long kMinPrecision = 53;

// Directed evaluation. Upper/Lower return the corresponding endpoint of a
// rigorous enclosure; Nearest rounds the midpoint of a tighter enclosure.
// Throws DomainError for precision < 53 or an undefined subexpression.
BoundedReal eval_const(const ConstExpr& expr, Rounding direction, long precision = kDefaultPrecision);

// Parses expressions such as "1/3log2", "(9/2)*log(2)+21/2*log 2", "2^64*3^40/pi^8".
// Juxtaposition multiplies; log takes a rational literal or a parenthesised one.
ConstExpr parse_const_expr(const std::string& text);

}  // namespace hb
