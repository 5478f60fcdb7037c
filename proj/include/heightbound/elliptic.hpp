#pragma once

#include <optional>
#include <string>

#include "heightbound/bounded_real.hpp"
#include "heightbound/const_expr.hpp"
#include "heightbound/errors.hpp"
#include "heightbound/rational.hpp"

namespace hb {

class ECPoint {
public:
    static ECPoint infinity() { return ECPoint(); }
    ECPoint(Rational x, Rational y) : x_(std::move(x)), y_(std::move(y)), infinity_(false) {}

    bool is_infinity() const { return infinity_; }
    const Rational& x() const { return x_; }
    const Rational& y() const { return y_; }

    friend bool operator==(const ECPoint& p, const ECPoint& q) {
        if (p.infinity_ || q.infinity_) return p.infinity_ == q.infinity_;
        return p.x_ == q.x_ && p.y_ == q.y_;
    }
    friend bool operator!=(const ECPoint& p, const ECPoint& q) { return !(p == q); }

    std::string to_string() const;

private:
    ECPoint() = default;
    Rational x_, y_;
    bool infinity_ = true;
};

class SingularCurveError : public DomainError {
public:
    SingularCurveError(const Rational& a, const Rational& b, Rational discriminant);
    const Rational& discriminant() const { return discriminant_; }

private:
    Rational discriminant_;
};

// y^2 = x^3 + a x + b over the rationals.
class EllipticCurve {
public:
    // Throws SingularCurveError when 4a^3 + 27b^2 = 0.
    static EllipticCurve validate(const Rational& a, const Rational& b);

    const Rational& a() const { return a_; }
    const Rational& b() const { return b_; }
    // -16 (4a^3 + 27b^2)
    Rational discriminant() const;

    bool contains(const ECPoint& p) const;
    // Throws DomainError when p is not on the curve.
    void require_on_curve(const ECPoint& p) const;

    ECPoint negate(const ECPoint& p) const;
    ECPoint add(const ECPoint& p, const ECPoint& q) const;
    ECPoint sub(const ECPoint& p, const ECPoint& q) const { return add(p, negate(q)); }
    ECPoint doubled(const ECPoint& p) const { return add(p, p); }
    ECPoint scalar_mul(const Integer& m, const ECPoint& p) const;
    ECPoint scalar_mul(long m, const ECPoint& p) const { return scalar_mul(Integer(m), p); }

    std::string to_string() const;

    friend bool operator==(const EllipticCurve& e, const EllipticCurve& f) { return e.a_ == f.a_ && e.b_ == f.b_; }

private:
    EllipticCurve(Rational a, Rational b) : a_(std::move(a)), b_(std::move(b)) {}
    Rational a_, b_;
};

// Orders admitted for rational torsion points.
inline constexpr int kMazurOrders[] = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12};

// Order of p if p is a rational torsion point, nullopt otherwise.
std::optional<int> torsion_order(const EllipticCurve& e, const ECPoint& p);

// Height of the Weierstrass equation: the Weil height of (1 : a^(1/2) : b^(1/3)),
// as an exact symbolic sum of rational multiples of logarithms.
ConstExpr weierstrass_height_expr(const EllipticCurve& e);
BoundedReal weierstrass_height(const EllipticCurve& e, Rounding direction = Rounding::Upper,
                               long precision = kDefaultPrecision);

}  // namespace hb
