#include "heightbound/elliptic.hpp"

#include <map>

namespace hb {

std::string ECPoint::to_string() const {
    if (infinity_) return "O";
    return "(" + format_rational(x_) + ", " + format_rational(y_) + ")";
}

SingularCurveError::SingularCurveError(const Rational& a, const Rational& b, Rational discriminant)
    : DomainError("singular curve y^2 = x^3 + (" + format_rational(a) + ")x + (" + format_rational(b) +
                  "): discriminant " + format_rational(discriminant)),
      discriminant_(std::move(discriminant)) {}

EllipticCurve EllipticCurve::validate(const Rational& a, const Rational& b) {
    EllipticCurve e(a, b);
    Rational disc = e.discriminant();
    if (disc == 0) throw SingularCurveError(a, b, disc);
    return e;
}

Rational EllipticCurve::discriminant() const { return Rational(-16) * (4 * a_ * a_ * a_ + 27 * b_ * b_); }

bool EllipticCurve::contains(const ECPoint& p) const {
    if (p.is_infinity()) return true;
    const Rational& x = p.x();
    return p.y() * p.y() == x * x * x + a_ * x + b_;
}

void EllipticCurve::require_on_curve(const ECPoint& p) const {
    if (!contains(p)) throw DomainError("point " + p.to_string() + " is not on " + to_string());
}

ECPoint EllipticCurve::negate(const ECPoint& p) const {
    if (p.is_infinity()) return p;
    return {p.x(), Rational(-p.y())};
}

ECPoint EllipticCurve::add(const ECPoint& p, const ECPoint& q) const {
    if (p.is_infinity()) return q;
    if (q.is_infinity()) return p;
    Rational slope;
    if (p.x() == q.x()) {
        if (p.y() != q.y() || p.y() == 0) return ECPoint::infinity();
        slope = (3 * p.x() * p.x() + a_) / (2 * p.y());
    } else {
        slope = (q.y() - p.y()) / (q.x() - p.x());
    }
    Rational x3 = slope * slope - p.x() - q.x();
    Rational y3 = slope * (p.x() - x3) - p.y();
    return {std::move(x3), std::move(y3)};
}

ECPoint EllipticCurve::scalar_mul(const Integer& m, const ECPoint& p) const {
    if (m < 0) return negate(scalar_mul(Integer(-m), p));
    ECPoint acc = ECPoint::infinity();
    ECPoint base = p;
    Integer k = m;
    while (k > 0) {
        if (mpz_odd_p(k.get_mpz_t())) acc = add(acc, base);
        k >>= 1;
        if (k > 0) base = doubled(base);
    }
    return acc;
}

std::string EllipticCurve::to_string() const {
    return "y^2 = x^3 + (" + format_rational(a_) + ")x + (" + format_rational(b_) + ")";
}

std::optional<int> torsion_order(const EllipticCurve& e, const ECPoint& p) {
    // Multiples are accumulated one step at a time: m*P for m = 1..12.
    ECPoint multiple = p;
    for (int m = 1; m <= 12; ++m) {
        if (multiple.is_infinity()) {
            for (int order : kMazurOrders)
                if (order == m) return m;
            return std::nullopt;
        }
        multiple = e.add(multiple, p);
    }
    return std::nullopt;
}

namespace {

// log max(1, |a|_v^(1/2), |b|_v^(1/3)) at a finite prime p, as a coefficient of log p.
Rational finite_exponent(const Rational& a, const Rational& b, const Integer& p) {
    auto valuation = [&](const Rational& q) -> long {
        long v = 0;
        Integer n = q.get_num(), d = q.get_den();
        while (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) {
            n /= p;
            ++v;
        }
        while (mpz_divisible_p(d.get_mpz_t(), p.get_mpz_t())) {
            d /= p;
            --v;
        }
        return v;
    };
    Rational best = 0;
    if (a != 0) best = std::max(best, Rational(-valuation(a), 2));
    if (b != 0) best = std::max(best, Rational(-valuation(b), 3));
    return best;
}

}  // namespace

ConstExpr weierstrass_height_expr(const EllipticCurve& e) {
    const Rational& a = e.a();
    const Rational& b = e.b();
    Rational abs_a = abs(a), abs_b = abs(b);

    // Archimedean place: max(0, log|a|/2, log|b|/3), decided exactly.
    enum class Arch { Zero, A, B } choice = Arch::Zero;
    if (a != 0 && abs_a > 1) choice = Arch::A;
    if (b != 0 && abs_b > 1) {
        if (choice == Arch::Zero || pow_rational(abs_b, 2) > pow_rational(abs_a, 3)) choice = Arch::B;
    }
    ConstExpr total;
    bool any = false;
    auto append = [&](const ConstExpr& term) {
        total = any ? total + term : term;
        any = true;
    };
    if (choice == Arch::A) append(Rational(1, 2) * ConstExpr::log(abs_a));
    if (choice == Arch::B) append(Rational(1, 3) * ConstExpr::log(abs_b));

    // Finite places: only primes in the denominators contribute.
    std::map<Integer, bool> primes;
    for (const Integer& d : {a.get_den(), b.get_den()})
        if (d != 1)
            for (const auto& [p, mult] : factorize(d)) primes[p] = true;
    for (const auto& [p, unused] : primes) {
        Rational c = finite_exponent(a, b, p);
        if (c != 0) append(ConstExpr(c) * ConstExpr::log(Rational(p)));
    }
    return any ? total : ConstExpr(Rational(0));
}

BoundedReal weierstrass_height(const EllipticCurve& e, Rounding direction, long precision) {
    return eval_const(weierstrass_height_expr(e), direction, precision);
}

}  // namespace hb
