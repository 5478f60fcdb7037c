#include <doctest.h>

#include <vector>

#include "heightbound/elliptic.hpp"
#include "heightbound/errors.hpp"

using namespace hb;

namespace {

EllipticCurve e1() { return EllipticCurve::validate(1, -1); }
EllipticCurve e2() { return EllipticCurve::validate(-1, -2); }

std::vector<ECPoint> multiples(const EllipticCurve& e, const ECPoint& g, long lo, long hi) {
    std::vector<ECPoint> out;
    for (long m = lo; m <= hi; ++m) out.push_back(e.scalar_mul(m, g));
    return out;
}

}  // namespace

TEST_CASE("validate rejects singular curves") {
    CHECK_THROWS_AS(EllipticCurve::validate(-3, 2), SingularCurveError);
    CHECK_THROWS_AS(EllipticCurve::validate(0, 0), SingularCurveError);
    try {
        EllipticCurve::validate(-3, 2);
    } catch (const SingularCurveError& err) {
        CHECK(err.discriminant() == 0);
    }
    CHECK(e2().discriminant() == -1664);
    CHECK(e1().discriminant() == -496);
}

TEST_CASE("doubling and addition by hand") {
    auto e = e1();
    ECPoint g(1, 1);
    CHECK(e.contains(g));
    CHECK(e.doubled(g) == ECPoint(2, -3));
    CHECK(e.scalar_mul(3, g) == ECPoint(13, 47));
    CHECK(e.scalar_mul(-1, g) == ECPoint(1, -1));
    CHECK(e.scalar_mul(0, g).is_infinity());
    auto f = e2();
    CHECK(f.doubled(ECPoint(2, 2)) == ECPoint(make_rational(57, 16), make_rational(-403, 64)));
}

TEST_CASE("group law axioms on multiples of the generators") {
    for (auto [e, g] : {std::pair{e1(), ECPoint(1, 1)}, std::pair{e2(), ECPoint(2, 2)}}) {
        auto pts = multiples(e, g, -4, 4);
        pts.push_back(ECPoint::infinity());
        for (const auto& p : pts) {
            CHECK(e.contains(p));
            CHECK(e.add(p, ECPoint::infinity()) == p);
            CHECK(e.add(p, e.negate(p)).is_infinity());
            for (const auto& q : pts) {
                CHECK(e.add(p, q) == e.add(q, p));
                for (const auto& r : {pts[0], pts[3], pts[7]})
                    CHECK(e.add(e.add(p, q), r) == e.add(p, e.add(q, r)));
            }
        }
        for (long a = -5; a <= 5; ++a)
            for (long b = -5; b <= 5; ++b)
                CHECK(e.add(e.scalar_mul(a, g), e.scalar_mul(b, g)) == e.scalar_mul(a + b, g));
    }
}

TEST_CASE("points off the curve are refused") {
    CHECK_FALSE(e1().contains(ECPoint(1, 2)));
    CHECK_THROWS_AS(e1().require_on_curve(ECPoint(1, 2)), DomainError);
    CHECK_NOTHROW(e1().require_on_curve(ECPoint::infinity()));
}

TEST_CASE("torsion orders") {
    // y^2 = x^3 + 1 has torsion Z/6
    auto e = EllipticCurve::validate(0, 1);
    CHECK(torsion_order(e, ECPoint::infinity()) == 1);
    CHECK(torsion_order(e, ECPoint(-1, 0)) == 2);
    CHECK(torsion_order(e, ECPoint(0, 1)) == 3);
    CHECK(torsion_order(e, ECPoint(2, 3)) == 6);
    CHECK_FALSE(torsion_order(e1(), ECPoint(1, 1)).has_value());
    CHECK_FALSE(torsion_order(e2(), ECPoint(2, 2)).has_value());
    // y^2 = x^3 - x: full 2-torsion
    auto f = EllipticCurve::validate(-1, 0);
    for (int x : {-1, 0, 1}) CHECK(torsion_order(f, ECPoint(x, 0)) == 2);
}

TEST_CASE("Weierstrass height") {
    const Rational log2_over_3_hi = parse_rational("0.23104906018664843647241070715272552269183337812009");
    const Rational log2_over_3_lo = parse_rational("0.23104906018664843647241070715272552269183337812008");
    auto up = weierstrass_height(e2(), Rounding::Upper, 256);
    auto lo = weierstrass_height(e2(), Rounding::Lower, 256);
    CHECK(up.value().to_rational() >= log2_over_3_lo);
    CHECK(lo.value().to_rational() <= log2_over_3_hi);
    CHECK(up.value().to_rational() - lo.value().to_rational() < parse_rational("1e-70"));
    CHECK(weierstrass_height(e1(), Rounding::Upper).value().sign() == 0);
    // y^2 = x^3 - 16x + 16: (1 : 4 : 16^(1/3)), archimedean max 4
    auto g = weierstrass_height(EllipticCurve::validate(-16, 16), Rounding::Nearest);
    CHECK(g.to_double() == doctest::Approx(1.3862943611198906));
    // a = 1/4: |a|_2^(1/2) = 2 at the prime 2
    auto h = weierstrass_height(EllipticCurve::validate(make_rational(1, 4), 1), Rounding::Nearest);
    CHECK(h.to_double() == doctest::Approx(0.6931471805599453));
}
