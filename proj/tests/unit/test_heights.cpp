#include <doctest.h>

#include <cmath>
#include <random>

#include "heightbound/errors.hpp"
#include "heightbound/heights.hpp"

using namespace hb;

namespace {

const Rational kTol = make_rational(1, Integer("10000000000"));

EllipticCurve e1() { return EllipticCurve::validate(1, -1); }
EllipticCurve e2() { return EllipticCurve::validate(-1, -2); }

Rational exact(const BoundedReal& v) { return v.value().to_rational(); }
Rational exact(const CanonicalHeight& h) { return h.value.value().to_rational(); }

Rational abs_q(const Rational& q) { return q < 0 ? Rational(-q) : q; }

}  // namespace

TEST_CASE("projective points are normalised to coprime integers") {
    ProjPoint p({make_rational(1, 2), make_rational(3, 4), 0});
    CHECK(p.coords() == std::vector<Integer>{2, 3, 0});
    CHECK(p.ambient_dimension() == 2);
    ProjPoint q({6, -9, 12});
    CHECK(q.coords() == std::vector<Integer>{2, -3, 4});
    CHECK_THROWS_AS(ProjPoint({}), DomainError);
    CHECK_THROWS_AS(ProjPoint({0, 0}), DomainError);
}

TEST_CASE("Weil and modified heights of small points") {
    ProjPoint p({make_rational(1, 2), make_rational(3, 4)});
    CHECK(max_abs_coordinate(p) == 3);
    CHECK(sum_of_squares(p) == 13);
    CHECK(weil_height(p).value.to_double() == doctest::Approx(std::log(3.0)));
    CHECK(modified_height_h2(p).value.to_double() == doctest::Approx(0.5 * std::log(13.0)));
    CHECK(weil_height(ProjPoint({1, 0, 0})).value.value().sign() == 0);
    CHECK(modified_height_h2(ProjPoint({1, 1})).value.to_double() == doctest::Approx(0.5 * std::log(2.0)));
    CHECK(weil_height(p).kind == HeightKind::Weil);
    CHECK(to_string(HeightKind::H2) == "h2");
}

TEST_CASE("h <= h2 <= h + log(m+1)/2 on random points") {
    std::mt19937_64 rng(20240611);
    std::uniform_int_distribution<int> dim(1, 5);
    std::uniform_int_distribution<long> coord(-1000000, 1000000);
    std::uniform_int_distribution<long> den(1, 1000);
    for (int trial = 0; trial < 2000; ++trial) {
        int m = dim(rng);
        std::vector<Rational> c;
        for (int i = 0; i <= m; ++i) c.push_back(make_rational(coord(rng), den(rng)));
        if (std::all_of(c.begin(), c.end(), [](const Rational& q) { return q == 0; })) continue;
        ProjPoint p(c);
        Integer mx = max_abs_coordinate(p), ss = sum_of_squares(p);
        CHECK(mx * mx <= ss);
        CHECK(ss <= (m + 1) * mx * mx);
        auto h_up = weil_height(p, Rounding::Upper).value;
        auto h_lo = weil_height(p, Rounding::Lower).value;
        auto h2_up = modified_height_h2(p, Rounding::Upper).value;
        auto h2_lo = modified_height_h2(p, Rounding::Lower).value;
        CHECK(compare_bound(h_lo, h2_up) != Ordering::Greater);
        auto half_log = BoundedReal::from_rational(0, Rounding::Upper);
        {
            BigFloat l(kDefaultPrecision);
            mpfr_set_ui(l.get(), static_cast<unsigned long>(m + 1), MPFR_RNDU);
            mpfr_log(l.get(), l.get(), MPFR_RNDU);
            mpfr_div_2ui(l.get(), l.get(), 1, MPFR_RNDU);
            half_log = BoundedReal(std::move(l), Rounding::Upper);
        }
        CHECK(compare_bound(h2_lo, add(h_up, half_log)) != Ordering::Greater);
        CHECK(exact(h_lo) <= exact(h_up));
    }
}

TEST_CASE("canonical height of the rank-one curve of conductor 37") {
    // y^2 = x^3 - 16x + 16 is a model of y^2 + y = x^3 - x; its regulator is
    // 0.0511114082399688 with this normalisation.
    auto e = EllipticCurve::validate(-16, 16);
    auto h = canonical_height(e, ECPoint(0, 4), make_rational(1, Integer("100000000000000000000")));
    CHECK(abs_q(exact(h) - parse_rational("0.0511114082399688")) < parse_rational("1e-16"));
}

TEST_CASE("canonical height agrees with the exact doubling quotient") {
    for (auto [e, g] : {std::pair{e1(), ECPoint(1, 1)}, std::pair{e2(), ECPoint(2, 2)}}) {
        auto h = canonical_height(e, g, make_rational(1, Integer("1000000000000000000000000")));
        Rational delta = exact(doubling_bounds(e).delta);
        for (int n : {6, 8, 9}) {
            Rational q = exact(naive_height_quotient(e, g, n, 256));
            Rational gap = delta / (3 * Rational(pow_integer(4, static_cast<unsigned long>(n))));
            CHECK(abs_q(exact(h) - q) <= gap + h.tolerance);
            Rational t = exact(telescoped_height_quotient(e, g, n, 256));
            CHECK(abs_q(t - q) < parse_rational("1e-60"));
        }
    }
}

TEST_CASE("frozen canonical heights of the generators") {
    auto h1 = canonical_height(e1(), ECPoint(1, 1), kTol);
    auto h2 = canonical_height(e2(), ECPoint(2, 2), kTol);
    CHECK(abs_q(exact(h1) - parse_rational("0.25168910999854")) < 2 * kTol);
    CHECK(abs_q(exact(h2) - parse_rational("1.06598813992892")) < 2 * kTol);
    CHECK(h1.tolerance == kTol);
    CHECK(h1.doublings > 0);
}

TEST_CASE("canonical height is quadratic") {
    for (auto [e, g] : {std::pair{e1(), ECPoint(1, 1)}, std::pair{e2(), ECPoint(2, 2)}}) {
        Rational hg = exact(canonical_height(e, g, kTol));
        for (long m = 1; m <= 10; ++m) {
            Rational hm = exact(canonical_height(e, e.scalar_mul(m, g), kTol));
            CHECK(abs_q(hm - m * m * hg) <= (m * m + 1) * kTol);
        }
        for (long a = 1; a <= 4; ++a)
            for (long b = 1; b <= 4; ++b) {
                auto P = e.scalar_mul(a, g), Q = e.scalar_mul(b, g);
                Rational s = exact(canonical_height(e, e.add(P, Q), kTol));
                Rational d = exact(canonical_height(e, e.sub(P, Q), kTol));
                Rational hp = exact(canonical_height(e, P, kTol));
                Rational hq = exact(canonical_height(e, Q, kTol));
                CHECK(abs_q(s + d - 2 * hp - 2 * hq) <= 6 * kTol);
            }
    }
}

TEST_CASE("canonical height vanishes on torsion and rejects bad input") {
    auto e = EllipticCurve::validate(0, 1);
    CHECK(exact(canonical_height(e, ECPoint(2, 3), kTol)) == 0);
    CHECK(exact(canonical_height(e, ECPoint::infinity(), kTol)) == 0);
    CHECK_THROWS_AS(canonical_height(e, ECPoint(1, 1), kTol), DomainError);
    CHECK_THROWS_AS(canonical_height(e1(), ECPoint(1, 1), 0), DomainError);
}

TEST_CASE("canonical height on a curve with non-integral coefficients") {
    // y^2 = x^3 + x/16 - 1/64 is e1 rescaled by u = 1/2: (x, y) -> (x/4, y/8)
    auto f = EllipticCurve::validate(make_rational(1, 16), make_rational(-1, 64));
    ECPoint g(make_rational(1, 4), make_rational(1, 8));
    REQUIRE(f.contains(g));
    Rational a = exact(canonical_height(f, g, kTol));
    Rational b = exact(canonical_height(e1(), ECPoint(1, 1), kTol));
    CHECK(abs_q(a - b) <= 2 * kTol);
}

TEST_CASE("Zhang sandwich and arithmetic Bezout") {
    auto h = BoundedReal::from_rational(12, Rounding::Upper);
    auto z = zhang_sandwich(h, 3, 1);
    CHECK(exact(z.mu_lower) == 2);
    CHECK(exact(z.mu_upper) == 4);
    CHECK(exact(h_upper_from_mu(BoundedReal::from_rational(4, Rounding::Upper), 3, 1)) == 24);
    auto b = arithmetic_bezout_upper(2, BoundedReal::from_rational(5, Rounding::Upper), 3,
                                     BoundedReal::from_rational(7, Rounding::Upper),
                                     BoundedReal::from_rational(1, Rounding::Upper));
    CHECK(exact(b) == 2 * 7 + 3 * 5 + 6);
    CHECK_THROWS_AS(zhang_sandwich(h, 0, 1), DomainError);
    CHECK_THROWS_AS(arithmetic_bezout_upper(1, BoundedReal::from_rational(1, Rounding::Lower), 1, h, h),
                    DomainError);
}
