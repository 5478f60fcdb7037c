#include <doctest.h>

#include <cmath>
#include <set>

#include "heightbound/errors.hpp"
#include "heightbound/search.hpp"

using namespace hb;

namespace {

const Rational kTol = make_rational(1, Integer("10000000000"));

GammaSpec gamma_of(Family f) {
    return GammaSpec::validate(family_curve(f), f == Family::First ? ECPoint(1, 1) : ECPoint(2, 2));
}

using PointPair = std::pair<std::string, std::string>;

std::set<PointPair> found(const SearchReport& r) {
    std::set<PointPair> out;
    for (const auto& p : r.points) out.insert({p.p1.to_string(), p.p2.to_string()});
    return out;
}

// Direct double loop over multiples without the library's lookup table.
std::set<PointPair> brute_force(Family f, long n, long amax) {
    auto e = family_curve(f);
    ECPoint g = f == Family::First ? ECPoint(1, 1) : ECPoint(2, 2);
    std::set<PointPair> out;
    for (long a = -amax; a <= amax; ++a)
        for (long b = -amax; b <= amax; ++b) {
            auto p = e.scalar_mul(a, g), q = e.scalar_mul(b, g);
            if (p.is_infinity() || q.is_infinity()) continue;
            Rational lhs = pow_rational(p.x(), n) + (f == Family::Second ? 1 : 0);
            if (lhs == q.y()) out.insert({p.to_string(), q.to_string()});
        }
    return out;
}

}  // namespace

TEST_CASE("family curves and membership") {
    CHECK(family_curve(Family::First) == EllipticCurve::validate(1, -1));
    CHECK(family_curve(Family::Second) == EllipticCurve::validate(-1, -2));
    CHECK(family_membership(ECPoint(1, 1), ECPoint(1, 1), Family::First, 3));
    CHECK(family_membership(ECPoint(2, -3), ECPoint(5, 11), Family::First, 1) == false);
    CHECK_FALSE(family_membership(ECPoint::infinity(), ECPoint(1, 1), Family::First, 1));
    CHECK(family_membership(ECPoint(2, 2), ECPoint(1, 3), Family::Second, 1));
}

TEST_CASE("gamma validation") {
    auto e = EllipticCurve::validate(-25, 0);
    std::vector<ECPoint> t{ECPoint(0, 0), ECPoint(5, 0), ECPoint(-5, 0)};
    auto g = GammaSpec::validate(e, ECPoint(-4, 6), t);
    CHECK(g.torsion_points().size() == 4);
    CHECK(g.torsion_points().front().is_infinity());
    CHECK_THROWS_AS(GammaSpec::validate(e, ECPoint(-4, 6), {ECPoint(0, 0), ECPoint(5, 0)}), DomainError);
    CHECK_THROWS_AS(GammaSpec::validate(e, ECPoint(0, 0)), DomainError);
    CHECK_THROWS_AS(GammaSpec::validate(e, ECPoint(1, 1)), DomainError);
    CHECK_THROWS_AS(GammaSpec::validate(e, ECPoint(-4, 6), {ECPoint(-4, 6)}), DomainError);
}

TEST_CASE("multiple bound") {
    auto hg = canonical_height(EllipticCurve::validate(1, -1), ECPoint(1, 1), kTol);
    CHECK(multiple_bound(hg, 25, kTol) == 10);
    CHECK(multiple_bound(hg, 0, kTol) == 1);
    CHECK_THROWS_AS(multiple_bound(hg, Rational(Integer("1000000000000")), kTol), ResourceGuardError);
}

TEST_CASE("rank-one enumeration") {
    auto l1 = enumerate_rank1(gamma_of(Family::First), 25, kTol);
    CHECK(l1.size() == 19);
    CHECK(l1.front().multiple == -9);
    CHECK(l1.back().multiple == 9);
    auto l2 = enumerate_rank1(gamma_of(Family::Second), 25, kTol);
    CHECK(l2.size() == 9);
    for (const auto& lp : l1) {
        Rational h = lp.height.value.value().to_rational();
        CHECK(h <= 25 + kTol);
    }
    // with full 2-torsion every multiple appears four times
    auto e = EllipticCurve::validate(-25, 0);
    auto g = GammaSpec::validate(e, ECPoint(-4, 6), {ECPoint(0, 0), ECPoint(5, 0), ECPoint(-5, 0)});
    auto hg = canonical_height(e, ECPoint(-4, 6), kTol).value.to_double();
    auto lt = enumerate_rank1(g, 10, kTol);
    long amax = static_cast<long>(std::floor(std::sqrt(10.0 / hg)));
    CHECK(lt.size() == static_cast<size_t>(4 * (2 * amax + 1)));
    CHECK_THROWS_AS(enumerate_rank1(gamma_of(Family::First), -1, kTol), DomainError);
}

TEST_CASE("search finds exactly the expected points on the first family") {
    std::set<PointPair> expected{{"(1, -1)", "(1, 1)"}, {"(1, 1)", "(1, 1)"}};
    for (long n = 1; n <= 5; ++n) {
        auto r = search_rational_points(Family::First, n, gamma_of(Family::First), 25, kTol);
        CHECK(found(r) == expected);
        CHECK(found(r) == brute_force(Family::First, n, 9));
        CHECK(r.lattice_points == 19);
        CHECK(r.candidates == 361);
        CHECK(r.max_multiple == 10);
        REQUIRE(r.closure_candidates.size() == 1);
        CHECK(r.closure_candidates[0].first.is_infinity());
    }
}

TEST_CASE("second family has no points of small height") {
    for (long n = 1; n <= 5; ++n) {
        auto r = search_rational_points(Family::Second, n, gamma_of(Family::Second), 25, kTol);
        CHECK(r.points.empty());
        CHECK(brute_force(Family::Second, n, 4).empty());
        CHECK(r.lattice_points == 9);
        CHECK(r.max_multiple == 5);
    }
}

TEST_CASE("search results do not depend on the shard count") {
    auto ref = search_rational_points(Family::First, 3, gamma_of(Family::First), 40, kTol, 1);
    for (unsigned shards : {2u, 3u, 8u, 17u}) {
        auto r = search_rational_points(Family::First, 3, gamma_of(Family::First), 40, kTol, shards);
        CHECK(found(r) == found(ref));
        REQUIRE(r.points.size() == ref.points.size());
        for (size_t i = 0; i < r.points.size(); ++i) {
            CHECK(r.points[i].a1 == ref.points[i].a1);
            CHECK(r.points[i].a2 == ref.points[i].a2);
        }
        CHECK(r.lattice_points == ref.lattice_points);
    }
}

TEST_CASE("search refuses a curve from the other family") {
    CHECK_THROWS_AS(search_rational_points(Family::First, 1, gamma_of(Family::Second), 25, kTol), DomainError);
    CHECK_THROWS_AS(search_rational_points(Family::First, 0, gamma_of(Family::First), 25, kTol), DomainError);
}
