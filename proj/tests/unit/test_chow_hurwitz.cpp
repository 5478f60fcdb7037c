#include <doctest.h>

#include "heightbound/bounds.hpp"
#include "heightbound/chow.hpp"
#include "heightbound/errors.hpp"
#include "heightbound/hurwitz.hpp"

using namespace hb;

TEST_CASE("Chow ring of P^2 x P^2") {
    std::vector<int> amb{2, 2};
    auto l = ChowClass::monomial(amb, {1, 0});
    auto m = ChowClass::monomial(amb, {0, 1});
    CHECK((l * l * l).is_zero());
    CHECK(top_coefficient(l * l * m * m) == 1);
    auto lm = l + m;
    // (l + m)^4 = 6 l^2 m^2
    CHECK(top_coefficient(chow_mul({lm, lm, lm, lm})) == 6);
    CHECK(chow_mul({lm, lm, lm, lm}).to_string() == "6*l1^2*l2^2");
    CHECK((lm * lm).terms().size() == 3);
}

TEST_CASE("Bezout in a single projective space") {
    std::vector<int> amb{3};
    auto h = [&](long d) { return ChowClass::hypersurface(amb, {Integer(d)}); };
    CHECK(top_coefficient(chow_mul({h(2), h(3), h(5)})) == 30);
    CHECK(top_coefficient(chow_mul({h(2), h(3)})) == 0);
    CHECK(chow_mul({h(2), h(3)}).coefficient({2}) == 6);
}

TEST_CASE("family degree matches 9(n+1)") {
    std::vector<int> amb{2, 2};
    for (long n = 1; n <= 30; ++n) {
        auto a = ChowClass::hypersurface(amb, {Integer(n), 1});
        auto b = ChowClass::hypersurface(amb, {3, 0});
        auto c = ChowClass::hypersurface(amb, {0, 3});
        auto d = ChowClass::hypersurface(amb, {1, 1});
        CHECK(top_coefficient(chow_mul({a, b, c, d})) == 9 * (n + 1));
        CHECK(family_degree_upper(Family::Second, n) == 9 * (n + 1));
        CHECK(family_degree_upper(Family::First, n) == 9 * (n + 1));
    }
}

TEST_CASE("Chow errors") {
    CHECK_THROWS_AS(ChowClass({}), DomainError);
    CHECK_THROWS_AS(ChowClass({-1}), DomainError);
    CHECK_THROWS_AS(chow_mul({}), DomainError);
    CHECK_THROWS_AS(ChowClass({1}) * ChowClass({2}), DomainError);
    CHECK_THROWS_AS(ChowClass::hypersurface({1, 1}, {1}), DomainError);
    CHECK(ChowClass::monomial({1}, {2}).is_zero());
}

TEST_CASE("Riemann-Hurwitz on classical covers") {
    // hyperelliptic double cover with 2g+2 branch points
    RamificationProfile hyper;
    for (int i = 0; i < 8; ++i) hyper.branches.push_back({"b" + std::to_string(i), {{2, 1}}});
    CHECK(hurwitz_genus(2, 0, hyper) == 3);
    // z -> z^d is totally ramified over 0 and infinity
    RamificationProfile power{{{"0", {{5, 1}}}, {"inf", {{5, 1}}}}};
    CHECK(hurwitz_genus(5, 0, power) == 0);
    // unramified double cover of a genus-2 curve
    CHECK(hurwitz_genus(2, 2, RamificationProfile{}) == 3);
}

TEST_CASE("profile validation") {
    RamificationProfile bad{{{"p", {{2, 1}, {1, 2}}}}};
    CHECK_THROWS_WITH_AS(validate_profile(3, bad), doctest::Contains("'p'"), DomainError);
    RamificationProfile odd{{{"a", {{2, 1}}}}};
    CHECK_THROWS_AS(hurwitz_genus(2, 0, odd), DomainError);
    RamificationProfile zero{{{"z", {{0, 2}}}}};
    CHECK_THROWS_AS(validate_profile(0, zero), DomainError);
    auto checked = validate_profile(3, RamificationProfile{{{"q", {{2, 1}, {1, 1}}}}});
    CHECK(checked.total_ramification == 1);
    CHECK(checked.branches.at(0).ramification == 1);
}

TEST_CASE("expressions linear in n") {
    CHECK(parse_linear_in_n("6n-6").at(3) == 12);
    CHECK(parse_linear_in_n("n").at(7) == 7);
    CHECK(parse_linear_in_n("-n+3").at(2) == 1);
    CHECK(parse_linear_in_n("12").at(100) == 12);
    CHECK(parse_linear_in_n("2n").to_string() == "2n");
    CHECK(parse_linear_in_n("6n-6").to_string() == "6n-6");
    CHECK_THROWS_AS(parse_linear_in_n(""), ParseError);
    CHECK_THROWS_AS(parse_linear_in_n("n^2"), ParseError);
    CHECK_THROWS_AS(parse_linear_in_n("3x"), ParseError);
}

TEST_CASE("family profile gives genus 4n+2") {
    auto t = family_profile_template();
    for (long n = 1; n <= 100; ++n) {
        auto p = t.instantiate(n);
        CHECK(hurwitz_genus(t.degree.at(n), t.base_genus, p) == 4 * n + 2);
    }
    CHECK(hurwitz_genus(6, 0, t.instantiate(1)) == 6);
    CHECK(hurwitz_genus(42, 0, t.instantiate(7)) == 30);
    CHECK_THROWS_AS(t.instantiate(0), DomainError);
}
