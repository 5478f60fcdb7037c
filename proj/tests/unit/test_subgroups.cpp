#include <doctest.h>

#include <map>
#include <set>

#include "../common/census_oracle.hpp"
#include "heightbound/errors.hpp"
#include "heightbound/subgroups.hpp"

using namespace hb;

namespace {

oracle::Ring oracle_ring(EndRing r) {
    switch (r) {
        case EndRing::Integers: return oracle::Ring::Z;
        case EndRing::Gaussian: return oracle::Ring::Gauss;
        case EndRing::Eisenstein: return oracle::Ring::Eisenstein;
    }
    return oracle::Ring::Z;
}

oracle::DegreeCounts library_counts(EndRing ring, int N, int r, long dmax) {
    oracle::DegreeCounts out;
    for (const auto& m : enumerate_matrices(ring, N, r, dmax)) ++out[degree_estimate(m)];
    return out;
}

oracle::DegreeCounts oracle_counts(EndRing ring, int N, int r, long dmax) {
    return r == 1 ? oracle::rank_one(oracle_ring(ring), N, dmax) : oracle::rank_two_integers(N, dmax);
}

SubgroupMatrix zmat(int rows, int cols, std::vector<long> v) {
    std::vector<RingElt> e;
    for (long x : v) e.push_back({x, 0});
    return SubgroupMatrix(EndRing::Integers, rows, cols, e);
}

}  // namespace

TEST_CASE("ring arithmetic") {
    auto G = EndRing::Gaussian, W = EndRing::Eisenstein;
    CHECK(ring_mul(G, {0, 1}, {0, 1}) == RingElt{-1, 0});
    CHECK(ring_mul(W, {0, 1}, {0, 1}) == RingElt{-1, -1});
    CHECK(ring_mul(W, {0, 1}, ring_mul(W, {0, 1}, {0, 1})) == RingElt{1, 0});
    CHECK(ring_norm(G, {1, 2}) == 5);
    CHECK(ring_norm(W, {1, 2}) == 3);
    CHECK(ring_norm(EndRing::Integers, {-4, 0}) == 16);
    CHECK(ring_units(G).size() == 4);
    CHECK(ring_units(W).size() == 6);
    CHECK(ring_units(EndRing::Integers).size() == 2);
    for (const auto& u : ring_units(W)) CHECK(ring_norm(W, u) == 1);
    CHECK_THROWS_AS(ring_mul(EndRing::Integers, {INT64_MAX, 0}, {2, 0}), DomainError);
    CHECK(to_string(G, {1, 2}) == "1+2i");
    CHECK(to_string(W, {0, 1}) == "w");
    CHECK(parse_ring("gauss") == G);
    CHECK_THROWS_AS(parse_ring("q"), ParseError);
}

TEST_CASE("canonical associates and residues") {
    for (auto ring : {EndRing::Integers, EndRing::Gaussian, EndRing::Eisenstein}) {
        for (const auto& x : std::vector<RingElt>{{3, 0}, {-2, 0}, {1, 2}, {-3, 1}}) {
            if (ring == EndRing::Integers && x.b != 0) continue;
            RingElt c = canonical_associate(ring, x);
            for (const auto& u : ring_units(ring)) CHECK(canonical_associate(ring, ring_mul(ring, u, x)) == c);
        }
        RingElt p = ring == EndRing::Integers ? RingElt{5, 0} : RingElt{2, 1};
        std::set<std::pair<long, long>> residues;
        for (long a = -6; a <= 6; ++a)
            for (long b = (ring == EndRing::Integers ? 0 : -6); b <= (ring == EndRing::Integers ? 0 : 6); ++b) {
                RingElt x{a, b};
                RingElt r = canonical_residue(ring, x, p);
                residues.insert({r.a, r.b});
                for (const RingElt& q : std::vector<RingElt>{{1, 0}, {0, 1}, {-2, 3}}) {
                    if (ring == EndRing::Integers && q.b != 0) continue;
                    CHECK(canonical_residue(ring, ring_add(ring, x, ring_mul(ring, p, q)), p) == r);
                }
            }
        // |R/pR| is 5, 5 and N(2+w) = 3
        CHECK(residues.size() == (ring == EndRing::Eisenstein ? 3u : 5u));
    }
}

TEST_CASE("matrix shape checks and minors") {
    CHECK_THROWS_AS(zmat(2, 1, {1, 2}), DomainError);
    CHECK_THROWS_AS(zmat(1, 2, {1}), DomainError);
    CHECK_THROWS_AS(SubgroupMatrix(EndRing::Integers, 1, 1, {{1, 1}}), DomainError);
    CHECK_THROWS_AS(zmat(1, 13, std::vector<long>(13, 1)), DomainError);
    auto m = zmat(3, 3, {2, 0, 1, 1, 3, 2, 1, 1, 2});
    CHECK(m.minor({0, 1, 2}) == RingElt{6, 0});
    auto g = SubgroupMatrix(EndRing::Gaussian, 2, 2, {{1, 1}, {0, 0}, {0, 0}, {2, -1}});
    CHECK(g.minor({0, 1}) == RingElt{3, 1});
    CHECK(degree_estimate(g) == 10);
    CHECK(degree_estimate(zmat(2, 3, {1, 0, 0, 0, 1, 0})) == 1);
    CHECK_THROWS_AS(degree_estimate(zmat(2, 2, {1, 2, 2, 4})), DomainError);
}

TEST_CASE("Hermite normal form") {
    auto a = zmat(2, 3, {2, 4, 6, 1, 3, 5});
    auto b = zmat(2, 3, {1, 3, 5, 3, 7, 11});  // same row module
    CHECK(hermite_normal_form(a) == hermite_normal_form(b));
    CHECK(hermite_normal_form(hermite_normal_form(a)) == hermite_normal_form(a));
    CHECK(degree_estimate(hermite_normal_form(a)) == degree_estimate(a));
    auto c = zmat(2, 3, {2, 4, 6, 0, 2, 4});  // index 2 in a's module
    CHECK_FALSE(hermite_normal_form(c) == hermite_normal_form(a));
    auto h = hermite_normal_form(zmat(2, 2, {4, 6, 2, 8}));
    CHECK(h == zmat(2, 2, {2, 8, 0, 10}));
    auto gm = SubgroupMatrix(EndRing::Gaussian, 1, 2, {{0, 2}, {1, -1}});
    auto gu = SubgroupMatrix(EndRing::Gaussian, 1, 2, {{2, 0}, {-1, -1}});  // times -i
    CHECK(hermite_normal_form(gm) == hermite_normal_form(gu));
}

TEST_CASE("row reduction") {
    for (auto m : {zmat(2, 3, {1, 5, 2, 0, 1, 7}), zmat(2, 4, {3, 1, 4, 1, 5, 9, 2, 6}), zmat(1, 3, {0, -4, 2})}) {
        auto rr = reduce_rows(m);
        auto perm = rr.permutation;
        std::sort(perm.begin(), perm.end());
        for (int i = 0; i < m.cols(); ++i) CHECK(perm[static_cast<size_t>(i)] == i);
        std::vector<int> lead(rr.permutation.begin(), rr.permutation.begin() + m.rows());
        std::vector<int> sorted_lead = lead;
        std::sort(sorted_lead.begin(), sorted_lead.end());
        std::int64_t best = ring_norm(m.ring(), m.minor(sorted_lead));
        std::vector<int> idx(static_cast<size_t>(m.cols()));
        for (int i = 0; i < m.cols(); ++i) idx[static_cast<size_t>(i)] = i;
        std::vector<bool> pick(static_cast<size_t>(m.cols()), false);
        std::fill(pick.begin(), pick.begin() + m.rows(), true);
        do {
            std::vector<int> s;
            for (int i = 0; i < m.cols(); ++i)
                if (pick[static_cast<size_t>(i)]) s.push_back(i);
            CHECK(ring_norm(m.ring(), m.minor(s)) <= best);
        } while (std::prev_permutation(pick.begin(), pick.end()));
        for (int i = 0; i < m.rows(); ++i)
            for (int j = 0; j < i; ++j) CHECK(rr.matrix.at(i, j).is_zero());
        CHECK(degree_estimate(rr.matrix) == degree_estimate(m));
    }
    CHECK(reduce_rows(zmat(1, 3, {0, 1, 1})).dominant_diagonal);
    CHECK(reduce_rows(zmat(1, 2, {2, 1})).dominant_diagonal);
}

TEST_CASE("enumeration over Z matches the brute-force oracle") {
    for (int N = 1; N <= 3; ++N)
        for (int r = 1; r <= std::min(N, 2); ++r)
            for (long d : {1L, 10L, 50L}) {
                CAPTURE(N);
                CAPTURE(r);
                CAPTURE(d);
                CHECK(library_counts(EndRing::Integers, N, r, d) == oracle_counts(EndRing::Integers, N, r, d));
            }
}

TEST_CASE("enumeration over Z[i] and Z[w] matches the brute-force oracle") {
    for (long d : {1L, 5L, 25L}) {
        CHECK(library_counts(EndRing::Gaussian, 2, 1, d) == oracle_counts(EndRing::Gaussian, 2, 1, d));
        CHECK(library_counts(EndRing::Eisenstein, 2, 1, d) == oracle_counts(EndRing::Eisenstein, 2, 1, d));
    }
}

TEST_CASE("known counts") {
    // index-k sublattices of Z^2 number sigma(k); sum over k <= 7 is 41
    CHECK(enumerate_matrices(EndRing::Integers, 2, 2, 50).size() == 41);
    CHECK(enumerate_matrices(EndRing::Integers, 3, 2, 50).size() == 1149);
    CHECK(enumerate_matrices(EndRing::Integers, 3, 1, 50).size() == 751);
    CHECK(enumerate_matrices(EndRing::Gaussian, 2, 1, 25).size() == 780);
    CHECK(enumerate_matrices(EndRing::Eisenstein, 2, 1, 25).size() == 708);
}

TEST_CASE("enumeration output is sorted, normalised and shard independent") {
    auto ms = enumerate_matrices(EndRing::Integers, 3, 2, 30);
    std::set<std::vector<RingElt>> distinct;
    for (size_t i = 0; i < ms.size(); ++i) {
        CHECK(hermite_normal_form(ms[i]) == ms[i]);
        distinct.insert(ms[i].entries());
        if (i > 0) CHECK(degree_estimate(ms[i - 1]) <= degree_estimate(ms[i]));
    }
    CHECK(distinct.size() == ms.size());
    for (unsigned shards : {2u, 5u, 8u}) CHECK(enumerate_matrices(EndRing::Integers, 3, 2, 30, kDefaultEnumerationCeiling, shards) == ms);
}

TEST_CASE("enumeration guard") {
    CHECK_THROWS_AS(enumerate_matrices(EndRing::Integers, 6, 3, 100000, 1000), ResourceGuardError);
    CHECK(predicted_enumeration_size(EndRing::Integers, 2, 2, 50) > 0);
    CHECK_THROWS_AS(enumerate_matrices(EndRing::Integers, 2, 3, 10), DomainError);
}

TEST_CASE("torsion counts") {
    for (int N = 1; N <= 4; ++N)
        for (long T : {1L, 7L, 100L}) {
            Integer direct = 0, via_totient = 0;
            for (long i = 1; i <= T; ++i) {
                direct += pow_integer(i, static_cast<unsigned long>(2 * N));
                for (long d = 1; d <= i; ++d)
                    if (i % d == 0) via_totient += torsion_exact_order(N, d);
            }
            CHECK(torsion_count(N, T) == direct);
            CHECK(torsion_count(N, T) == via_totient);
        }
    CHECK(torsion_exact_order(1, 2) == 3);
    CHECK(torsion_exact_order(1, 1) == 1);
}

TEST_CASE("census regression") {
    auto c = census(EndRing::Integers, 3, 2, 40, 10);
    CHECK(c.matrix_count == 785);
    CHECK(c.kappa == 3);
    CHECK(c.torsion_total == 1978405);
    CHECK(c.product_bound == 785 * pow_integer(10, 7));
    CHECK(c.torsion.size() == 10);
    CHECK(c.cumulative.back().second == 785);
    CHECK_THROWS_AS(census(EndRing::Integers, 3, 2, 40, 0), DomainError);
}
