#pragma once

#include <string>
#include <vector>

#include "heightbound/bounds.hpp"
#include "heightbound/elliptic.hpp"
#include "heightbound/heights.hpp"

namespace hb {

// A rank-one subgroup of E(Q): generator g and a finite torsion subgroup.
class GammaSpec {
public:
    // Checks g on the curve and non-torsion, every torsion point of admissible
    // order, and closure of the torsion list under addition. An empty list
    // stands for {O}; O is prepended when missing. Throws DomainError.
    static GammaSpec validate(const EllipticCurve& curve, const ECPoint& generator,
                              std::vector<ECPoint> torsion_points = {});

    const EllipticCurve& curve() const { return curve_; }
    const ECPoint& generator() const { return generator_; }
    const std::vector<ECPoint>& torsion_points() const { return torsion_; }

private:
    GammaSpec(EllipticCurve c, ECPoint g, std::vector<ECPoint> t)
        : curve_(std::move(c)), generator_(std::move(g)), torsion_(std::move(t)) {}
    EllipticCurve curve_;
    ECPoint generator_;
    std::vector<ECPoint> torsion_;
};

struct LatticePoint {
    long multiple;             // a in a*g + T
    size_t torsion_index;      // index of T in the torsion list
    ECPoint point;
    CanonicalHeight height;
};

// Largest |a| that can satisfy hhat(a g) <= B + tol given hhat(g) known to
// within tol.
long multiple_bound(const CanonicalHeight& generator_height, const Rational& bound, const Rational& tol);

// All a g + T with computed canonical height <= B + tol, ordered by a then by
// torsion index. Throws DomainError when hhat(g) <= tol or B < 0.
std::vector<LatticePoint> enumerate_rank1(const GammaSpec& gamma, const Rational& bound, const Rational& tol,
                                          unsigned shards = 1);

// Exact test of the affine family equation; points at infinity give false.
bool family_membership(const ECPoint& p1, const ECPoint& p2, Family family, long n);

// y^2 = x^3 + x - 1 for the first family, y^2 = x^3 - x - 2 for the second.
EllipticCurve family_curve(Family family);

struct FoundPoint {
    ECPoint p1, p2;
    long a1, a2;
    size_t t1, t2;
    CanonicalHeight h1, h2;
};

struct SearchMetrics {
    double elapsed_seconds = 0;
    double candidates_per_second = 0;
    unsigned shards = 1;
};

struct SearchReport {
    Family family;
    long n;
    Rational height_bound;
    Rational tolerance;
    EllipticCurve curve;
    ECPoint generator;
    CanonicalHeight generator_height;
    long max_multiple;
    size_t lattice_points;   // |L|, L the enumerated subset of Gamma
    Integer candidates;      // |L x L|
    std::vector<FoundPoint> points;
    // Points of the projective closure lying over infinity. The only such
    // point is (O, O), since y2 and hence x2 are unbounded as x1 grows.
    std::vector<std::pair<ECPoint, ECPoint>> closure_candidates;
    SearchMetrics metrics;
};

// Every pair in L x L satisfying the family equation, where L is the output
// of enumerate_rank1. The result does not depend on `shards`. Throws
// DomainError when gamma's curve is not the family's curve.
SearchReport search_rational_points(Family family, long n, const GammaSpec& gamma, const Rational& bound,
                                    const Rational& tol, unsigned shards = 1);

}  // namespace hb
