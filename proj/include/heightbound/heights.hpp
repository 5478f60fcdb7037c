#pragma once

#include <string>
#include <vector>

#include "heightbound/bounded_real.hpp"
#include "heightbound/elliptic.hpp"
#include "heightbound/rational.hpp"

namespace hb {

// Point of projective space over the rationals, stored as coprime integers.
class ProjPoint {
public:
    // Throws DomainError for an empty or all-zero coordinate list.
    explicit ProjPoint(const std::vector<Rational>& coords);

    const std::vector<Integer>& coords() const { return coords_; }
    size_t ambient_dimension() const { return coords_.size() - 1; }

private:
    std::vector<Integer> coords_;
};

enum class HeightKind { Weil, H2, Canonical, EssentialMinUpper };

std::string to_string(HeightKind kind);

struct HeightValue {
    HeightKind kind;
    BoundedReal value;
};

// Sum over places of log max |P_i|_v. Over the rationals: log of the largest
// coordinate of the coprime integer representative.
HeightValue weil_height(const ProjPoint& p, Rounding direction = Rounding::Nearest,
                        long precision = kDefaultPrecision);

// Like weil_height but the archimedean place uses the euclidean norm.
HeightValue modified_height_h2(const ProjPoint& p, Rounding direction = Rounding::Nearest,
                               long precision = kDefaultPrecision);

// max_i |P_i| and sum_i P_i^2 of the normalised representative; both heights
// are logarithms of these integers.
Integer max_abs_coordinate(const ProjPoint& p);
Integer sum_of_squares(const ProjPoint& p);

struct CanonicalHeight {
    BoundedReal value;     // nearest estimate
    Rational tolerance;    // |value - exact| <= tolerance
    int doublings = 0;     // terms of the telescoping series used
    long precision = 0;    // working precision of the archimedean terms
};

// Neron-Tate height normalised as lim 4^-n h(x(2^n P)), with h the Weil height
// of x as a point of P^1. Torsion points and O return exactly 0.
// Throws DomainError for tol <= 0 or a point off the curve.
CanonicalHeight canonical_height(const EllipticCurve& e, const ECPoint& p, const Rational& tol);

// 4^-n h(x(2^n P)) by exact rational doubling. Only practical for small n; used
// as an independent check of canonical_height.
BoundedReal naive_height_quotient(const EllipticCurve& e, const ECPoint& p, int n, long precision);

// h(x(P)) + sum_{k<=n} 4^-k (Phi_k - log g_k) on the integral model; equals
// naive_height_quotient(e, p, n) whenever the curve already has integral
// coefficients.
BoundedReal telescoped_height_quotient(const EllipticCurve& e, const ECPoint& p, int n, long precision);

// Data of the telescoping series for one curve, exposed for inspection.
struct DoublingBounds {
    Integer resultant;     // Res(phi, psi) of the integral model's duplication forms
    BoundedReal delta;     // upper bound on |h(x(2Q)) - 4 h(x(Q))|
};
DoublingBounds doubling_bounds(const EllipticCurve& e, long precision = kDefaultPrecision);

struct ZhangBracket {
    BoundedReal mu_lower;
    BoundedReal mu_upper;
};

// (dim+1)^-1 h/deg <= mu <= h/deg; both ends rounded in the direction of h.
ZhangBracket zhang_sandwich(const BoundedReal& h, long degree, long dimension);
// Upper bound for the height from an upper bound of the essential minimum:
// h <= (dim+1) deg mu.
BoundedReal h_upper_from_mu(const BoundedReal& mu_upper, long degree, long dimension);

// deg V h(W) + deg W h(V) + c deg V deg W, rounded upward.
BoundedReal arithmetic_bezout_upper(long deg_v, const BoundedReal& h_v, long deg_w, const BoundedReal& h_w,
                                    const BoundedReal& c);

}  // namespace hb
