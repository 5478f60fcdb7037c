#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "heightbound/rational.hpp"

namespace hb {

// End(E) for the supported curves: Z (no CM), Z[i] and Z[w] with w^2 + w + 1 = 0.
enum class EndRing { Integers, Gaussian, Eisenstein };

std::string to_string(EndRing ring);
EndRing parse_ring(const std::string& text);  // "z", "gauss", "eisenstein"

// a + b*tau with tau = 0 (Z), i or w. For Z the b component is always 0.
struct RingElt {
    std::int64_t a = 0;
    std::int64_t b = 0;

    friend bool operator==(const RingElt& x, const RingElt& y) { return x.a == y.a && x.b == y.b; }
    friend bool operator!=(const RingElt& x, const RingElt& y) { return !(x == y); }
    friend bool operator<(const RingElt& x, const RingElt& y) { return x.a != y.a ? x.a < y.a : x.b < y.b; }
    bool is_zero() const { return a == 0 && b == 0; }
};

// Arithmetic in the chosen ring. Overflow of 64-bit components throws
// DomainError.
RingElt ring_add(EndRing ring, const RingElt& x, const RingElt& y);
RingElt ring_sub(EndRing ring, const RingElt& x, const RingElt& y);
RingElt ring_mul(EndRing ring, const RingElt& x, const RingElt& y);
RingElt ring_neg(const RingElt& x);
// Squared complex absolute value: a^2, a^2 + b^2, a^2 - ab + b^2.
std::int64_t ring_norm(EndRing ring, const RingElt& x);
std::vector<RingElt> ring_units(EndRing ring);
// Unit multiple of x with the lexicographically largest (a, b); x != 0.
RingElt canonical_associate(EndRing ring, const RingElt& x);
// x - p*q with q = floor of the coordinates of x/p; depends only on x mod p.
RingElt canonical_residue(EndRing ring, const RingElt& x, const RingElt& p);
std::string to_string(EndRing ring, const RingElt& x);

class SubgroupMatrix {
public:
    // Row-major entries; throws DomainError on a shape mismatch, rows < 1,
    // rows > cols, a nonzero b component over Z, or cols > 12.
    SubgroupMatrix(EndRing ring, int rows, int cols, std::vector<RingElt> entries);

    EndRing ring() const { return ring_; }
    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const RingElt& at(int i, int j) const { return entries_[static_cast<size_t>(i * cols_ + j)]; }
    RingElt& at(int i, int j) { return entries_[static_cast<size_t>(i * cols_ + j)]; }
    const std::vector<RingElt>& entries() const { return entries_; }

    // Determinant of the square submatrix on the given columns.
    RingElt minor(const std::vector<int>& columns) const;

    std::string to_string() const;

    friend bool operator==(const SubgroupMatrix& x, const SubgroupMatrix& y) {
        return x.ring_ == y.ring_ && x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.entries_ == y.entries_;
    }
    friend bool operator<(const SubgroupMatrix& x, const SubgroupMatrix& y) { return x.entries_ < y.entries_; }

private:
    EndRing ring_;
    int rows_, cols_;
    std::vector<RingElt> entries_;
};

// Sum of norm(minor) over all r x r minors, i.e. det(M M*). Throws
// DomainError when the rows are linearly dependent.
std::int64_t degree_estimate(const SubgroupMatrix& m);

// Hermite normal form under left multiplication by GL_r(ring): row echelon,
// pivots canonical associates, entries above each pivot canonical residues.
// Two full-rank matrices generate the same row module iff their normal forms
// coincide.
SubgroupMatrix hermite_normal_form(const SubgroupMatrix& m);

struct ReducedRows {
    // Columns of the original matrix in their new order; the first r
    // columns carry a minor of maximal norm (lexicographically first among
    // ties).
    std::vector<int> permutation;
    // Hermite normal form of the column-permuted matrix: [T | *] with T upper
    // triangular and diagonal d_1, ..., d_r.
    SubgroupMatrix matrix;
    // Over the fraction field the rows equal T [I | X]; every entry of X has
    // norm at most 1, so each 1 on the diagonal dominates its row.
    bool dominant_diagonal = false;
};
ReducedRows reduce_rows(const SubgroupMatrix& m);

// All Hermite normal forms of r x N full-rank matrices with
// degree_estimate <= dmax, sorted by (degree, entries). Throws
// ResourceGuardError when the predicted number of candidates exceeds
// `ceiling`.
inline constexpr std::uint64_t kDefaultEnumerationCeiling = 50'000'000;
std::vector<SubgroupMatrix> enumerate_matrices(EndRing ring, int N, int r, std::int64_t dmax,
                                               std::uint64_t ceiling = kDefaultEnumerationCeiling,
                                               unsigned shards = 1);
// Number of candidate matrices enumerate_matrices would inspect.
std::uint64_t predicted_enumeration_size(EndRing ring, int N, int r, std::int64_t dmax);

// sum_{i=1}^T i^(2N): points of order dividing i, summed over i <= T.
Integer torsion_count(int N, long T);
// Points of E^N of exact order i: the Jordan totient J_{2N}(i).
Integer torsion_exact_order(int N, long i);

struct CensusReport {
    EndRing ring;
    int N, r;
    std::int64_t max_degree;
    long torsion_bound;
    std::uint64_t matrix_count = 0;
    std::vector<std::pair<std::int64_t, std::uint64_t>> by_degree;   // degree -> count
    std::vector<std::pair<std::int64_t, std::uint64_t>> cumulative;  // degree -> count with degree <= d
    struct TorsionRow {
        long order;
        Integer dividing;  // i^(2N)
        Integer exact;     // J_{2N}(i)
    };
    std::vector<TorsionRow> torsion;
    Integer torsion_total;  // torsion_count(N, T)
    Integer product_bound;  // matrix_count * T^(2N+1)
    Rational kappa;         // max_d cumulative(d) / d^N
};

CensusReport census(EndRing ring, int N, int r, std::int64_t max_degree, long torsion_bound,
                    std::uint64_t ceiling = kDefaultEnumerationCeiling, unsigned shards = 1);

}  // namespace hb
