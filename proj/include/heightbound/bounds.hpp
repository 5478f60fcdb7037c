#pragma once

#include <optional>
#include <string>
#include <vector>

#include "heightbound/bounded_real.hpp"
#include "heightbound/const_expr.hpp"
#include "heightbound/rational.hpp"

namespace hb {

// Exact rational value of an Upper bound, for use as a formula input. Every
// formula below is increasing in its height arguments, so other directions
// are rejected.
ConstExpr upper_input(const BoundedReal& value, const std::string& name);

struct NamedValue {
    std::string name;
    BoundedReal value;
};

// Constants of the height bound for curves in E^N, N >= 3.
struct CConstantExprs {
    ConstExpr c1, c2, c3;
};
CConstantExprs constants_CN_expr(long N, const ConstExpr& hw);
struct CConstants {
    BoundedReal c1, c2, c3;
};
CConstants constants_CN(long N, const BoundedReal& hw, long precision = kDefaultPrecision);

// Constants of the height bound for transverse curves in E^2.
struct DConstantExprs {
    ConstExpr d1, d2, d3;
};
DConstantExprs constants_D_expr(const ConstExpr& hw);
struct DConstants {
    BoundedReal d1, d2, d3;
};
DConstants constants_D(const BoundedReal& hw, long precision = kDefaultPrecision);
// D2 = d2_hw_coefficient() * hW + d2_constant().
ConstExpr d2_hw_coefficient();
ConstExpr d2_constant();
// D3 = d3_hw_coefficient() * hW + d3_constant().
Rational d3_hw_coefficient();
ConstExpr d3_constant();

struct BoundReport {
    std::string theorem;
    std::vector<std::pair<std::string, std::string>> inputs;
    std::vector<NamedValue> intermediates;
    BoundedReal bound;  // always Upper
    std::vector<std::string> notes;
};

// D1 h(C) deg(C)^2 + D2(E) deg(C)^3 + D3(E).
ConstExpr transverse_e2_expr(const ConstExpr& hc, const Integer& degc, const ConstExpr& hw);
BoundReport bound_transverse_E2(const BoundedReal& hc, const Integer& degc, const BoundedReal& hw,
                                long precision = kDefaultPrecision);

// C1(N) h(C) deg(C)^(N-1) + C2(E,N) deg(C)^N + C3(E,N); N >= 3.
ConstExpr weak_transverse_en_expr(long N, const ConstExpr& hc, const Integer& degc, const ConstExpr& hw);
BoundReport bound_weaktransverse_EN(long N, const BoundedReal& hc, const Integer& degc, const BoundedReal& hw,
                                    long precision = kDefaultPrecision);

// Curves C_n in E x E: x1^n = y2 on y^2 = x^3 + x - 1 (First), and
// x1^n + 1 = y2 on y^2 = x^3 - x - 2 (Second).
enum class Family { First, Second };
std::string to_string(Family f);
Family parse_family(const std::string& text);

// Upper bound for deg C_n from the intersection product
// (n l + m)(3 l)(3 m)(l + m) in the Chow ring of P^2 x P^2.
Integer family_degree_upper(Family family, long n);

struct FamilyInvariants {
    Family family;
    long n;
    Integer deg_upper;
    ConstExpr mu_upper_expr;
    ConstExpr h_upper_expr;
    BoundedReal mu_upper;
    BoundedReal h_upper;
    std::vector<std::pair<std::string, ConstExpr>> chain;  // per-coordinate steps
};

// Degree, essential-minimum and height bounds for C_n. Only the second family
// carries a height chain; the first raises DomainError.
FamilyInvariants family_invariants(Family family, long n, long precision = kDefaultPrecision);

enum class FamilyVerdict {
    Verified,            // composed bound < closed form
    ExceedsClosedForm,   // composed bound > closed form
    Indeterminate,       // not separated at the available precision
    ClosedFormOnly,      // no composition available for this family
};
std::string to_string(FamilyVerdict v);

struct FamilyBoundReport {
    Family family;
    long n;
    Rational closed_form_coefficient;  // closed form = coefficient * (n+1)^3
    BoundedReal closed_form;           // exact value rounded upward
    std::optional<BoundReport> composed;
    std::optional<BoundedReal> composed_lower;
    std::optional<BoundedReal> coefficient_upper;  // composed / (n+1)^3
    std::optional<BoundedReal> coefficient_lower;
    FamilyVerdict verdict = FamilyVerdict::ClosedFormOnly;
    long precision = 0;  // precision that settled the verdict
    // Set when the composed bound exceeds the closed form. Reported, never
    // treated as a failure.
    std::optional<std::string> discrepancy;
};

// Composes family_invariants with the E^2 bound at the family's own h_W and
// compares with the published closed form. Precision is doubled (up to
// 8192 bits) until the two sides separate.
FamilyBoundReport family_final_bound(Family family, long n, long precision = kDefaultPrecision);

struct ExponentEntry {
    std::string bound;     // quantity being bounded, e.g. "hhat(C cap Gamma)"
    std::string factor;    // base of the power, e.g. "h(C)+deg C"
    Rational exponent;     // eta-free part
    Rational eta_coefficient;
};

struct ExponentParams {
    std::optional<long> N, r, t, dim;
};

// Identifiers accepted by exponents().
std::vector<std::string> exponent_theorems();
// Exact exponents of the non-effective bounds; DomainError when a parameter is
// missing or outside the admissible range (the message names the inequality).
std::vector<ExponentEntry> exponents(const std::string& theorem, const ExponentParams& params);

std::string dobrowolski_lehmer_info();

}  // namespace hb
