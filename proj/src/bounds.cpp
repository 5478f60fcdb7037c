#include "heightbound/bounds.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "heightbound/chow.hpp"
#include "heightbound/elliptic.hpp"
#include "heightbound/errors.hpp"

namespace hb {

namespace {

ConstExpr integer_expr(const Integer& z) { return ConstExpr(Rational(z)); }

Rational ipow(long base, long exponent) { return Rational(pow_integer(Integer(base), static_cast<unsigned long>(exponent))); }

BoundedReal upper(const ConstExpr& e, long precision) { return eval_const(e, Rounding::Upper, precision); }

std::string decimal(const ConstExpr& e, long precision) { return upper(e, precision).to_decimal(); }

void require_positive_degree(const Integer& deg) {
    if (deg < 1) throw DomainError("degree must satisfy deg >= 1");
}

}  // namespace

ConstExpr upper_input(const BoundedReal& value, const std::string& name) {
    if (value.direction() != Rounding::Upper)
        throw DomainError(name + " must be an upper bound (direction UPPER), got " + to_string(value.direction()));
    Rational q = value.value().to_rational();
    if (q < 0) throw DomainError(name + " must be nonnegative");
    return ConstExpr(q);
}

CConstantExprs constants_CN_expr(long N, const ConstExpr& hw) {
    if (N < 2) throw DomainError("constants C_i(N) need N >= 2");
    if (N > 64) throw DomainError("constants C_i(N) implemented for N <= 64");
    Integer nfact = 1;
    for (long i = 2; i <= N; ++i) nfact *= i;
    Rational head = Rational(pow_integer(nfact, static_cast<unsigned long>(N))) * ipow(N, 3 * N - 2);
    Rational inner = ipow(3, N * N + N + 1) * ipow(2, 2 * N * N + 3 * N - 1) * ipow(N + 1, N + 1);
    ConstExpr omegas = ConstExpr::unit_ball_volume(N) * ConstExpr::unit_ball_volume(N - 1);
    ConstExpr c1 = ConstExpr(head) * (ConstExpr(inner) / omegas.pow(2)).pow(N - 1);
    ConstExpr log2 = ConstExpr::log(2), log3 = ConstExpr::log(3);
    ConstExpr c2 = c1 * (ConstExpr(ipow(3, N) / 2) * log2 + ConstExpr(Rational(12 * N)) * log2 +
                         ConstExpr(Rational(N)) * log3 + ConstExpr(Rational(6 * N)) * hw);
    ConstExpr c3 = ConstExpr(make_rational(7 * N * N, 6)) * log2 + ConstExpr(make_rational(N * N, 2)) * hw;
    return {c1, c2, c3};
}

CConstants constants_CN(long N, const BoundedReal& hw, long precision) {
    CConstantExprs e = constants_CN_expr(N, upper_input(hw, "hW"));
    return {upper(e.c1, precision), upper(e.c2, precision), upper(e.c3, precision)};
}

namespace {

ConstExpr d_prefactor() { return ConstExpr(ipow(2, 62) * ipow(3, 41)) / ConstExpr::pi_pow(8); }

}  // namespace

ConstExpr d2_hw_coefficient() { return d_prefactor() * ConstExpr(30); }

ConstExpr d2_constant() {
    return d_prefactor() * (ConstExpr(71) * ConstExpr::log(2) + ConstExpr(4) * ConstExpr::log(3));
}

Rational d3_hw_coefficient() { return make_rational(9, 2); }

ConstExpr d3_constant() { return ConstExpr(make_rational(21, 2)) * ConstExpr::log(2); }

DConstantExprs constants_D_expr(const ConstExpr& hw) {
    ConstExpr d1 = ConstExpr(ipow(2, 64) * ipow(3, 40)) / ConstExpr::pi_pow(8);
    ConstExpr d2 = d_prefactor() * (ConstExpr(71) * ConstExpr::log(2) + ConstExpr(4) * ConstExpr::log(3) +
                                     ConstExpr(30) * hw);
    ConstExpr d3 = ConstExpr(d3_hw_coefficient()) * hw + d3_constant();
    return {d1, d2, d3};
}

DConstants constants_D(const BoundedReal& hw, long precision) {
    DConstantExprs e = constants_D_expr(upper_input(hw, "hW"));
    return {upper(e.d1, precision), upper(e.d2, precision), upper(e.d3, precision)};
}

ConstExpr transverse_e2_expr(const ConstExpr& hc, const Integer& degc, const ConstExpr& hw) {
    require_positive_degree(degc);
    DConstantExprs d = constants_D_expr(hw);
    ConstExpr deg = integer_expr(degc);
    return d.d1 * hc * deg.pow(2) + d.d2 * deg.pow(3) + d.d3;
}

namespace {

BoundReport e2_report(const ConstExpr& hc, const Integer& degc, const ConstExpr& hw, long precision) {
    require_positive_degree(degc);
    DConstantExprs d = constants_D_expr(hw);
    ConstExpr deg = integer_expr(degc);
    ConstExpr t1 = d.d1 * hc * deg.pow(2);
    ConstExpr t2 = d.d2 * deg.pow(3);
    BoundReport r{"transverse-e2",
                  {{"h(C)", decimal(hc, precision)}, {"deg C", degc.get_str()}, {"hW(E)", decimal(hw, precision)}},
                  {{"D1", upper(d.d1, precision)},
                   {"D2(E)", upper(d.d2, precision)},
                   {"D3(E)", upper(d.d3, precision)},
                   {"D1*h(C)*deg(C)^2", upper(t1, precision)},
                   {"D2(E)*deg(C)^3", upper(t2, precision)}},
                  upper(t1 + t2 + d.d3, precision),
                  {"height bound for the rational points of a transverse curve in E^2, E without CM, rank one"}};
    return r;
}

}  // namespace

BoundReport bound_transverse_E2(const BoundedReal& hc, const Integer& degc, const BoundedReal& hw, long precision) {
    return e2_report(upper_input(hc, "h(C)"), degc, upper_input(hw, "hW"), precision);
}

ConstExpr weak_transverse_en_expr(long N, const ConstExpr& hc, const Integer& degc, const ConstExpr& hw) {
    if (N < 3) throw DomainError("weak-transverse bound needs N >= 3; use the E^2 bound for N = 2");
    require_positive_degree(degc);
    CConstantExprs c = constants_CN_expr(N, hw);
    ConstExpr deg = integer_expr(degc);
    return c.c1 * hc * deg.pow(N - 1) + c.c2 * deg.pow(N) + c.c3;
}

BoundReport bound_weaktransverse_EN(long N, const BoundedReal& hc, const Integer& degc, const BoundedReal& hw,
                                    long precision) {
    if (N < 3) throw DomainError("weak-transverse bound needs N >= 3; use the E^2 bound for N = 2");
    require_positive_degree(degc);
    ConstExpr h = upper_input(hc, "h(C)"), w = upper_input(hw, "hW");
    CConstantExprs c = constants_CN_expr(N, w);
    ConstExpr deg = integer_expr(degc);
    ConstExpr t1 = c.c1 * h * deg.pow(N - 1);
    ConstExpr t2 = c.c2 * deg.pow(N);
    return {"weak-transverse-en",
            {{"N", std::to_string(N)},
             {"h(C)", decimal(h, precision)},
             {"deg C", degc.get_str()},
             {"hW(E)", decimal(w, precision)}},
            {{"C1(N)", upper(c.c1, precision)},
             {"C2(E,N)", upper(c.c2, precision)},
             {"C3(E,N)", upper(c.c3, precision)},
             {"C1(N)*h(C)*deg(C)^(N-1)", upper(t1, precision)},
             {"C2(E,N)*deg(C)^N", upper(t2, precision)}},
            upper(t1 + t2 + c.c3, precision),
            {"height bound for the points of a weak-transverse curve in E^N lying in a rank-one subgroup, E without CM"}};
}

std::string to_string(Family f) { return f == Family::First ? "f1" : "f2"; }

Family parse_family(const std::string& text) {
    if (text == "f1" || text == "F1") return Family::First;
    if (text == "f2" || text == "F2") return Family::Second;
    throw ParseError("unknown family '" + text + "' (expected f1 or f2)");
}

Integer family_degree_upper(Family, long n) {
    if (n < 1) throw DomainError("family parameter must satisfy n >= 1");
    std::vector<int> p2xp2 = {2, 2};
    ChowClass family_eq = ChowClass::hypersurface(p2xp2, {Integer(n), Integer(1)});
    ChowClass weierstrass1 = ChowClass::hypersurface(p2xp2, {Integer(3), Integer(0)});
    ChowClass weierstrass2 = ChowClass::hypersurface(p2xp2, {Integer(0), Integer(3)});
    ChowClass hyperplane = ChowClass::hypersurface(p2xp2, {Integer(1), Integer(1)});
    return top_coefficient(chow_mul({family_eq, weierstrass1, weierstrass2, hyperplane}));
}

FamilyInvariants family_invariants(Family family, long n, long precision) {
    if (n < 1) throw DomainError("family parameter must satisfy n >= 1");
    if (family == Family::First)
        throw DomainError("no height chain is available for the family x1^n = y2; only its degree bound is known");
    Integer deg = family_degree_upper(family, n);
    ConstExpr half_log6 = ConstExpr(Rational(1, 2)) * ConstExpr::log(6);
    ConstExpr log24 = ConstExpr::log(24);
    ConstExpr h2_excess = ConstExpr(Rational(1, 2)) * ConstExpr::log(3);  // (1/2) log(m+1), m = 2
    ConstExpr h_zeta = ConstExpr(0);
    ConstExpr h_y2 = half_log6;
    ConstExpr h_x1 = log24 / ConstExpr(Rational(2 * n));
    ConstExpr h_y1 = log24 / ConstExpr(Rational(n)) + half_log6;
    ConstExpr h_x1y1 = h_x1 + h_y1;
    ConstExpr h_zy2 = h_zeta + h_y2;
    ConstExpr h2_x1y1 = h_x1y1 + h2_excess;
    ConstExpr h2_zy2 = h_zy2 + h2_excess;
    ConstExpr mu = h2_x1y1 + h2_zy2;
    ConstExpr h = ConstExpr(Rational(2)) * integer_expr(deg) * mu;  // Zhang, dim C = 1
    FamilyInvariants out{family,
                         n,
                         deg,
                         mu,
                         h,
                         upper(mu, precision),
                         upper(h, precision),
                         {{"h(zeta)", h_zeta},
                          {"h(y2)", h_y2},
                          {"h(x1)", h_x1},
                          {"h(y1)", h_y1},
                          {"h(x1,y1)", h_x1y1},
                          {"h(zeta,y2)", h_zy2},
                          {"h2(x1,y1)", h2_x1y1},
                          {"h2(zeta,y2)", h2_zy2},
                          {"mu(C_n)", mu},
                          {"h(C_n)", h}}};
    return out;
}

std::string to_string(FamilyVerdict v) {
    switch (v) {
        case FamilyVerdict::Verified: return "verified";
        case FamilyVerdict::ExceedsClosedForm: return "exceeds-closed-form";
        case FamilyVerdict::Indeterminate: return "indeterminate";
        case FamilyVerdict::ClosedFormOnly: return "closed-form-only";
    }
    return "?";
}

FamilyBoundReport family_final_bound(Family family, long n, long precision) {
    if (n < 1) throw DomainError("family parameter must satisfy n >= 1");
    Rational coefficient = family == Family::First ? Rational(8253) : Rational(9689);
    coefficient *= Rational(pow_integer(Integer(10), 35));
    Integer cube = pow_integer(Integer(n + 1), 3);
    Rational closed = coefficient * Rational(cube);
    FamilyBoundReport out{family, n, coefficient, BoundedReal::from_rational(closed, Rounding::Upper, precision),
                          {}, {}, {}, {}, FamilyVerdict::ClosedFormOnly, precision, {}};
    if (family == Family::First) return out;

    EllipticCurve e = EllipticCurve::validate(-1, -2);
    ConstExpr hw = weierstrass_height_expr(e);
    for (long prec = precision;; prec *= 2) {
        FamilyInvariants inv = family_invariants(family, n, prec);
        ConstExpr composed = transverse_e2_expr(inv.h_upper_expr, inv.deg_upper, hw);
        BoundReport report = e2_report(inv.h_upper_expr, inv.deg_upper, hw, prec);
        report.theorem = "family-final-bound";
        report.inputs.insert(report.inputs.begin(), {{"family", to_string(family)}, {"n", std::to_string(n)}});
        report.intermediates.insert(report.intermediates.begin(),
                                    {{"deg C_n upper", BoundedReal::from_rational(Rational(inv.deg_upper),
                                                                                  Rounding::Upper, prec)},
                                     {"mu(C_n) upper", inv.mu_upper},
                                     {"h(C_n) upper", inv.h_upper}});
        BoundedReal lo = eval_const(composed, Rounding::Lower, prec);
        ConstExpr per_cube = composed / integer_expr(cube);
        out.coefficient_upper = upper(per_cube, prec);
        out.coefficient_lower = eval_const(per_cube, Rounding::Lower, prec);
        out.closed_form = BoundedReal::from_rational(closed, Rounding::Upper, prec);
        out.precision = prec;
        Rational up_q = report.bound.value().to_rational(), lo_q = lo.value().to_rational();
        out.composed = std::move(report);
        out.composed_lower = std::move(lo);
        if (up_q < closed) {
            out.verdict = FamilyVerdict::Verified;
            return out;
        }
        if (lo_q > closed) {
            out.verdict = FamilyVerdict::ExceedsClosedForm;
            out.composed->notes.push_back("the composed bound exceeds the published closed form at this n");
            out.discrepancy = "composed coefficient " + out.coefficient_lower->to_decimal(6) + " > closed-form coefficient " +
                              BoundedReal::from_rational(coefficient, Rounding::Upper).to_decimal(4) + " at n = " + std::to_string(n) +
                              "; the closed form is kept as published";
            return out;
        }
        if (prec >= 8192) {
            out.verdict = FamilyVerdict::Indeterminate;
            return out;
        }
    }
}

namespace {

Rational Q(long p, long q = 1) { return make_rational(p, q); }

struct Need {
    const ExponentParams& p;
    const std::string& id;
    long get(const std::optional<long>& v, const char* name) const {
        if (!v) throw DomainError(id + ": parameter " + name + " is required");
        return *v;
    }
};

void check(bool ok, const std::string& id, const std::string& inequality) {
    if (!ok) throw DomainError(id + ": parameters violate " + inequality);
}

using Builder = std::function<std::vector<ExponentEntry>(const ExponentParams&, const std::string&)>;

const std::map<std::string, Builder>& builders() {
    static const std::map<std::string, Builder> table = {
        {"rel-codim-one",
         [](const ExponentParams& p, const std::string& id) {
             Need need{p, id};
             long N = need.get(p.N, "N"), d = need.get(p.dim, "dim");
             check(d >= 1, id, "dim >= 1");
             check(N - d - 1 >= 1, id, "N - dim - 1 >= 1");
             Rational den = Q(N - d - 1);
             std::string hd = "h(V)+deg V", kt = "[k_tor(V):k_tor]", both = "(h(V)+deg V)*[k_tor(V):k_tor]";
             return std::vector<ExponentEntry>{
                 {"h(Y), Y not a translate", hd, Q(N - 1) / den, 1},
                 {"deg Y, Y not a translate", "deg V", 1, 0},
                 {"deg Y, Y not a translate", hd, Q(d) / den, 1},
                 {"h(Y), Y a translate", hd, Q(N - 2) / den, 1},
                 {"h(Y), Y a translate", kt, Q(d - 1) / den, 1},
                 {"deg Y, Y a translate", "deg V", 1, 0},
                 {"deg Y, Y a translate", both, Q(d - 1) / den, 1},
                 {"hhat(Y), Y a point", hd, Q(N - 1) / den, 1},
                 {"hhat(Y), Y a point", kt, Q(d) / den, 1},
                 {"[Q(Y):Q], Y a point", both, Q((d + 1) * (N - 1)) / (den * den), 1},
             };
         }},
        {"ml-rank-one",
         [](const ExponentParams& p, const std::string& id) {
             long N = Need{p, id}.get(p.N, "N");
             check(N >= 3, id, "N >= 3");
             return std::vector<ExponentEntry>{
                 {"hhat(C cap Gamma)", "h(C)+deg C", Q(N - 1, N - 2), 1},
                 {"hhat(C cap Gamma)", "[k_tor(C):k_tor]", Q(1, N - 2), 1},
             };
         }},
        {"ml-rank-one-e2",
         [](const ExponentParams& p, const std::string& id) {
             if (p.N) check(*p.N == 2, id, "N = 2");
             return std::vector<ExponentEntry>{
                 {"hhat(C cap Gamma)", "[k_tor(C x g):k_tor]", 1, 1},
                 {"hhat(C cap Gamma)", "h(C)+(hhat(g)+1) deg C", 2, 1},
             };
         }},
        {"ml-small-rank",
         [](const ExponentParams& p, const std::string& id) {
             Need need{p, id};
             long N = need.get(p.N, "N"), t = need.get(p.t, "t");
             check(t >= 1, id, "t >= 1");
             check(2 * t < N, id, "t < N/2");
             return std::vector<ExponentEntry>{
                 {"hhat(C cap Gamma)", "h(C)+deg C", Q(N - t, N - 2 * t), 1},
                 {"hhat(C cap Gamma)", "[k_tor(C):k_tor]", Q(t, N - 2 * t), 1},
             };
         }},
        {"ml-transverse",
         [](const ExponentParams& p, const std::string& id) {
             Need need{p, id};
             long N = need.get(p.N, "N"), t = need.get(p.t, "t");
             check(t >= 1, id, "t >= 1");
             check(t <= N - 1, id, "t <= N - 1");
             return std::vector<ExponentEntry>{
                 {"hhat(C cap Gamma)", "[k_tor(C x g):k_tor]", Q(t, N - t), 1},
                 {"hhat(C cap Gamma)", "h(C)+(hhat(g)+1) deg C", Q(N, N - t), 1},
             };
         }},
        {"subgroup-intersection",
         [](const ExponentParams& p, const std::string& id) {
             Need need{p, id};
             long N = need.get(p.N, "N"), r = need.get(p.r, "r");
             check(2 * r > N, id, "N/2 < r");
             check(r < N, id, "r < N");
             std::string both = "(h(C)+deg C)*[k_tor(C):k_tor]", kd = "[k(C):k]*deg C";
             Rational c1 = Q(r * N * (2 * N + 1), 2 * (r - 1));
             Rational c2 = Q(r * (N - r) * (2 * r * N + 2 * r - 2 + 2 * N * N - N), 2 * (2 * r - N) * (r - 1));
             return std::vector<ExponentEntry>{
                 {"M_r", both, Q(r * (N - r) * N, 2 * r - N), 1},
                 {"deg H_i", both, Q(r * (N - r) * (N + 2 * r - 2), 2 * (r - 1) * (2 * r - N)), 1},
                 {"deg H_i", kd, Q(N * r, 2 * (r - 1)), 1},
                 {"hhat(Y0)", "h(C)+deg C", Q(r, 2 * r - N), 1},
                 {"hhat(Y0)", "[k_tor(C):k_tor]", Q(N - r, 2 * r - N), 1},
                 {"[k(Y0):Q]", kd, Q(r, r - 1), 1},
                 {"[k(Y0):Q]", both, Q(r * (N - r), (2 * r - N) * (r - 1)), 1},
                 {"S_r", "[k(C):k]", c1, 0},
                 {"S_r", "deg C", c1 + 1, 1},
                 {"S_r", both, c2, 1},
             };
         }},
        {"count-weak-rank-one",
         [](const ExponentParams& p, const std::string& id) {
             long N = Need{p, id}.get(p.N, "N");
             check(N > 2, id, "N > 2");
             return std::vector<ExponentEntry>{
                 {"#(C cap Gamma minus torsion)", "(h(C)+deg C)*[k_tor(C):k_tor]",
                  Q((N - 1) * (4 * N * N - N - 4), 2 * (N - 2) * (N - 2)), 1},
                 {"#(C cap Gamma minus torsion)", "deg C", Q(2 * N * N * N - N * N + N - 4, 2 * (N - 2)), 1},
                 {"#(C cap Gamma minus torsion)", "[k(C):k]", Q(N * (N - 1) * (2 * N + 1), 2 * (N - 2)), 1},
             };
         }},
        {"count-e2-rank-one",
         [](const ExponentParams& p, const std::string& id) {
             if (p.N) check(*p.N == 2, id, "N = 2");
             return std::vector<ExponentEntry>{
                 {"#(C cap Gamma minus torsion)", "[k_tor(C x g):k_tor]*(h(C)+(hhat(g)+1) deg C)", 29, 1},
                 {"#(C cap Gamma minus torsion)", "deg C", 22, 1},
                 {"#(C cap Gamma minus torsion)", "[k(C x g):k]", 21, 1},
             };
         }},
        {"count-weak-small-rank",
         [](const ExponentParams& p, const std::string& id) {
             Need need{p, id};
             long N = need.get(p.N, "N"), t = need.get(p.t, "t");
             check(t >= 1, id, "t >= 1");
             check(2 * t < N, id, "t < N/2");
             Rational kexp = Q(N * (2 * N + 1) * (N - t), 2 * (N - t - 1));
             return std::vector<ExponentEntry>{
                 {"#(C cap Gamma minus torsion)", "(h(C)+deg C)*[k_tor(C):k_tor]",
                  Q(t * (N - t) * (4 * N * N - 2 * N * t + N - 2 * t - 2), 2 * (N - 2 * t) * (N - t - 1)), 1},
                 {"#(C cap Gamma minus torsion)", "deg C", 1 + kexp, 1},
                 {"#(C cap Gamma minus torsion)", "[k(C):k]", kexp, 1},
             };
         }},
        {"count-transverse",
         [](const ExponentParams& p, const std::string& id) {
             Need need{p, id};
             long N = need.get(p.N, "N"), t = need.get(p.t, "t");
             check(N >= 2, id, "N >= 2");
             check(t >= 1, id, "t >= 1");
             check(t <= N - 1, id, "t <= N - 1");
             Rational kexp = Q((N + t) * N * (2 * N + 2 * t + 1), 2 * (N - 1));
             return std::vector<ExponentEntry>{
                 {"#(C cap Gamma minus torsion)", "deg C", 1 + kexp, 1},
                 {"#(C cap Gamma minus torsion)", "[k(C x g):k]", kexp, 1},
                 {"#(C cap Gamma minus torsion)", "[k_tor(C x g):k_tor]*(h(C)+(hhat(g)+1) deg C)",
                  Q(N * t * (4 * N * N + 2 * t * t + 6 * N * t + N - t - 2), 2 * (N - t) * (N - 1)), 1},
             };
         }},
    };
    return table;
}

}  // namespace

std::vector<std::string> exponent_theorems() {
    std::vector<std::string> ids;
    for (const auto& [id, _] : builders()) ids.push_back(id);
    return ids;
}

std::vector<ExponentEntry> exponents(const std::string& theorem, const ExponentParams& params) {
    auto it = builders().find(theorem);
    if (it == builders().end()) throw DomainError("unknown theorem id '" + theorem + "'");
    for (const auto* v : {&params.N, &params.r, &params.t, &params.dim})
        if (*v && **v > 100000) throw DomainError(theorem + ": parameters must be at most 100000");
    return it->second(params, theorem);
}

std::string dobrowolski_lehmer_info() {
    return "Lower bounds for heights of non-torsion points (Lehmer-type and Dobrowolski-type estimates) are "
           "not computed by this library. Every bound it evaluates is an upper bound.";
}

}  // namespace hb
