#include "heightbound/heights.hpp"

#include <array>
#include <cmath>

namespace hb {

namespace {

Integer gcd(const Integer& a, const Integer& b) {
    Integer g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

Integer lcm(const Integer& a, const Integer& b) {
    Integer l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return l;
}

BoundedReal log_integer(const Integer& n, Rounding direction, long precision) {
    BigFloat v = BigFloat::from_integer(n, precision + 16, to_mpfr(direction));
    BigFloat out(precision);
    mpfr_log(out.get(), v.get(), to_mpfr(direction));
    return {std::move(out), direction};
}

}  // namespace

ProjPoint::ProjPoint(const std::vector<Rational>& coords) {
    if (coords.empty()) throw DomainError("projective point needs at least one coordinate");
    Integer den = 1;
    for (const auto& c : coords) den = lcm(den, c.get_den());
    Integer content = 0;
    coords_.reserve(coords.size());
    for (const auto& c : coords) {
        Integer v = c.get_num() * (den / c.get_den());
        content = gcd(content, v);
        coords_.push_back(std::move(v));
    }
    if (content == 0) throw DomainError("projective point with all coordinates zero");
    for (auto& v : coords_) v /= content;
}

std::string to_string(HeightKind kind) {
    switch (kind) {
        case HeightKind::Weil: return "weil";
        case HeightKind::H2: return "h2";
        case HeightKind::Canonical: return "canonical";
        case HeightKind::EssentialMinUpper: return "essential_min_upper";
    }
    return "weil";
}

Integer max_abs_coordinate(const ProjPoint& p) {
    Integer m = 0;
    for (const auto& c : p.coords()) m = std::max(m, Integer(abs(c)));
    return m;
}

Integer sum_of_squares(const ProjPoint& p) {
    Integer s = 0;
    for (const auto& c : p.coords()) s += c * c;
    return s;
}

HeightValue weil_height(const ProjPoint& p, Rounding direction, long precision) {
    return {HeightKind::Weil, log_integer(max_abs_coordinate(p), direction, precision)};
}

HeightValue modified_height_h2(const ProjPoint& p, Rounding direction, long precision) {
    BoundedReal l = log_integer(sum_of_squares(p), direction, precision);
    return {HeightKind::H2, scale(l, Rational(1, 2))};
}

// ---------------------------------------------------------------------------
// Canonical height
//
// On an integral model, x(2Q) = phi(X,Z)/psi(X,Z) with
//   phi = X^4 - 2a X^2 Z^2 - 8b X Z^3 + a^2 Z^4,  psi = 4 X^3 Z + 4a X Z^3 + 4b Z^4.
// Writing (X_k : Z_k) for the coprime representative of x(2^k P) and
// g_k = gcd(phi, psi) at step k,
//   h(x(2^k P)) = 4 h(x(2^(k-1) P)) + Phi_k - log g_k,
// where Phi_k = log max(|phi|, |psi|) evaluated at the real point normalised to
// max(|X|,|Z|) = 1. Hence
//   hhat = h(x(P)) + sum_k 4^-k (Phi_k - log g_k).
// g_k divides Res(phi, psi), so it is tracked exactly modulo a power of the
// resultant; Phi_k is evaluated in floating point. Each term lies in
// [-log C, log U] (see doubling_bounds), which bounds the tail.

namespace {

struct IntegralModel {
    Integer a, b;
    Integer scale;  // x_integral = scale^2 * x
};

IntegralModel integral_model(const EllipticCurve& e) {
    Integer u = e.a().get_den() * e.b().get_den();
    Rational a = e.a() * Rational(pow_integer(u, 4));
    Rational b = e.b() * Rational(pow_integer(u, 6));
    return {a.get_num(), b.get_num(), u};
}

using Form = std::array<Integer, 5>;  // coefficients of X^4, X^3 Z, ..., Z^4

Form phi_form(const IntegralModel& m) { return {1, 0, -2 * m.a, -8 * m.b, m.a * m.a}; }
Form psi_form(const IntegralModel& m) { return {0, 4, 0, 4 * m.a, 4 * m.b}; }

// 8x8 Sylvester matrix; row i < 4 holds phi shifted by i, row i >= 4 psi shifted by i-4.
std::array<std::array<Rational, 8>, 8> sylvester(const Form& f, const Form& g) {
    std::array<std::array<Rational, 8>, 8> s{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 5; ++j) {
            s[i][i + j] = f[j];
            s[4 + i][i + j] = g[j];
        }
    return s;
}

Rational determinant(std::array<std::array<Rational, 8>, 8> m) {
    Rational det = 1;
    for (int c = 0; c < 8; ++c) {
        int pivot = -1;
        for (int r = c; r < 8; ++r)
            if (m[r][c] != 0) {
                pivot = r;
                break;
            }
        if (pivot < 0) return 0;
        if (pivot != c) {
            std::swap(m[pivot], m[c]);
            det = -det;
        }
        det *= m[c][c];
        for (int r = c + 1; r < 8; ++r) {
            if (m[r][c] == 0) continue;
            Rational f = m[r][c] / m[c][c];
            for (int k = c; k < 8; ++k) m[r][k] -= f * m[c][k];
        }
    }
    return det;
}

// Solves coeffs * S = rhs where S is the Sylvester matrix (rows are the
// shifted forms), i.e. finds f, g of degree 3 with f phi + g psi = rhs.
std::array<Rational, 8> solve_bezout(const std::array<std::array<Rational, 8>, 8>& s, const std::array<Rational, 8>& rhs) {
    // Transpose: unknown c with S^T c = rhs.
    std::array<std::array<Rational, 9>, 8> aug{};
    for (int i = 0; i < 8; ++i) {
        for (int j = 0; j < 8; ++j) aug[i][j] = s[j][i];
        aug[i][8] = rhs[i];
    }
    for (int c = 0; c < 8; ++c) {
        int pivot = c;
        while (aug[pivot][c] == 0) ++pivot;
        std::swap(aug[pivot], aug[c]);
        for (int r = 0; r < 8; ++r) {
            if (r == c || aug[r][c] == 0) continue;
            Rational f = aug[r][c] / aug[c][c];
            for (int k = c; k < 9; ++k) aug[r][k] -= f * aug[c][k];
        }
    }
    std::array<Rational, 8> out;
    for (int i = 0; i < 8; ++i) out[i] = aug[i][8] / aug[i][i];
    return out;
}

Integer eval_form_mod(const Form& f, const Integer& x, const Integer& z, const Integer& mod) {
    std::array<Integer, 5> xp, zp;
    xp[0] = 1;
    zp[0] = 1;
    for (int i = 1; i < 5; ++i) {
        xp[i] = (xp[i - 1] * x) % mod;
        zp[i] = (zp[i - 1] * z) % mod;
    }
    Integer acc = 0;
    for (int j = 0; j < 5; ++j) acc = (acc + f[j] * xp[4 - j] * zp[j]) % mod;
    if (acc < 0) acc += mod;
    return acc;
}

void eval_form_real(const Form& f, const BigFloat& x, const BigFloat& z, BigFloat& out) {
    const long prec = out.precision();
    BigFloat term(prec), c(prec);
    mpfr_set_zero(out.get(), 1);
    for (int j = 0; j < 5; ++j) {
        if (f[j] == 0) continue;
        mpfr_set_z(c.get(), f[j].get_mpz_t(), MPFR_RNDN);
        mpfr_pow_ui(term.get(), x.get(), static_cast<unsigned long>(4 - j), MPFR_RNDN);
        mpfr_mul(c.get(), c.get(), term.get(), MPFR_RNDN);
        mpfr_pow_ui(term.get(), z.get(), static_cast<unsigned long>(j), MPFR_RNDN);
        mpfr_mul(c.get(), c.get(), term.get(), MPFR_RNDN);
        mpfr_add(out.get(), out.get(), c.get(), MPFR_RNDN);
    }
}

struct SeriesData {
    IntegralModel model;
    Form phi, psi;
    Integer resultant;
    Integer bezout_c_num, bezout_c_den;  // C as a rational
    Integer coeff_u;                      // U
};

SeriesData series_data(const EllipticCurve& e) {
    SeriesData d{integral_model(e), {}, {}, 0, 0, 1, 0};
    d.phi = phi_form(d.model);
    d.psi = psi_form(d.model);
    auto s = sylvester(d.phi, d.psi);
    Rational res = determinant(s);
    d.resultant = res.get_num();
    Rational c_max = 0;
    for (int which = 0; which < 2; ++which) {
        std::array<Rational, 8> rhs{};
        rhs[which == 0 ? 0 : 7] = res;  // R X^7 or R Z^7
        auto coeffs = solve_bezout(s, rhs);
        Rational c_sum = 0;
        for (const auto& v : coeffs) c_sum += abs(v);
        c_max = std::max(c_max, c_sum);
    }
    d.bezout_c_num = c_max.get_num();
    d.bezout_c_den = c_max.get_den();
    Integer u_phi = 0, u_psi = 0;
    for (int j = 0; j < 5; ++j) {
        u_phi += abs(d.phi[j]);
        u_psi += abs(d.psi[j]);
    }
    d.coeff_u = std::max(u_phi, u_psi);
    return d;
}

BoundedReal delta_upper(const SeriesData& d, long precision) {
    ConstExpr log_c = ConstExpr::log(make_rational(d.bezout_c_num, d.bezout_c_den));
    ConstExpr log_u = ConstExpr::log(Rational(d.coeff_u));
    BoundedReal a = eval_const(log_c, Rounding::Upper, precision);
    BoundedReal b = eval_const(log_u, Rounding::Upper, precision);
    const BoundedReal& m = compare(a.value(), b.value()) >= 0 ? a : b;
    if (m.value().sign() < 0) return BoundedReal::from_rational(0, Rounding::Upper, precision);
    return m;
}

// hhat from n telescoping terms at the given working precision.
BigFloat telescoped(const SeriesData& d, const Integer& x0, const Integer& z0, int n, long prec) {
    BigFloat sum(prec), phi_v(prec), psi_v(prec), mag(prec), t(prec);
    {
        Integer m0 = std::max(Integer(abs(x0)), Integer(abs(z0)));
        BigFloat m = BigFloat::from_integer(m0, prec, MPFR_RNDN);
        mpfr_log(sum.get(), m.get(), MPFR_RNDN);
    }
    BigFloat xr = BigFloat::from_integer(x0, prec, MPFR_RNDN);
    BigFloat zr = BigFloat::from_integer(z0, prec, MPFR_RNDN);
    {
        BigFloat m(prec);
        mpfr_abs(m.get(), xr.get(), MPFR_RNDN);
        mpfr_abs(t.get(), zr.get(), MPFR_RNDN);
        mpfr_max(m.get(), m.get(), t.get(), MPFR_RNDN);
        mpfr_div(xr.get(), xr.get(), m.get(), MPFR_RNDN);
        mpfr_div(zr.get(), zr.get(), m.get(), MPFR_RNDN);
    }
    Integer mod = pow_integer(abs(d.resultant), static_cast<unsigned long>(n + 1));
    Integer xm = x0 % mod, zm = z0 % mod;
    if (xm < 0) xm += mod;
    if (zm < 0) zm += mod;

    for (int k = 1; k <= n; ++k) {
        eval_form_real(d.phi, xr, zr, phi_v);
        eval_form_real(d.psi, xr, zr, psi_v);
        mpfr_abs(mag.get(), phi_v.get(), MPFR_RNDN);
        mpfr_abs(t.get(), psi_v.get(), MPFR_RNDN);
        mpfr_max(mag.get(), mag.get(), t.get(), MPFR_RNDN);
        mpfr_div(xr.get(), phi_v.get(), mag.get(), MPFR_RNDN);
        mpfr_div(zr.get(), psi_v.get(), mag.get(), MPFR_RNDN);
        mpfr_log(mag.get(), mag.get(), MPFR_RNDN);  // Phi_k

        Integer a = eval_form_mod(d.phi, xm, zm, mod);
        Integer b = eval_form_mod(d.psi, xm, zm, mod);
        Integer g = gcd(gcd(a, b), mod);
        xm = a / g;
        zm = b / g;
        mod /= g;
        if (g != 1) {
            BigFloat lg = BigFloat::from_integer(g, prec, MPFR_RNDN);
            mpfr_log(lg.get(), lg.get(), MPFR_RNDN);
            mpfr_sub(mag.get(), mag.get(), lg.get(), MPFR_RNDN);
        }
        mpfr_div_2ui(mag.get(), mag.get(), static_cast<unsigned long>(2 * k), MPFR_RNDN);
        mpfr_add(sum.get(), sum.get(), mag.get(), MPFR_RNDN);
    }
    return sum;
}

}  // namespace

DoublingBounds doubling_bounds(const EllipticCurve& e, long precision) {
    SeriesData d = series_data(e);
    return {d.resultant, delta_upper(d, precision)};
}

CanonicalHeight canonical_height(const EllipticCurve& e, const ECPoint& p, const Rational& tol) {
    if (tol <= 0) throw DomainError("canonical_height: tolerance must be positive");
    e.require_on_curve(p);
    if (p.is_infinity() || torsion_order(e, p))
        return {BoundedReal::from_rational(0, Rounding::Nearest), tol, 0, kDefaultPrecision};

    SeriesData d = series_data(e);
    BoundedReal delta = delta_upper(d, 64);
    // Smallest n with delta / (3 * 4^n) <= tol / 2.
    Rational delta_q = delta.value().to_rational();
    int n = 0;
    while (delta_q * 2 > tol * 3 * Rational(pow_integer(4, static_cast<unsigned long>(n)))) ++n;

    Rational x = p.x() * Rational(d.model.scale * d.model.scale);
    Integer x0 = x.get_num(), z0 = x.get_den();

    long tol_bits = static_cast<long>(mpz_sizeinbase(tol.get_den().get_mpz_t(), 2)) + 8;
    long prec = 96 + 4L * n + tol_bits;
    BigFloat tol_f = BigFloat::from_rational(tol / 8, 64, MPFR_RNDD);
    for (int attempt = 0; attempt < 8; ++attempt, prec *= 2) {
        BigFloat lo = telescoped(d, x0, z0, n, prec);
        BigFloat hi = telescoped(d, x0, z0, n, prec + 64);
        BigFloat diff(prec + 64);
        mpfr_sub(diff.get(), hi.get(), lo.get(), MPFR_RNDN);
        mpfr_abs(diff.get(), diff.get(), MPFR_RNDU);
        if (compare(diff, tol_f) <= 0) {
            BigFloat out(kDefaultPrecision > prec ? kDefaultPrecision : prec);
            mpfr_set(out.get(), hi.get(), MPFR_RNDN);
            return {BoundedReal(std::move(out), Rounding::Nearest), tol, n, prec + 64};
        }
    }
    throw IndeterminateError("canonical_height: archimedean terms did not stabilise");
}

BoundedReal telescoped_height_quotient(const EllipticCurve& e, const ECPoint& p, int n, long precision) {
    e.require_on_curve(p);
    if (p.is_infinity()) throw DomainError("telescoped_height_quotient: point at infinity");
    SeriesData d = series_data(e);
    Rational x = p.x() * Rational(d.model.scale * d.model.scale);
    BigFloat s = telescoped(d, x.get_num(), x.get_den(), n, precision + 64);
    BigFloat out(precision);
    mpfr_set(out.get(), s.get(), MPFR_RNDN);
    return {std::move(out), Rounding::Nearest};
}

BoundedReal naive_height_quotient(const EllipticCurve& e, const ECPoint& p, int n, long precision) {
    ECPoint q = p;
    for (int i = 0; i < n; ++i) q = e.doubled(q);
    if (q.is_infinity()) return BoundedReal::from_rational(0, Rounding::Nearest, precision);
    Integer m = std::max(Integer(abs(q.x().get_num())), Integer(q.x().get_den()));
    BoundedReal l = log_integer(m, Rounding::Nearest, precision);
    BigFloat out(precision);
    mpfr_div_2ui(out.get(), l.value().get(), static_cast<unsigned long>(2 * n), MPFR_RNDN);
    return {std::move(out), Rounding::Nearest};
}

// ---------------------------------------------------------------------------

ZhangBracket zhang_sandwich(const BoundedReal& h, long degree, long dimension) {
    if (degree < 1) throw DomainError("zhang_sandwich: degree must be >= 1");
    if (dimension < 0) throw DomainError("zhang_sandwich: dimension must be >= 0");
    if (h.value().sign() < 0) throw DomainError("zhang_sandwich: height must be nonnegative");
    return {scale(h, Rational(1, (dimension + 1) * degree)), scale(h, Rational(1, degree))};
}

BoundedReal h_upper_from_mu(const BoundedReal& mu_upper, long degree, long dimension) {
    if (degree < 1) throw DomainError("h_upper_from_mu: degree must be >= 1");
    return scale(mu_upper, Rational((dimension + 1) * degree));
}

BoundedReal arithmetic_bezout_upper(long deg_v, const BoundedReal& h_v, long deg_w, const BoundedReal& h_w,
                                    const BoundedReal& c) {
    if (deg_v < 1 || deg_w < 1) throw DomainError("arithmetic_bezout_upper: degrees must be >= 1");
    for (const auto* x : {&h_v, &h_w, &c})
        if (x->direction() != Rounding::Upper) throw DomainError("arithmetic_bezout_upper: inputs must be upper bounds");
    BoundedReal t1 = scale(h_w, Rational(deg_v));
    BoundedReal t2 = scale(h_v, Rational(deg_w));
    BoundedReal t3 = scale(c, Rational(deg_v * deg_w));
    return add(add(t1, t2), t3);
}

}  // namespace hb
