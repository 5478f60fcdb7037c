#include "heightbound/const_expr.hpp"

#include <cctype>
#include <utility>
#include <variant>

#include "heightbound/errors.hpp"

namespace hb {

struct ConstExpr::Node {
    enum class Kind { Rat, PiHalf, Log, GammaHalf, Factorial, Add, Mul, Div, Neg, Pow };
    Kind kind;
    Rational q;       // Rat, Log
    long k = 0;       // PiHalf, GammaHalf, Factorial, Pow
    std::shared_ptr<const Node> a, b;
};

namespace {

using Node = ConstExpr::Node;
using Kind = Node::Kind;

std::shared_ptr<const Node> leaf(Kind kind, Rational q = 0, long k = 0) {
    return std::make_shared<const Node>(Node{kind, std::move(q), k, nullptr, nullptr});
}

Interval point(const Rational& q, long prec) {
    return {BigFloat::from_rational(q, prec, MPFR_RNDD), BigFloat::from_rational(q, prec, MPFR_RNDU)};
}

Interval iadd(const Interval& x, const Interval& y, long prec) {
    Interval r{BigFloat(prec), BigFloat(prec)};
    mpfr_add(r.lo.get(), x.lo.get(), y.lo.get(), MPFR_RNDD);
    mpfr_add(r.hi.get(), x.hi.get(), y.hi.get(), MPFR_RNDU);
    return r;
}

Interval ineg(const Interval& x, long prec) {
    Interval r{BigFloat(prec), BigFloat(prec)};
    mpfr_neg(r.lo.get(), x.hi.get(), MPFR_RNDD);
    mpfr_neg(r.hi.get(), x.lo.get(), MPFR_RNDU);
    return r;
}

Interval imul(const Interval& x, const Interval& y, long prec) {
    const BigFloat* xs[2] = {&x.lo, &x.hi};
    const BigFloat* ys[2] = {&y.lo, &y.hi};
    Interval r{BigFloat(prec), BigFloat(prec)};
    BigFloat t(prec);
    bool first = true;
    for (auto* u : xs) {
        for (auto* v : ys) {
            mpfr_mul(t.get(), u->get(), v->get(), MPFR_RNDD);
            if (first || mpfr_cmp(t.get(), r.lo.get()) < 0) mpfr_set(r.lo.get(), t.get(), MPFR_RNDD);
            mpfr_mul(t.get(), u->get(), v->get(), MPFR_RNDU);
            if (first || mpfr_cmp(t.get(), r.hi.get()) > 0) mpfr_set(r.hi.get(), t.get(), MPFR_RNDU);
            first = false;
        }
    }
    return r;
}

Interval isqr(const Interval& x, long prec) {
    if (x.lo.sign() >= 0 || x.hi.sign() <= 0) return imul(x, x, prec);
    Interval r{BigFloat(prec), BigFloat(prec)};
    BigFloat a(prec), b(prec);
    mpfr_sqr(a.get(), x.lo.get(), MPFR_RNDU);
    mpfr_sqr(b.get(), x.hi.get(), MPFR_RNDU);
    mpfr_max(r.hi.get(), a.get(), b.get(), MPFR_RNDU);
    return r;
}

Interval iinv(const Interval& x, long prec) {
    if (x.lo.sign() <= 0 && x.hi.sign() >= 0) throw DomainError("division by an expression enclosing zero");
    Interval r{BigFloat(prec), BigFloat(prec)};
    mpfr_ui_div(r.lo.get(), 1, x.hi.get(), MPFR_RNDD);
    mpfr_ui_div(r.hi.get(), 1, x.lo.get(), MPFR_RNDU);
    return r;
}

Interval ipow(Interval base, long e, long prec) {
    if (e < 0) return iinv(ipow(std::move(base), -e, prec), prec);
    Interval acc = point(1, prec);
    while (e > 0) {
        if (e & 1) acc = imul(acc, base, prec);
        e >>= 1;
        if (e) base = isqr(base, prec);
    }
    return acc;
}

Interval pi_interval(long prec) {
    Interval r{BigFloat(prec), BigFloat(prec)};
    mpfr_const_pi(r.lo.get(), MPFR_RNDD);
    mpfr_const_pi(r.hi.get(), MPFR_RNDU);
    return r;
}

Rational factorial_q(long n) {
    Integer f;
    mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
    return Rational(f);
}

// Gamma(k/2 + 1) = rational * pi^(odd ? 1/2 : 0)
std::pair<Rational, bool> gamma_half_parts(long k) {
    if (k % 2 == 0) return {factorial_q(k / 2), false};
    // Gamma(m + 3/2) = (2m+2)! / (4^(m+1) (m+1)!) * sqrt(pi), k = 2m+1
    long m = (k - 1) / 2;
    Rational c = factorial_q(2 * m + 2) / (Rational(pow_integer(4, static_cast<unsigned long>(m + 1))) * factorial_q(m + 1));
    return {c, true};
}

Interval enclose_node(const Node& n, long prec) {
    switch (n.kind) {
        case Kind::Rat: return point(n.q, prec);
        case Kind::Factorial: return point(factorial_q(n.k), prec);
        case Kind::PiHalf: {
            Interval p = pi_interval(prec);
            if (n.k % 2 != 0) {
                mpfr_sqrt(p.lo.get(), p.lo.get(), MPFR_RNDD);
                mpfr_sqrt(p.hi.get(), p.hi.get(), MPFR_RNDU);
                // sqrt(pi)^k
                return ipow(std::move(p), n.k, prec);
            }
            return ipow(std::move(p), n.k / 2, prec);
        }
        case Kind::Log: {
            if (n.q <= 0) throw DomainError("log of a nonpositive rational " + format_rational(n.q));
            Interval r = point(n.q, prec);
            mpfr_log(r.lo.get(), r.lo.get(), MPFR_RNDD);
            mpfr_log(r.hi.get(), r.hi.get(), MPFR_RNDU);
            return r;
        }
        case Kind::GammaHalf: {
            auto [c, half_pi] = gamma_half_parts(n.k);
            Interval r = point(c, prec);
            if (!half_pi) return r;
            Interval s = pi_interval(prec);
            mpfr_sqrt(s.lo.get(), s.lo.get(), MPFR_RNDD);
            mpfr_sqrt(s.hi.get(), s.hi.get(), MPFR_RNDU);
            return imul(r, s, prec);
        }
        case Kind::Add: return iadd(enclose_node(*n.a, prec), enclose_node(*n.b, prec), prec);
        case Kind::Mul: return imul(enclose_node(*n.a, prec), enclose_node(*n.b, prec), prec);
        case Kind::Div: return imul(enclose_node(*n.a, prec), iinv(enclose_node(*n.b, prec), prec), prec);
        case Kind::Neg: return ineg(enclose_node(*n.a, prec), prec);
        case Kind::Pow: return ipow(enclose_node(*n.a, prec), n.k, prec);
    }
    throw DomainError("corrupt expression node");
}

int binding(Kind k) {
    switch (k) {
        case Kind::Add: return 1;
        case Kind::Mul:
        case Kind::Div: return 2;
        case Kind::Neg: return 3;
        case Kind::Pow: return 4;
        default: return 5;
    }
}

std::string render(const Node& n);

std::string wrap(const Node& child, int min_binding) {
    std::string s = render(child);
    return binding(child.kind) < min_binding ? "(" + s + ")" : s;
}

std::string render(const Node& n) {
    switch (n.kind) {
        case Kind::Rat: return n.q < 0 ? "(" + format_rational(n.q) + ")" : format_rational(n.q);
        case Kind::Factorial: return std::to_string(n.k) + "!";
        case Kind::PiHalf:
            if (n.k == 2) return "pi";
            if (n.k % 2 == 0) return "pi^" + std::to_string(n.k / 2);
            return "pi^(" + std::to_string(n.k) + "/2)";
        case Kind::Log: return "log(" + format_rational(n.q) + ")";
        case Kind::GammaHalf: return "gamma(" + format_rational(make_rational(n.k, 2) + 1) + ")";
        case Kind::Add: return render(*n.a) + " + " + wrap(*n.b, 2);
        case Kind::Mul: return wrap(*n.a, 2) + "*" + wrap(*n.b, 3);
        case Kind::Div: return wrap(*n.a, 2) + "/" + wrap(*n.b, 3);
        case Kind::Neg: return "-" + wrap(*n.a, 3);
        case Kind::Pow: return wrap(*n.a, 5) + "^" + (n.k < 0 ? "(" + std::to_string(n.k) + ")" : std::to_string(n.k));
    }
    return "?";
}

}  // namespace

ConstExpr::ConstExpr() : node_(leaf(Kind::Rat)) {}
ConstExpr::ConstExpr(const Rational& q) : node_(leaf(Kind::Rat, q)) {}

ConstExpr ConstExpr::rational(const Rational& q) { return ConstExpr(q); }
ConstExpr ConstExpr::pi_pow_half(long half_exponent) {
    if (half_exponent == 0) return ConstExpr(Rational(1));
    return ConstExpr(leaf(Kind::PiHalf, 0, half_exponent));
}
ConstExpr ConstExpr::log(const Rational& q) {
    if (q <= 0) throw DomainError("log of a nonpositive rational " + format_rational(q));
    return ConstExpr(leaf(Kind::Log, q));
}
ConstExpr ConstExpr::gamma_half(long k) {
    if (k < 0) throw DomainError("gamma_half needs k >= 0");
    return ConstExpr(leaf(Kind::GammaHalf, 0, k));
}
ConstExpr ConstExpr::factorial(long n) {
    if (n < 0) throw DomainError("factorial of a negative integer");
    return ConstExpr(leaf(Kind::Factorial, 0, n));
}
ConstExpr ConstExpr::unit_ball_volume(long r) {
    if (r < 0) throw DomainError("unit ball dimension must be nonnegative");
    return pi_pow_half(r) / gamma_half(r);
}

ConstExpr operator+(const ConstExpr& a, const ConstExpr& b) {
    return ConstExpr(std::make_shared<const Node>(Node{Kind::Add, 0, 0, a.node_, b.node_}));
}
ConstExpr operator-(const ConstExpr& a, const ConstExpr& b) { return a + (-b); }
ConstExpr operator*(const ConstExpr& a, const ConstExpr& b) {
    return ConstExpr(std::make_shared<const Node>(Node{Kind::Mul, 0, 0, a.node_, b.node_}));
}
ConstExpr operator/(const ConstExpr& a, const ConstExpr& b) {
    return ConstExpr(std::make_shared<const Node>(Node{Kind::Div, 0, 0, a.node_, b.node_}));
}
ConstExpr operator-(const ConstExpr& a) {
    if (a.node_->kind == Kind::Rat) return ConstExpr(Rational(-a.node_->q));
    return ConstExpr(std::make_shared<const Node>(Node{Kind::Neg, 0, 0, a.node_, nullptr}));
}
ConstExpr ConstExpr::pow(long exponent) const {
    if (node_->kind == Kind::Rat) return ConstExpr(pow_rational(node_->q, exponent));
    return ConstExpr(std::make_shared<const Node>(Node{Kind::Pow, 0, exponent, node_, nullptr}));
}

Interval ConstExpr::enclose(long precision) const { return enclose_node(*node_, precision); }
std::string ConstExpr::to_string() const { return render(*node_); }

BoundedReal eval_const(const ConstExpr& expr, Rounding direction, long precision) {
    if (precision < kMinPrecision) throw DomainError("precision must be at least 53 bits");
    const long work = precision + 32;
    Interval iv = expr.enclose(work);
    BigFloat out(precision);
    switch (direction) {
        case Rounding::Upper: mpfr_set(out.get(), iv.hi.get(), MPFR_RNDU); break;
        case Rounding::Lower: mpfr_set(out.get(), iv.lo.get(), MPFR_RNDD); break;
        case Rounding::Nearest: {
            BigFloat mid(work + 1);
            mpfr_add(mid.get(), iv.lo.get(), iv.hi.get(), MPFR_RNDN);
            mpfr_div_2ui(mid.get(), mid.get(), 1, MPFR_RNDN);
            mpfr_set(out.get(), mid.get(), MPFR_RNDN);
            break;
        }
    }
    return {std::move(out), direction};
}

// ---------------------------------------------------------------------------
// Parser

namespace {

class Parser {
public:
    explicit Parser(const std::string& s) : s_(s) {}

    ConstExpr parse() {
        ConstExpr e = expr();
        skip();
        if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& what) const {
        throw ParseError("constant expression '" + s_ + "': " + what);
    }
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool peek(char c) {
        skip();
        return pos_ < s_.size() && s_[pos_] == c;
    }
    bool starts_factor() {
        skip();
        if (pos_ >= s_.size()) return false;
        char c = s_[pos_];
        return std::isdigit(static_cast<unsigned char>(c)) || c == '(' || s_.compare(pos_, 3, "log") == 0 ||
               s_.compare(pos_, 2, "pi") == 0;
    }

    ConstExpr expr() {
        ConstExpr e = term();
        for (;;) {
            if (peek('+')) {
                ++pos_;
                e = e + term();
            } else if (peek('-')) {
                ++pos_;
                e = e - term();
            } else {
                return e;
            }
        }
    }

    ConstExpr term() {
        ConstExpr e = unary();
        for (;;) {
            if (peek('*')) {
                ++pos_;
                e = e * unary();
            } else if (peek('/')) {
                ++pos_;
                e = e / unary();
            } else if (starts_factor()) {
                e = e * unary();
            } else {
                return e;
            }
        }
    }

    ConstExpr unary() {
        if (peek('-')) {
            ++pos_;
            return -unary();
        }
        ConstExpr b = base();
        if (peek('^')) {
            ++pos_;
            skip();
            bool neg = false;
            if (peek('-')) {
                neg = true;
                ++pos_;
            }
            Integer e = integer();
            long v = e.get_si();
            return b.pow(neg ? -v : v);
        }
        return b;
    }

    Integer integer() {
        skip();
        size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) fail("expected an integer");
        return Integer(s_.substr(start, pos_ - start), 10);
    }

    Rational number() {
        skip();
        size_t start = pos_;
        while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.')) ++pos_;
        if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E') && pos_ + 1 < s_.size() &&
            (std::isdigit(static_cast<unsigned char>(s_[pos_ + 1])) || s_[pos_ + 1] == '-')) {
            ++pos_;
            if (s_[pos_] == '-') ++pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        }
        if (start == pos_) fail("expected a number");
        return parse_rational(s_.substr(start, pos_ - start));
    }

    Rational log_argument() {
        if (peek('(')) {
            ++pos_;
            Rational num = number();
            if (peek('/')) {
                ++pos_;
                num /= number();
            }
            if (!peek(')')) fail("expected ')'");
            ++pos_;
            return num;
        }
        return number();
    }

    ConstExpr base() {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end of input");
        if (s_.compare(pos_, 3, "log") == 0) {
            pos_ += 3;
            Rational q = log_argument();
            if (q <= 0) fail("log of a nonpositive number");
            return ConstExpr::log(q);
        }
        if (s_.compare(pos_, 2, "pi") == 0) {
            pos_ += 2;
            return ConstExpr::pi_pow(1);
        }
        if (peek('(')) {
            ++pos_;
            ConstExpr e = expr();
            if (!peek(')')) fail("expected ')'");
            ++pos_;
            return e;
        }
        return ConstExpr(number());
    }

    const std::string& s_;
    size_t pos_ = 0;
};

}  // namespace

ConstExpr parse_const_expr(const std::string& text) { return Parser(text).parse(); }

}  // namespace hb
