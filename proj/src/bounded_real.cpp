#include "heightbound/bounded_real.hpp"

#include <cstdlib>
#include <memory>

#include "heightbound/errors.hpp"

namespace hb {

std::string to_string(Rounding r) {
    switch (r) {
        case Rounding::Upper: return "upper";
        case Rounding::Lower: return "lower";
        case Rounding::Nearest: return "nearest";
    }
    return "nearest";
}

Rounding parse_rounding(const std::string& s) {
    if (s == "upper") return Rounding::Upper;
    if (s == "lower") return Rounding::Lower;
    if (s == "nearest") return Rounding::Nearest;
    throw ParseError("unknown rounding direction '" + s + "'");
}

mpfr_rnd_t to_mpfr(Rounding r) {
    switch (r) {
        case Rounding::Upper: return MPFR_RNDU;
        case Rounding::Lower: return MPFR_RNDD;
        case Rounding::Nearest: return MPFR_RNDN;
    }
    return MPFR_RNDN;
}

BigFloat::BigFloat(long precision) {
    if (precision < MPFR_PREC_MIN || precision > 1 << 24) throw DomainError("unsupported precision");
    mpfr_init2(value_, precision);
    mpfr_set_zero(value_, 1);
}

BigFloat::BigFloat(const BigFloat& other) {
    mpfr_init2(value_, mpfr_get_prec(other.value_));
    mpfr_set(value_, other.value_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& other) noexcept {
    mpfr_init2(value_, mpfr_get_prec(other.value_));
    mpfr_swap(value_, other.value_);
}

BigFloat& BigFloat::operator=(const BigFloat& other) {
    if (this != &other) {
        mpfr_set_prec(value_, mpfr_get_prec(other.value_));
        mpfr_set(value_, other.value_, MPFR_RNDN);
    }
    return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& other) noexcept {
    mpfr_swap(value_, other.value_);
    return *this;
}

BigFloat::~BigFloat() { mpfr_clear(value_); }

BigFloat BigFloat::from_rational(const Rational& q, long precision, mpfr_rnd_t rnd) {
    BigFloat f(precision);
    mpfr_set_q(f.value_, q.get_mpq_t(), rnd);
    return f;
}

BigFloat BigFloat::from_integer(const Integer& z, long precision, mpfr_rnd_t rnd) {
    BigFloat f(precision);
    mpfr_set_z(f.value_, z.get_mpz_t(), rnd);
    return f;
}

Rational BigFloat::to_rational() const {
    if (!mpfr_number_p(value_)) throw DomainError("non-finite value has no rational form");
    Integer m;
    mpfr_exp_t e = mpfr_get_z_2exp(m.get_mpz_t(), value_);
    Rational q(m);
    if (e >= 0) {
        mpq_mul_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(e));
    } else {
        mpq_div_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(-e));
    }
    return q;
}

std::string BigFloat::to_decimal(int digits, mpfr_rnd_t rnd) const {
    if (mpfr_zero_p(value_)) return "0";
    if (mpfr_nan_p(value_)) return "nan";
    if (mpfr_inf_p(value_)) return mpfr_sgn(value_) > 0 ? "inf" : "-inf";
    mpfr_exp_t exp10 = 0;
    std::unique_ptr<char, void (*)(char*)> raw(
        mpfr_get_str(nullptr, &exp10, 10, static_cast<size_t>(digits), value_, rnd), mpfr_free_str);
    std::string mant(raw.get());
    bool neg = false;
    if (!mant.empty() && mant.front() == '-') {
        neg = true;
        mant.erase(0, 1);
    }
    while (mant.size() > 1 && mant.back() == '0') mant.pop_back();
    // value = 0.mant * 10^exp10
    long point = static_cast<long>(exp10);
    std::string out;
    if (point > -4 && point <= 21) {
        if (point <= 0) {
            out = "0." + std::string(static_cast<size_t>(-point), '0') + mant;
        } else if (static_cast<size_t>(point) >= mant.size()) {
            out = mant + std::string(static_cast<size_t>(point) - mant.size(), '0');
        } else {
            out = mant.substr(0, static_cast<size_t>(point)) + "." + mant.substr(static_cast<size_t>(point));
        }
    } else {
        out = mant.substr(0, 1);
        if (mant.size() > 1) out += "." + mant.substr(1);
        out += "e" + std::to_string(point - 1);
    }
    return neg ? "-" + out : out;
}

int compare(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.get(), b.get()); }

BoundedReal BoundedReal::from_rational(const Rational& q, Rounding direction, long precision) {
    return BoundedReal(BigFloat::from_rational(q, precision, to_mpfr(direction)), direction);
}

std::string BoundedReal::to_decimal(int digits) const { return value_.to_decimal(digits, to_mpfr(direction_)); }

std::string BoundedReal::to_decimal() const {
    // Every emitted digit is meaningful at the stored precision.
    int digits = static_cast<int>(static_cast<double>(precision()) * 0.30102999566398);
    return to_decimal(digits < 1 ? 1 : digits);
}

namespace {

void require_same_direction(const BoundedReal& a, const BoundedReal& b, const char* op) {
    if (a.direction() != b.direction())
        throw DomainError(std::string(op) + ": operands carry different rounding directions (" +
                          to_string(a.direction()) + ", " + to_string(b.direction()) + ")");
}

long joint_precision(const BoundedReal& a, const BoundedReal& b) { return std::max(a.precision(), b.precision()); }

}  // namespace

BoundedReal add(const BoundedReal& a, const BoundedReal& b) {
    require_same_direction(a, b, "add");
    BigFloat r(joint_precision(a, b));
    mpfr_add(r.get(), a.value().get(), b.value().get(), to_mpfr(a.direction()));
    return {std::move(r), a.direction()};
}

BoundedReal mul(const BoundedReal& a, const BoundedReal& b) {
    require_same_direction(a, b, "mul");
    if (a.direction() != Rounding::Nearest && (a.value().sign() < 0 || b.value().sign() < 0))
        throw DomainError("mul: directed product requires nonnegative operands");
    BigFloat r(joint_precision(a, b));
    mpfr_mul(r.get(), a.value().get(), b.value().get(), to_mpfr(a.direction()));
    return {std::move(r), a.direction()};
}

BoundedReal scale(const BoundedReal& a, const Rational& factor) {
    if (factor < 0) throw DomainError("scale: factor must be nonnegative to keep the direction");
    BigFloat r(a.precision());
    mpfr_mul_q(r.get(), a.value().get(), factor.get_mpq_t(), to_mpfr(a.direction()));
    return {std::move(r), a.direction()};
}

BoundedReal with_precision(const BoundedReal& a, long precision) {
    BigFloat r(precision);
    mpfr_set(r.get(), a.value().get(), to_mpfr(a.direction()));
    return {std::move(r), a.direction()};
}

std::string to_string(Ordering o) {
    switch (o) {
        case Ordering::Less: return "less";
        case Ordering::Greater: return "greater";
        case Ordering::Indeterminate: return "indeterminate";
    }
    return "indeterminate";
}

Ordering compare_bound(const BoundedReal& a, const BoundedReal& b) {
    // exact(a) <= a.value <= ... only an Upper a and Lower b can certify a < b.
    if (a.direction() == Rounding::Upper && b.direction() == Rounding::Lower && compare(a.value(), b.value()) < 0)
        return Ordering::Less;
    if (a.direction() == Rounding::Lower && b.direction() == Rounding::Upper && compare(a.value(), b.value()) > 0)
        return Ordering::Greater;
    return Ordering::Indeterminate;
}

}  // namespace hb
