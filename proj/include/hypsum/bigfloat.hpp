#pragma once

#include <mpfr.h>

#include <string>
#include <utility>

#include "hypsum/rational.hpp"

namespace hypsum::special {

inline mpfr_prec_t bits_for_digits(long digits) {
    if (digits < 1) digits = 1;
    // log2(10) = 3.3219...; headroom for intermediate rounding.
    return static_cast<mpfr_prec_t>(digits * 3.3219280948873623 + 16);
}

// Arbitrary-precision float.  Precision is a per-value property fixed at
// construction; arithmetic results carry the max precision of their operands.
class Real {
  public:
    explicit Real(mpfr_prec_t prec = 64) { mpfr_init2(v_, prec < MPFR_PREC_MIN ? MPFR_PREC_MIN : prec); mpfr_set_zero(v_, 1); }

    Real(long x, mpfr_prec_t prec) : Real(prec) { mpfr_set_si(v_, x, MPFR_RNDN); }

    Real(const exact::Rational& q, mpfr_prec_t prec) : Real(prec) {
        mpfr_set_q(v_, q.mpq(), MPFR_RNDN);
    }

    Real(const Real& o) : Real(mpfr_get_prec(o.v_)) { mpfr_set(v_, o.v_, MPFR_RNDN); }
    Real(Real&& o) noexcept { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_swap(v_, o.v_); }
    Real& operator=(const Real& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    Real& operator=(Real&& o) noexcept {
        if (this != &o) mpfr_swap(v_, o.v_);
        return *this;
    }
    ~Real() { mpfr_clear(v_); }

    static Real from_digits(const exact::Rational& q, long digits) {
        return Real(q, bits_for_digits(digits));
    }

    mpfr_prec_t precision() const { return mpfr_get_prec(v_); }
    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }

    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

    static mpfr_prec_t join(const Real& a, const Real& b) {
        return std::max(mpfr_get_prec(a.v_), mpfr_get_prec(b.v_));
    }

    friend Real operator+(const Real& a, const Real& b) {
        Real r(join(a, b));
        mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend Real operator-(const Real& a, const Real& b) {
        Real r(join(a, b));
        mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend Real operator*(const Real& a, const Real& b) {
        Real r(join(a, b));
        mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend Real operator/(const Real& a, const Real& b) {
        Real r(join(a, b));
        mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    Real operator-() const {
        Real r(precision());
        mpfr_neg(r.v_, v_, MPFR_RNDN);
        return r;
    }
    Real& operator+=(const Real& o) { mpfr_add(v_, v_, o.v_, MPFR_RNDN); return *this; }
    Real& operator-=(const Real& o) { mpfr_sub(v_, v_, o.v_, MPFR_RNDN); return *this; }
    Real& operator*=(const Real& o) { mpfr_mul(v_, v_, o.v_, MPFR_RNDN); return *this; }
    Real& operator/=(const Real& o) { mpfr_div(v_, v_, o.v_, MPFR_RNDN); return *this; }

    Real& mul_rational(const exact::Rational& q) {
        mpfr_mul_q(v_, v_, q.mpq(), MPFR_RNDN);
        return *this;
    }

    friend bool operator<(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) < 0; }
    friend bool operator>(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) > 0; }
    friend bool operator<=(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) <= 0; }
    friend bool operator>=(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) >= 0; }
    friend bool operator==(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) == 0; }

    Real abs() const {
        Real r(precision());
        mpfr_abs(r.v_, v_, MPFR_RNDN);
        return r;
    }
    Real sqrt() const {
        Real r(precision());
        mpfr_sqrt(r.v_, v_, MPFR_RNDN);
        return r;
    }
    Real log() const {
        Real r(precision());
        mpfr_log(r.v_, v_, MPFR_RNDN);
        return r;
    }
    Real pow_si(long e) const {
        Real r(precision());
        mpfr_pow_si(r.v_, v_, e, MPFR_RNDN);
        return r;
    }

    static Real pi(mpfr_prec_t prec) {
        Real r(prec);
        mpfr_const_pi(r.v_, MPFR_RNDN);
        return r;
    }
    static Real euler_gamma(mpfr_prec_t prec) {
        Real r(prec);
        mpfr_const_euler(r.v_, MPFR_RNDN);
        return r;
    }

    // Upper bound t <= 2^exponent(); valid for nonzero finite values.
    mpfr_exp_t exponent2() const { return mpfr_get_exp(v_); }

    std::string to_string(long digits = 0) const {
        if (digits <= 0) digits = static_cast<long>(precision() / 3.32) + 1;
        char* s = nullptr;
        int n = mpfr_asprintf(&s, "%.*Rg", static_cast<int>(digits), v_);
        std::string out = (n >= 0 && s) ? std::string(s) : std::string("nan");
        if (s) mpfr_free_str(s);
        return out;
    }

  private:
    mpfr_t v_;
};

}  // namespace hypsum::special
