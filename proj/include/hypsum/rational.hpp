#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdlib>
#include <ostream>
#include <string>

#include "hypsum/errors.hpp"

namespace hypsum::exact {

// Arbitrary-precision rational, always reduced, denominator > 0.
// Thin value wrapper over GMP's mpq_class; the wrapper owns canonicalization
// at every construction site so the invariant can't be bypassed.
class Rational {
  public:
    Rational() : q_(0) {}
    Rational(int n) : q_(n) {}         // NOLINT(google-explicit-constructor)
    Rational(long n) : q_(n) {}        // NOLINT(google-explicit-constructor)
    Rational(const mpz_class& n) : q_(n) {}  // NOLINT(google-explicit-constructor)

    Rational(long num, long den) {
        if (den == 0) throw DivisionByZero();
        q_ = mpq_class(num, den);
        q_.canonicalize();
    }

    Rational(const mpz_class& num, const mpz_class& den) {
        if (den == 0) throw DivisionByZero();
        q_ = mpq_class(num, den);
        q_.canonicalize();
    }

    // Accepts "p", "-p", "p/q"; throws SyntaxError on anything else.
    static Rational from_string(const std::string& s) {
        std::size_t slash = s.find('/');
        try {
            if (slash == std::string::npos) return Rational(mpz_class(s), mpz_class(1));
            return Rational(mpz_class(s.substr(0, slash)), mpz_class(s.substr(slash + 1)));
        } catch (const std::invalid_argument&) {
            throw SyntaxError("bad rational literal '" + s + "'", 0);
        }
    }

    const mpz_class num() const { return q_.get_num(); }
    const mpz_class den() const { return q_.get_den(); }
    const mpq_class& raw() const { return q_; }
    mpq_srcptr mpq() const { return q_.get_mpq_t(); }

    bool is_zero() const { return sgn(q_) == 0; }
    int sign() const { return sgn(q_); }
    bool is_integer() const { return q_.get_den() == 1; }
    bool is_nonpositive_integer() const { return is_integer() && sgn(q_) <= 0; }
    bool is_half_integer() const { return q_.get_den() == 1 || q_.get_den() == 2; }

    // Exact long value; caller guarantees is_integer() and range.
    long to_long() const {
        if (!is_integer() || !q_.get_num().fits_slong_p())
            throw DomainError("rational is not a small integer: " + to_string());
        return q_.get_num().get_si();
    }

    double to_double() const { return q_.get_d(); }

    mpz_class floor() const {
        mpz_class r;
        mpz_fdiv_q(r.get_mpz_t(), q_.get_num().get_mpz_t(), q_.get_den().get_mpz_t());
        return r;
    }

    Rational operator-() const { return Rational(mpq_class(-q_)); }
    Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
    Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
    Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw DivisionByZero();
        q_ /= o.q_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.q_ != b.q_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.q_ < b.q_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.q_ <= b.q_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.q_ > b.q_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.q_ >= b.q_; }

    Rational abs() const { return Rational(mpq_class(::abs(q_))); }

    Rational inv() const {
        if (is_zero()) throw DivisionByZero();
        return Rational(1) / *this;
    }

    // Integer power; negative exponents invert.
    Rational pow(long e) const {
        if (e < 0) return inv().pow(-e);
        Rational base = *this, acc = 1;
        while (e > 0) {
            if (e & 1) acc *= base;
            base *= base;
            e >>= 1;
        }
        return acc;
    }

    std::string to_string() const {
        if (is_integer()) return q_.get_num().get_str();
        return q_.get_num().get_str() + "/" + q_.get_den().get_str();
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
        return os << r.to_string();
    }

  private:
    explicit Rational(mpq_class q) : q_(std::move(q)) {}
    mpq_class q_;
};

inline Rational operator+(long a, const Rational& b) { return Rational(a) + b; }
inline Rational operator-(long a, const Rational& b) { return Rational(a) - b; }
inline Rational operator*(long a, const Rational& b) { return Rational(a) * b; }
inline Rational operator/(long a, const Rational& b) { return Rational(a) / b; }

}  // namespace hypsum::exact
