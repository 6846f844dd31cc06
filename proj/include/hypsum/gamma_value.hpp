#pragma once

#include <ostream>
#include <string>

#include "hypsum/rational.hpp"

namespace hypsum::exact {

// Value of the form coeff * pi^(sqrt_pi_exp/2).  Closed under the Gamma
// function on half-integer arguments: Gamma there is always a rational times
// an integer power of sqrt(pi).
struct GammaValue {
    Rational coeff;
    long sqrt_pi_exp = 0;

    GammaValue() : coeff(0) {}
    GammaValue(Rational c, long e = 0) : coeff(std::move(c)), sqrt_pi_exp(e) {
        if (coeff.is_zero()) sqrt_pi_exp = 0;
    }

    bool is_zero() const { return coeff.is_zero(); }
    bool is_rational() const { return sqrt_pi_exp == 0; }

    Rational to_rational() const {
        if (!is_rational())
            throw DomainError("GammaValue carries sqrt(pi)^" + std::to_string(sqrt_pi_exp));
        return coeff;
    }

    GammaValue operator*(const GammaValue& o) const {
        return GammaValue(coeff * o.coeff, sqrt_pi_exp + o.sqrt_pi_exp);
    }
    GammaValue operator/(const GammaValue& o) const {
        if (o.is_zero()) throw DivisionByZero();
        return GammaValue(coeff / o.coeff, sqrt_pi_exp - o.sqrt_pi_exp);
    }
    GammaValue operator*(const Rational& r) const { return GammaValue(coeff * r, sqrt_pi_exp); }
    GammaValue operator-() const { return GammaValue(-coeff, sqrt_pi_exp); }

    friend bool operator==(const GammaValue& a, const GammaValue& b) {
        if (a.is_zero() && b.is_zero()) return true;
        return a.coeff == b.coeff && a.sqrt_pi_exp == b.sqrt_pi_exp;
    }

    std::string to_string() const {
        if (sqrt_pi_exp == 0) return coeff.to_string();
        std::string pi_part = (sqrt_pi_exp % 2 == 0)
                                  ? "pi^" + std::to_string(sqrt_pi_exp / 2)
                                  : "pi^(" + std::to_string(sqrt_pi_exp) + "/2)";
        return coeff.to_string() + "*" + pi_part;
    }

    friend std::ostream& operator<<(std::ostream& os, const GammaValue& g) {
        return os << g.to_string();
    }
};

// (a)_k = a (a+1) ... (a+k-1), k >= 0.
inline Rational pochhammer(const Rational& a, long k) {
    if (k < 0) throw DomainError("pochhammer needs k >= 0");
    Rational acc = 1, x = a;
    for (long i = 0; i < k; ++i) {
        acc *= x;
        x += 1;
    }
    return acc;
}

// (a)_k extended to negative k via (a)_k = Gamma(a+k)/Gamma(a):
// (a)_{-m} = 1/((a-1)(a-2)...(a-m)).  Pole -> PoleError.
inline Rational pochhammer_signed(const Rational& a, long k) {
    if (k >= 0) return pochhammer(a, k);
    Rational acc = 1, x = a - 1;
    for (long i = 0; i < -k; ++i) {
        if (x.is_zero()) throw PoleError("pochhammer_signed pole at " + a.to_string());
        acc *= x;
        x -= 1;
    }
    return acc.inv();
}

// x (x-1) ... (x-k+1), k >= 0.
inline Rational falling(const Rational& x, long k) {
    Rational acc = 1, t = x;
    for (long i = 0; i < k; ++i) {
        acc *= t;
        t -= 1;
    }
    return acc;
}

inline Rational factorial(long n) {
    if (n < 0) throw DomainError("factorial of negative integer");
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
    return Rational(f);
}

// binom(n, k) for nonnegative n; 0 outside 0 <= k <= n.
// Equals (-1)^k (-n)_k / (1)_k on the support.
inline Rational binomial(long n, long k) {
    if (n < 0) throw DomainError("binomial needs n >= 0");
    if (k < 0 || k > n) return Rational(0);
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return Rational(b);
}

// binom(x, k) = x(x-1)...(x-k+1)/k! for arbitrary rational x; 0 for k < 0.
// Vanishes automatically when x is an integer with 0 <= x < k.
inline Rational binomial_general(const Rational& x, long k) {
    if (k < 0) return Rational(0);
    return falling(x, k) / factorial(k);
}

// Gamma at a half-integer argument as coeff * sqrt(pi)^e.
//   positive integer x      -> (x-1)!                       (e = 0)
//   positive half-odd x     -> product formula from Gamma(1/2) = sqrt(pi)
//   negative half-odd x     -> reflection Gamma(x)Gamma(1-x) = pi/sin(pi x),
//                              where sin(pi x) = (-1)^m for x = m + 1/2
//   nonpositive integer x   -> PoleError
inline GammaValue gamma_half_integer(const Rational& x) {
    if (!x.is_half_integer())
        throw DomainError("gamma_half_integer needs a half-integer, got " + x.to_string());
    if (x.is_integer()) {
        long n = x.to_long();
        if (n <= 0) throw PoleError("Gamma pole at " + x.to_string());
        return GammaValue(factorial(n - 1), 0);
    }
    // x = m + 1/2 for integer m.
    long m = ((x - Rational(1, 2)) ).to_long();
    if (m >= 0) {
        // Gamma(m + 1/2) = (1/2)_m * sqrt(pi)
        return GammaValue(pochhammer(Rational(1, 2), m), 1);
    }
    // Reflection: Gamma(x) = pi * (-1)^m / Gamma(1 - x); 1 - x = 1/2 - m > 0.
    GammaValue g1mx = gamma_half_integer(Rational(1) - x);
    Rational sign = (m % 2 == 0) ? Rational(1) : Rational(-1);
    // pi = sqrt(pi)^2
    return GammaValue(sign / g1mx.coeff, 2 - g1mx.sqrt_pi_exp);
}

// 1/Gamma(x) for half-integer x; 0 at the poles.
inline GammaValue reciprocal_gamma_half_integer(const Rational& x) {
    if (x.is_nonpositive_integer()) return GammaValue(Rational(0), 0);
    GammaValue g = gamma_half_integer(x);
    return GammaValue(g.coeff.inv(), -g.sqrt_pi_exp);
}

// binom(2k, k) in Gamma form: 2^(2k) Gamma(k+1/2) / (sqrt(pi) Gamma(k+1)).
inline GammaValue central_binomial_gamma(long k) {
    if (k < 0) throw DomainError("central_binomial_gamma needs k >= 0");
    GammaValue top = gamma_half_integer(Rational(2 * k + 1, 2));
    GammaValue bottom = gamma_half_integer(Rational(k + 1));
    GammaValue result = top / bottom;
    result.coeff *= Rational(2).pow(2 * k);
    result.sqrt_pi_exp -= 1;
    return result;
}

}  // namespace hypsum::exact
