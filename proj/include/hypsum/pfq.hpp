#pragma once

#include <algorithm>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "hypsum/gamma_value.hpp"

namespace hypsum::hyper {

using exact::Rational;

// Generalized hypergeometric series sum_k prod(upper)_k z^k / (prod(lower)_k k!).
//
// A nonpositive-integer lower parameter -M is admissible in the ordinary
// reading only when the series terminates at N <= M, so the numerator factor
// dies no later than the denominator one (terms past N are taken as 0).
//
// With `regularized` set, exactly one lower must be a nonpositive integer -M;
// that parameter contributes 1/Gamma(k - M) to the term instead of 1/(-M)_k,
// which kills terms k <= M and leaves 1/(k-M-1)! afterwards.
struct PFQ {
    std::vector<Rational> upper;
    std::vector<Rational> lower;
    Rational arg;
    bool regularized = false;

    std::size_t p() const { return upper.size(); }
    std::size_t q() const { return lower.size(); }

    std::string to_string() const {
        std::ostringstream os;
        if (regularized) os << "reg ";
        os << p() << "F" << q() << "(";
        for (std::size_t i = 0; i < upper.size(); ++i) os << (i ? "," : "") << upper[i];
        os << ";";
        for (std::size_t i = 0; i < lower.size(); ++i) os << (i ? "," : "") << lower[i];
        os << ";" << arg << ")";
        return os.str();
    }
};

// Smallest N >= 0 with -N among the uppers, if any.
inline std::optional<long> truncation_index(const PFQ& f) {
    std::optional<long> best;
    for (const auto& a : f.upper) {
        if (a.is_nonpositive_integer()) {
            long n = -a.to_long();
            if (!best || n < *best) best = n;
        }
    }
    return best;
}

struct Classification {
    bool terminating = false;
    long truncation = -1;       // N: sum runs k = 0..N
    Rational balance;           // sum(lower) - sum(upper)
    bool saalschutzian = false; // terminating, arg 1, balance 1
    bool convergent = false;    // the infinite series converges (or terminates)
};

// Throws unless every nonpositive-integer lower is covered per the rules above.
inline void validate(const PFQ& f) {
    std::size_t bad_lower = 0;
    long max_allowed = -1;
    for (const auto& b : f.lower) {
        if (b.is_nonpositive_integer()) {
            ++bad_lower;
            long m = -b.to_long();
            if (max_allowed < 0 || m < max_allowed) max_allowed = m;
        }
    }
    if (bad_lower == 0) {
        if (f.regularized)
            throw DomainError("regularized series needs a nonpositive-integer lower parameter");
        return;
    }
    if (f.regularized) {
        if (bad_lower > 1)
            throw DomainError("regularized series admits one nonpositive-integer lower, got " +
                              std::to_string(bad_lower));
        return;
    }
    auto n = truncation_index(f);
    if (!n || *n > max_allowed)
        throw PoleError("lower parameter pole before termination in " + f.to_string());
}

// Pure read-off; does not check lower-parameter admissibility (recognition
// can produce lists whose partial sums are only defined within a range).
inline Classification classify(const PFQ& f) {
    Classification c;
    auto n = truncation_index(f);
    if (n) {
        c.terminating = true;
        c.truncation = *n;
    }
    c.balance = Rational(0);
    for (const auto& b : f.lower) c.balance += b;
    for (const auto& a : f.upper) c.balance -= a;
    c.saalschutzian = c.terminating && f.arg == Rational(1) && c.balance == Rational(1);
    if (c.terminating) {
        c.convergent = true;
    } else if (f.p() <= f.q()) {
        c.convergent = true;
    } else if (f.p() == f.q() + 1) {
        Rational az = f.arg.abs();
        if (az < Rational(1))
            c.convergent = true;
        else if (f.arg == Rational(1))
            c.convergent = c.balance > Rational(0);
        else if (f.arg == Rational(-1))
            c.convergent = c.balance > Rational(-1);
    }
    return c;
}

// Index M of the regularized lower pole: terms k <= M vanish.
inline long regularized_pole(const PFQ& f) {
    for (const auto& b : f.lower)
        if (b.is_nonpositive_integer()) return -b.to_long();
    throw DomainError("no nonpositive-integer lower parameter in " + f.to_string());
}

// Exact k-th term.  Numerator zeros win over denominator zeros, which is the
// reading that makes equal-index cancellation (upper -n against lower -n) sum
// over k = 0..n with the pair dropped.
inline Rational pfq_term(const PFQ& f, long k) {
    if (k < 0) throw DomainError("pfq_term needs k >= 0");
    if (f.regularized) {
        long m = regularized_pole(f);
        if (k <= m) return Rational(0);
        Rational num = f.arg.pow(k);
        for (const auto& a : f.upper) num *= exact::pochhammer(a, k);
        if (num.is_zero()) return Rational(0);
        Rational den = exact::factorial(k) * exact::factorial(k - m - 1);
        for (const auto& b : f.lower)
            if (!b.is_nonpositive_integer()) den *= exact::pochhammer(b, k);
        if (den.is_zero()) throw PoleError("lower parameter pole in " + f.to_string());
        return num / den;
    }
    Rational num = f.arg.pow(k);
    for (const auto& a : f.upper) num *= exact::pochhammer(a, k);
    if (num.is_zero()) return Rational(0);
    Rational den = exact::factorial(k);
    for (const auto& b : f.lower) den *= exact::pochhammer(b, k);
    if (den.is_zero()) throw PoleError("lower parameter pole in " + f.to_string());
    return num / den;
}

// sum_{k=0}^{terms-1} t_k, by the term ratio.  Does not require the full
// series to be admissible: a lower-parameter pole past the last requested
// term is never touched, and one inside the range raises PoleError unless
// an upper parameter has already zeroed the running term.
inline Rational pfq_partial_sum(const PFQ& f, long terms) {
    if (terms <= 0) return Rational(0);
    Rational acc(0);
    long k0 = 0;
    Rational t(1);
    long reg_m = -1;
    if (f.regularized) {
        reg_m = regularized_pole(f);
        k0 = reg_m + 1;
        if (terms <= k0) return Rational(0);
        t = pfq_term(f, k0);
    }
    for (long k = k0; k < terms; ++k) {
        acc += t;
        if (k + 1 == terms) break;
        Rational num = f.arg;
        for (const auto& a : f.upper) num *= a + Rational(k);
        if (num.is_zero()) break;
        Rational den(k + 1);
        if (f.regularized) den *= Rational(k - reg_m);
        for (const auto& b : f.lower) {
            if (f.regularized && b.is_nonpositive_integer()) continue;
            den *= b + Rational(k);
        }
        if (den.is_zero()) throw PoleError("lower parameter pole in " + f.to_string());
        t *= num / den;
    }
    return acc;
}

// Full value of a terminating series.
inline Rational pfq_sum(const PFQ& f) {
    validate(f);
    auto c = classify(f);
    if (!c.terminating) throw NotTerminating();
    return pfq_partial_sum(f, c.truncation + 1);
}

struct PrefactoredPFQ {
    Rational prefactor;
    PFQ series;
};

// Reversal of a terminating series: summing k -> N - k gives
//   F = t_N * F(1-b-N ... , -N ; 1-a-N ... ; (-1)^(p+q+1)/z)
// where one -N upper copy moves out of the parameter list.
inline PrefactoredPFQ reverse(const PFQ& f) {
    if (f.regularized) throw NotApplicable("reverse needs an ordinary series");
    validate(f);
    auto c = classify(f);
    if (!c.terminating) throw NotTerminating();
    if (f.arg.is_zero()) throw DomainError("reverse needs nonzero argument");
    long n = c.truncation;
    PFQ out;
    for (const auto& b : f.lower) out.upper.push_back(Rational(1 - n) - b);
    out.upper.push_back(Rational(-n));
    bool dropped = false;
    for (const auto& a : f.upper) {
        if (!dropped && a == Rational(-n)) {
            dropped = true;
            continue;
        }
        out.lower.push_back(Rational(1 - n) - a);
    }
    long sign_pow = static_cast<long>(f.p() + f.q()) + 1;
    Rational sign = (sign_pow % 2 == 0) ? Rational(1) : Rational(-1);
    out.arg = sign / f.arg;
    return {pfq_term(f, n), out};
}

// Splits sum_{k>=0} t_k after index n: the remainder sum_{k>n} t_k equals
// t_{n+1} times a series with shifted parameters,
//   upper' = {a+n+1} u {1},  lower' = {b+n+1} u {n+2},  same argument.
inline PrefactoredPFQ split_tail(const PFQ& f, long n) {
    if (f.regularized) throw NotApplicable("split_tail needs an ordinary series");
    validate(f);
    if (n < 0) throw DomainError("split_tail needs n >= 0");
    PFQ tail;
    for (const auto& a : f.upper) tail.upper.push_back(a + Rational(n + 1));
    tail.upper.push_back(Rational(1));
    for (const auto& b : f.lower) tail.lower.push_back(b + Rational(n + 1));
    tail.lower.push_back(Rational(n + 2));
    tail.arg = f.arg;
    return {pfq_term(f, n + 1), tail};
}

}  // namespace hypsum::hyper
