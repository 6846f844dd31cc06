#pragma once

#include <functional>
#include <utility>

#include "hypsum/bigfloat.hpp"
#include "hypsum/closed_value.hpp"
#include "hypsum/pfq.hpp"

namespace hypsum::special {

using exact::AtomKey;
using exact::ClosedValue;
using exact::Rational;

// psi'(x) for rational x > 0.  Lift x far enough right that the factorial
// series  psi'(y) = sum_m  m! / ((m+1) (y)_{m+1})  converges geometrically,
// then add back the exact lift terms 1/(x+j)^2.  The tail after T is bounded
// by t_T (T+1)(y+T)/(y-1), the closed form of the majorant sum.
inline Real trigamma(const Rational& x, long digits) {
    if (x.sign() <= 0) throw DomainError("trigamma needs x > 0");
    long guard = 10;
    mpfr_prec_t prec = bits_for_digits(digits + guard);
    long lift = static_cast<long>(1.7 * (digits + 5)) + 2;

    Real acc(prec);
    for (long j = 0; j < lift; ++j) {
        Rational xj = x + Rational(j);
        acc += Real((xj * xj).inv(), prec);
    }

    Rational y = x + Rational(lift);
    Real yr(y, prec);
    Real eps(prec);
    mpfr_set_ui_2exp(eps.raw(), 1, -bits_for_digits(digits + guard / 2), MPFR_RNDN);
    Real t = Real(1, prec) / yr;  // t_0 = 1/y
    Real series(prec);
    for (long m = 0;; ++m) {
        Real bound = t * Real(m + 1, prec) * (yr + Real(m, prec)) / (yr - Real(1, prec));
        if (bound < eps) break;
        series += t;
        // t_{m+1} = t_m (m+1)^2 / ((m+2)(y+m+1))
        t = t * Real((m + 1) * (m + 1), prec) / (Real(m + 2, prec) * (yr + Real(m + 1, prec)));
        if (m > 8 * (digits + guard)) throw MaxTermsExceeded("trigamma series stalled");
    }
    return acc + series;
}

inline Real digamma(const Rational& x, long digits) {
    mpfr_prec_t prec = bits_for_digits(digits + 10);
    Real in(x, prec), out(prec);
    mpfr_digamma(out.raw(), in.raw(), MPFR_RNDN);
    return out;
}

// Li_2 on [-1, 1].  The power series is used only on [0, 1/2]; (1/2, 1) goes
// through the reflection  Li2(x) = pi^2/6 - ln(x)ln(1-x) - Li2(1-x)  and
// [-1, 0) through the Landen form  Li2(x) = -Li2(x/(x-1)) - ln^2(1-x)/2.
inline Real li2(const Real& x, long digits) {
    mpfr_prec_t prec = bits_for_digits(digits + 10);
    Real one(1, prec), zero(0, prec);
    if (x > one || x < -one) throw DomainError("li2 needs |x| <= 1");
    if (x == one) {
        Real p = Real::pi(prec);
        return p * p / Real(6, prec);
    }
    if (x == zero) return zero;
    if (x < zero) {
        Real u = x / (x - one);
        Real ln1mx = (one - x).log();
        return -li2(u, digits) - ln1mx * ln1mx / Real(2, prec);
    }
    Real half = Real(1, prec) / Real(2, prec);
    if (x > half) {
        Real p = Real::pi(prec);
        return p * p / Real(6, prec) - x.log() * (one - x).log() - li2(one - x, digits);
    }
    // series sum_{k>=1} x^k / k^2, tail < 2 (1/2)^{K+1}
    Real eps(prec);
    mpfr_set_ui_2exp(eps.raw(), 1, -bits_for_digits(digits + 5), MPFR_RNDN);
    Real pw = x, sum(prec);
    for (long k = 1;; ++k) {
        sum += pw / Real(k * k, prec);
        pw = pw * x;
        if (pw.abs() * Real(2, prec) < eps) break;
        if (k > 64 * (digits + 16)) throw MaxTermsExceeded("li2 series stalled");
    }
    return sum;
}

// |(Li2(x) - Li2(y)) - (Li2(y(1-x)/(x(1-y))) - Li2(y/x) - Li2((1-x)/(1-y))
//   + pi^2/6 - ln(x) ln((1-x)/(1-y)))| for x in (0,1), -x <= y <= x; all five
// dilogarithm arguments then lie in [-1,1].
inline Real li2_five_term_residual(const Real& xr, const Real& yr, long digits) {
    mpfr_prec_t prec = bits_for_digits(digits + 10);
    Real x = xr, y = yr, one(1, prec), zero(0, prec);
    if (!(x > zero && x < one && y <= x && -y <= x))
        throw DomainError("five-term residual needs 0 < x < 1, -x <= y <= x");
    Real lhs = li2(x, digits) - li2(y, digits);
    Real p = Real::pi(prec);
    Real rhs = li2(y * (one - x) / (x * (one - y)), digits) - li2(y / x, digits) -
               li2((one - x) / (one - y), digits) + p * p / Real(6, prec) -
               x.log() * ((one - x) / (one - y)).log();
    return (lhs - rhs).abs();
}

inline Real li2_five_term_residual(const Rational& xq, const Rational& yq, long digits) {
    mpfr_prec_t prec = bits_for_digits(digits + 10);
    return li2_five_term_residual(Real(xq, prec), Real(yq, prec), digits);
}

struct AcceleratedSum {
    Real estimate;
    Real bracket_lo;
    Real bracket_hi;
};

namespace detail {

// Cohen-Rodriguez Villegas-Zagier acceleration of sum_k (-1)^k a_k with
// a_k >= 0; for totally monotone a the error decays like (3+sqrt 8)^{-n}.
inline Real cvz_alternating(const std::function<Real(long)>& a, long digits) {
    mpfr_prec_t prec = bits_for_digits(digits + 12);
    long n = static_cast<long>(1.31 * (digits + 5)) + 10;
    Real d = (Real(3, prec) + Real(8, prec).sqrt()).pow_si(n);
    d = (d + Real(1, prec) / d) / Real(2, prec);
    Real b(-1, prec), c = -d, s(prec);
    for (long k = 0; k < n; ++k) {
        c = b - c;
        s += c * a(k);
        b = b * Real(k + n, prec) * Real(k - n, prec) /
            (Real(2 * k + 1, prec) / Real(2, prec) * Real(k + 1, prec));
    }
    return s / d;
}

}  // namespace detail

// Accelerates an alternating series given its signed rational terms and
// returns, alongside the estimate, the raw consecutive partial sums
// S_bracket_at and S_{bracket_at+1}, ordered; for an alternating series with
// decreasing |terms| these enclose the limit.
inline AcceleratedSum accelerate_alternating(const std::function<Rational(long)>& term,
                                             long digits, long bracket_at = 10000) {
    mpfr_prec_t prec = bits_for_digits(digits + 12);
    Rational t0 = term(0);
    if (t0.is_zero()) throw NotAlternating("first term vanishes");
    int sign0 = t0.sign();
    auto abs_term = [&](long k) {
        Rational t = term(k);
        int want = (k % 2 == 0) ? sign0 : -sign0;
        if (t.sign() != want) throw NotAlternating("sign pattern breaks at k=" + std::to_string(k));
        return Real(t.abs(), prec);
    };
    Real est = detail::cvz_alternating(abs_term, digits);
    if (sign0 < 0) est = -est;

    Real s(prec), lo(prec), hi(prec);
    for (long k = 0; k <= bracket_at + 1; ++k) {
        s += Real(term(k), prec);
        if (k == bracket_at) lo = s;
        if (k == bracket_at + 1) hi = s;
    }
    if (hi < lo) std::swap(lo, hi);
    return {est, lo, hi};
}

namespace detail {

// t_{k+1}/t_k of a pFq as an exact rational, with the regularized extra
// factor (k - M) in the denominator when applicable.
inline Rational pfq_ratio(const hyper::PFQ& f, long k, long reg_m) {
    Rational num(1), den(1);
    for (const auto& a : f.upper) num *= a + Rational(k);
    num *= f.arg;
    for (const auto& b : f.lower)
        if (!(f.regularized && b == Rational(-reg_m))) den *= b + Rational(k);
    den *= Rational(k + 1);
    if (f.regularized) den *= Rational(k) - Rational(reg_m);
    if (den.is_zero()) throw PoleError("series ratio pole at k=" + std::to_string(k));
    return num / den;
}

}  // namespace detail

// High-precision evaluation of a pFq at rational argument.  Terminating
// series sum exactly; |z| < 1 sums directly with a geometric tail bound;
// z = -1 accelerates the alternating tail; z = 1 with balance s > 0 uses
// Richardson extrapolation in M^{-s} on partial sums at M, 2M, 4M, ...
inline Real eval_pfq_numeric(const hyper::PFQ& f, long digits, long max_terms = 4000000) {
    mpfr_prec_t prec = bits_for_digits(digits + 15);
    auto cls = hyper::classify(f);
    if (cls.terminating) {
        long reg_m = f.regularized ? hyper::regularized_pole(f) : 0;
        long terms = cls.truncation + 1 + (f.regularized ? reg_m + 1 : 0);
        return Real(hyper::pfq_partial_sum(f, terms), prec);
    }

    long reg_m = f.regularized ? hyper::regularized_pole(f) : -1;
    long k0 = f.regularized ? reg_m + 1 : 0;
    Rational absz = f.arg.abs();

    if (absz < Rational(1)) {
        if (f.arg.is_zero()) return Real(hyper::pfq_term(f, k0), prec);
        Real eps(prec);
        mpfr_set_ui_2exp(eps.raw(), 1, -bits_for_digits(digits + 8), MPFR_RNDN);
        Rational r = (Rational(1) + absz) / 2;
        Real rr(r, prec), one(1, prec);
        Real t(hyper::pfq_term(f, k0), prec), sum = t;
        for (long k = k0;; ++k) {
            Rational rat = detail::pfq_ratio(f, k, reg_m);
            t.mul_rational(rat);
            sum += t;
            if (rat.abs() <= r && t.abs() * rr / (one - rr) < eps) break;
            if (k - k0 > max_terms) throw MaxTermsExceeded("pFq direct summation stalled");
        }
        return sum;
    }

    if (!cls.convergent) throw Divergent("pFq diverges at " + f.arg.to_string());

    if (f.arg == Rational(-1)) {
        // terms alternate in sign once k clears every parameter's scale; feed
        // the absolute values of the tail to the accelerator
        long start = k0;
        auto clear_param = [&](const Rational& p) {
            if (p.sign() < 0) start = std::max(start, static_cast<long>((-p).floor().get_si()) + 1);
        };
        for (const auto& a : f.upper) clear_param(a);
        for (const auto& b : f.lower) clear_param(b);
        Real head(prec);
        for (long k = k0; k < start; ++k) head += Real(hyper::pfq_term(f, k), prec);
        Rational tstart = hyper::pfq_term(f, start);
        if (tstart.is_zero()) throw NotAlternating("tail term vanishes");
        int sign0 = tstart.sign();
        std::vector<Rational> cache{tstart};
        auto abs_tail = [&](long j) {
            while (static_cast<long>(cache.size()) <= j) {
                long k = start + static_cast<long>(cache.size()) - 1;
                cache.push_back(cache.back() * detail::pfq_ratio(f, k, reg_m));
            }
            Rational t = cache[j];
            int want = (j % 2 == 0) ? sign0 : -sign0;
            if (t.sign() != want) throw NotAlternating("pFq tail not alternating");
            return Real(t.abs(), prec);
        };
        Real tail = detail::cvz_alternating(abs_tail, digits);
        if (sign0 < 0) tail = -tail;
        return head + tail;
    }

    // z = 1, balance s > 0: S(M) = S - M^{-s}(c_0 + c_1/M + ...), so each
    // extrapolation level j kills the M^{-(s+j)} term with weight 2^{s+j}.
    long levels = 13;
    long m0 = 128;
    if (m0 << levels > max_terms) throw MaxTermsExceeded("extrapolation budget exceeded");
    std::vector<Real> row;
    {
        Real t(hyper::pfq_term(f, k0), prec), sum = t;
        long next = m0, k = k0;
        for (long i = 0; i <= levels; ++i) {
            for (; k - k0 + 1 < next; ++k) {
                t.mul_rational(detail::pfq_ratio(f, k, reg_m));
                sum += t;
            }
            row.push_back(sum);
            next *= 2;
        }
    }
    Real two_s(prec);
    {
        Real s(cls.balance, prec), two(2, prec);
        mpfr_pow(two_s.raw(), two.raw(), s.raw(), MPFR_RNDN);
    }
    Real weight = two_s;  // 2^{s+j-1} at level j
    Real prev_best = row[0];
    for (long j = 1; j <= levels; ++j) {
        prev_best = row[0];
        std::vector<Real> nxt;
        for (std::size_t i = 0; i + 1 < row.size(); ++i)
            nxt.push_back((row[i + 1] * weight - row[i]) / (weight - Real(1, prec)));
        row = std::move(nxt);
        weight = weight * Real(2, prec);
    }
    Real err = (row[0] - prev_best).abs();
    Real eps(prec);
    mpfr_set_ui_2exp(eps.raw(), 1, -bits_for_digits(digits), MPFR_RNDN);
    if (!(err < eps)) throw MaxTermsExceeded("extrapolation at z=1 did not reach tolerance");
    return row[0];
}

// Numeric value of an exact ClosedValue.
inline Real eval_closed(const ClosedValue& v, long digits) {
    mpfr_prec_t prec = bits_for_digits(digits + 10);
    Real pi = Real::pi(prec);
    Real out(v.coeff, prec);
    if (v.sqrt_pi_exp != 0) {
        long e = v.sqrt_pi_exp;
        Real p = pi.pow_si(e >= 0 ? e / 2 : -((-e) / 2));
        if (e % 2 != 0) p = e > 0 ? p * pi.sqrt() : p / pi.sqrt();
        out = out * p;
    }
    Real sqrt5 = Real(5, prec).sqrt();
    for (const auto& [key, c] : v.atoms) {
        Real val(prec);
        switch (key.kind) {
            case AtomKey::Pi2: val = pi * pi; break;
            case AtomKey::TrigHalf:
                val = trigamma(Rational(2 * key.arg + 3, 2), digits);
                break;
            case AtomKey::LnS5:
                val = (Real(2, prec) * (Real(2, prec).sqrt() - Real(1, prec))).log();
                break;
            case AtomKey::LnSqPhi: {
                Real l = ((sqrt5 - Real(1, prec)) / Real(2, prec)).log();
                val = l * l;
                break;
            }
            case AtomKey::Li2Plus: val = li2(sqrt5 - Real(2, prec), digits); break;
            case AtomKey::Li2Minus: val = li2(Real(2, prec) - sqrt5, digits); break;
        }
        out += Real(c, prec) * val;
    }
    return out;
}

}  // namespace hypsum::special
