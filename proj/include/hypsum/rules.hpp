#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "hypsum/closed_value.hpp"
#include "hypsum/pfq.hpp"
#include "hypsum/special.hpp"

namespace hypsum::rules {

using exact::ClosedValue;
using exact::GammaValue;
using exact::Rational;
using hyper::PFQ;
using hyper::TransformExpr;

namespace detail {

inline bool contains(const std::vector<Rational>& v, const Rational& x) {
    return std::find(v.begin(), v.end(), x) != v.end();
}

// Copy with the first occurrence of x removed; x must be present.
inline std::vector<Rational> erase_one(std::vector<Rational> v, const Rational& x) {
    auto it = std::find(v.begin(), v.end(), x);
    if (it == v.end()) throw DomainError("erase_one: " + x.to_string() + " not present");
    v.erase(it);
    return v;
}

inline bool same_multiset(std::vector<Rational> a, std::vector<Rational> b) {
    if (a.size() != b.size()) return false;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    return a == b;
}

// Copy of f with the first upper equal to `from` replaced by `to`.
inline PFQ with_upper_replaced(PFQ f, const Rational& from, const Rational& to) {
    auto it = std::find(f.upper.begin(), f.upper.end(), from);
    if (it == f.upper.end())
        throw DomainError("upper parameter " + from.to_string() + " not present");
    *it = to;
    return f;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Summation theorems (closed values)
// ---------------------------------------------------------------------------

// 3F2(a, b, -n; c, 1+a+b-c-n; 1) = (c-a)_n (c-b)_n / ((c)_n (c-a-b)_n).
// The theorem is symmetric in the choice of c among the lower parameters;
// when one choice has a vanishing denominator the other is tried.
inline Rational sum_saalschutz(const PFQ& f) {
    if (f.regularized || f.p() != 3 || f.q() != 2 || f.arg != Rational(1))
        throw NotApplicable("needs an ordinary 3F2 at unit argument");
    hyper::validate(f);
    auto cls = hyper::classify(f);
    if (!cls.saalschutzian) throw NotApplicable("series is not Saalschutzian");
    long n = cls.truncation;
    auto rest = detail::erase_one(f.upper, Rational(-n));
    const Rational &a = rest[0], &b = rest[1];
    for (const Rational& c : f.lower) {
        Rational den = exact::pochhammer(c, n) * exact::pochhammer(c - a - b, n);
        if (den.is_zero()) continue;
        return exact::pochhammer(c - a, n) * exact::pochhammer(c - b, n) / den;
    }
    throw PoleError("denominator Pochhammer vanishes for either lower choice in " + f.to_string());
}

// 2F1(a, b; c; 1).  Terminating: Chu-Vandermonde (c-b)_n / (c)_n.  Otherwise
// Gauss, Gamma(c) Gamma(c-a-b) / (Gamma(c-a) Gamma(c-b)), which needs
// c-a-b > 0; the reciprocal gammas send the value to 0 at their poles.
inline GammaValue sum_gauss_unit(const PFQ& f) {
    if (f.regularized || f.p() != 2 || f.q() != 1 || f.arg != Rational(1))
        throw NotApplicable("needs an ordinary 2F1 at unit argument");
    hyper::validate(f);
    auto cls = hyper::classify(f);
    const Rational& c = f.lower[0];
    if (cls.terminating) {
        long n = cls.truncation;
        Rational b = detail::erase_one(f.upper, Rational(-n))[0];
        Rational den = exact::pochhammer(c, n);
        if (den.is_zero()) throw PoleError("(c)_n vanishes in " + f.to_string());
        return GammaValue(exact::pochhammer(c - b, n) / den);
    }
    if (!(cls.balance > Rational(0))) throw Divergent(f.to_string() + " diverges");
    for (const Rational& x : {c, cls.balance, c - f.upper[0], c - f.upper[1]})
        if (!x.is_half_integer())
            throw IrrationalResult("Gamma(" + x.to_string() + ") is not rational * sqrt(pi)^k");
    return exact::gamma_half_integer(c) * exact::gamma_half_integer(cls.balance) *
           exact::reciprocal_gamma_half_integer(c - f.upper[0]) *
           exact::reciprocal_gamma_half_integer(c - f.upper[1]);
}

// 2F1(a, b; (a+b+1)/2; 1/2) = sqrt(pi) Gamma((a+b+1)/2) / (Gamma((a+1)/2) Gamma((b+1)/2)).
// Reciprocal-gamma poles give 0; a pole of the leading gamma is an error.
inline GammaValue sum_gauss_second_half(const PFQ& f) {
    if (f.regularized || f.p() != 2 || f.q() != 1 || f.arg != Rational(1, 2))
        throw NotApplicable("needs an ordinary 2F1 at argument 1/2");
    const Rational &a = f.upper[0], &b = f.upper[1];
    if (Rational(2) * f.lower[0] != a + b + Rational(1))
        throw NotApplicable("lower parameter must be (a+b+1)/2");
    hyper::validate(f);
    Rational ha = (a + Rational(1)) / Rational(2), hb = (b + Rational(1)) / Rational(2);
    for (const Rational& x : {f.lower[0], ha, hb})
        if (!x.is_half_integer())
            throw IrrationalResult("Gamma(" + x.to_string() + ") is not rational * sqrt(pi)^k");
    GammaValue out = exact::gamma_half_integer(f.lower[0]) *
                     exact::reciprocal_gamma_half_integer(ha) *
                     exact::reciprocal_gamma_half_integer(hb);
    if (!out.is_zero()) out.sqrt_pi_exp += 1;
    return out;
}

// 1F0(a;; z) = (1-z)^(-a): binomial theorem for terminating a = -n, Newton
// series for integer a with |z| < 1.
inline Rational sum_binomial_1f0(const PFQ& f) {
    if (f.regularized || f.p() != 1 || f.q() != 0)
        throw NotApplicable("needs an ordinary 1F0");
    const Rational& a = f.upper[0];
    Rational base = Rational(1) - f.arg;
    if (a.is_nonpositive_integer()) return base.pow(-a.to_long());
    if (f.arg.is_zero()) return Rational(1);
    if (!(f.arg.abs() < Rational(1)))
        throw Divergent("1F0 needs |z| < 1 when nonterminating");
    if (!a.is_integer())
        throw IrrationalResult("(1-z)^(-(" + a.to_string() + ")) is not rational");
    return base.pow(-a.to_long());
}

// 4F3(1, a, b, c; 3-a, 3-b, 3-c; 1) =
//     Gamma[3-a, 3-b, 3-c, 4-a-b-c; 3-a-b, 3-a-c, 3-b-c] / (2(a-1)(b-1)(c-1))
//     - (2-a)(2-b)(2-c) / (2(a-1)(b-1)(c-1)).
inline Rational closed_7_5_3_6(const PFQ& f) {
    if (f.regularized || f.p() != 4 || f.q() != 3 || f.arg != Rational(1))
        throw NotApplicable("needs an ordinary 4F3 at unit argument");
    if (!detail::contains(f.upper, Rational(1)))
        throw NotApplicable("needs an upper parameter 1");
    auto abc = detail::erase_one(f.upper, Rational(1));
    std::vector<Rational> mirrored;
    mirrored.reserve(3);
    for (const Rational& x : abc) mirrored.push_back(Rational(3) - x);
    if (!detail::same_multiset(mirrored, f.lower))
        throw NotApplicable("lower parameters must be {3-a, 3-b, 3-c}");
    hyper::validate(f);
    const Rational &a = abc[0], &b = abc[1], &c = abc[2];
    Rational den = Rational(2) * (a - Rational(1)) * (b - Rational(1)) * (c - Rational(1));
    if (den.is_zero()) throw PoleError("degenerate parameters: one of a, b, c equals 1");
    for (const Rational& x :
         {Rational(3) - a, Rational(3) - b, Rational(3) - c, Rational(4) - a - b - c,
          Rational(3) - a - b, Rational(3) - a - c, Rational(3) - b - c})
        if (!x.is_half_integer())
            throw IrrationalResult("Gamma(" + x.to_string() + ") is not rational * sqrt(pi)^k");
    GammaValue g = exact::gamma_half_integer(Rational(3) - a) *
                   exact::gamma_half_integer(Rational(3) - b) *
                   exact::gamma_half_integer(Rational(3) - c) *
                   exact::gamma_half_integer(Rational(4) - a - b - c) /
                   (exact::gamma_half_integer(Rational(3) - a - b) *
                    exact::gamma_half_integer(Rational(3) - a - c) *
                    exact::gamma_half_integer(Rational(3) - b - c));
    if (g.sqrt_pi_exp != 0)
        throw IrrationalResult("gamma ratio leaves sqrt(pi)^" + std::to_string(g.sqrt_pi_exp));
    Rational correction = (Rational(2) - a) * (Rational(2) - b) * (Rational(2) - c);
    return (g.coeff - correction) / den;
}

// 3F2(a, b, 1; -a-m, -b-m; 1) for integer m >= -1:
//     (1/2) sum_{k=0}^{m+1} (a)_k (b)_k / ((-a-m)_k (-b-m)_k)
//     + 2^(2m-1) sqrt(pi) / ((1+m+2a)_m (1+m+2b)_m)
//       * Gamma[1-a, 1-b, -a-b-m-1/2; -a-b-m, 1/2-a-m, 1/2-b-m].
inline ClosedValue closed_7_4_4_31(const PFQ& f) {
    if (f.regularized || f.p() != 3 || f.q() != 2 || f.arg != Rational(1))
        throw NotApplicable("needs an ordinary 3F2 at unit argument");
    if (!detail::contains(f.upper, Rational(1)))
        throw NotApplicable("needs an upper parameter 1");
    auto ab = detail::erase_one(f.upper, Rational(1));
    const Rational &a = ab[0], &b = ab[1];
    long m = 0;
    bool found = false;
    for (int swap = 0; swap < 2 && !found; ++swap) {
        const Rational& la = f.lower[swap];
        const Rational& lb = f.lower[1 - swap];
        Rational mm = -(a + la);
        if (mm.is_integer() && mm >= Rational(-1) && lb == -(b + mm)) {
            m = mm.to_long();
            found = true;
        }
    }
    if (!found) throw NotApplicable("lower parameters must be {-a-m, -b-m}, integer m >= -1");
    hyper::validate(f);

    Rational finite(0);
    for (long k = 0; k <= m + 1; ++k) {
        Rational den = exact::pochhammer(-a - Rational(m), k) * exact::pochhammer(-b - Rational(m), k);
        if (den.is_zero()) throw PoleError("finite-sum Pochhammer vanishes in " + f.to_string());
        finite += exact::pochhammer(a, k) * exact::pochhammer(b, k) / den;
    }

    for (const Rational& x :
         {Rational(1) - a, Rational(1) - b, -a - b - Rational(m) - Rational(1, 2),
          -a - b - Rational(m), Rational(1, 2) - a - Rational(m), Rational(1, 2) - b - Rational(m)})
        if (!x.is_half_integer())
            throw IrrationalResult("Gamma(" + x.to_string() + ") is not rational * sqrt(pi)^k");
    GammaValue g = exact::gamma_half_integer(Rational(1) - a) *
                   exact::gamma_half_integer(Rational(1) - b) *
                   exact::gamma_half_integer(-a - b - Rational(m) - Rational(1, 2)) /
                   (exact::gamma_half_integer(-a - b - Rational(m)) *
                    exact::gamma_half_integer(Rational(1, 2) - a - Rational(m)) *
                    exact::gamma_half_integer(Rational(1, 2) - b - Rational(m)));
    Rational p1 = exact::pochhammer_signed(Rational(1 + m) + Rational(2) * a, m);
    Rational p2 = exact::pochhammer_signed(Rational(1 + m) + Rational(2) * b, m);
    if (p1.is_zero() || p2.is_zero())
        throw PoleError("prefactor Pochhammer vanishes in " + f.to_string());
    GammaValue second = g * (Rational(2).pow(2 * m - 1) / (p1 * p2));
    if (!second.is_zero()) second.sqrt_pi_exp += 1;

    ClosedValue out(finite / Rational(2));
    ClosedValue tail(second);
    if (!out.is_zero() && !tail.is_zero() && tail.sqrt_pi_exp != 0)
        throw IrrationalResult("sqrt(pi) part does not cancel in " + f.to_string());
    out += tail;
    return out;
}

// ---------------------------------------------------------------------------
// Transformations (series rewrites)
// ---------------------------------------------------------------------------

// Terminating Saalschutzian 4F3(-n, a1, a2, a3; b1, b2, 1-s-n; 1), with
// s = b1+b2-a1-a2-a3, equals
//     (a1+s)_n (a2+s)_n (a3)_n / ((b1)_n (b2)_n (s)_n)
//     * 4F3(b1-a3, b2-a3, s, -n; a1+s, a2+s, 1-a3-n; 1).
inline TransformExpr transform_whipple_1_6(const PFQ& f) {
    if (f.regularized || f.p() != 4 || f.q() != 3 || f.arg != Rational(1))
        throw NotApplicable("needs an ordinary 4F3 at unit argument");
    hyper::validate(f);
    auto cls = hyper::classify(f);
    if (!cls.terminating) throw NotTerminating();
    if (cls.balance != Rational(1)) throw NotApplicable("series must be Saalschutzian");
    long n = cls.truncation;
    auto rest = detail::erase_one(f.upper, Rational(-n));
    const Rational &a1 = rest[0], &a2 = rest[1], &a3 = rest[2];
    const Rational &b1 = f.lower[0], &b2 = f.lower[1];
    Rational s = b1 + b2 - a1 - a2 - a3;
    Rational den = exact::pochhammer(b1, n) * exact::pochhammer(b2, n) * exact::pochhammer(s, n);
    if (den.is_zero()) throw PoleError("(s)_n vanishes in " + f.to_string());
    Rational pre =
        exact::pochhammer(a1 + s, n) * exact::pochhammer(a2 + s, n) * exact::pochhammer(a3, n) / den;
    PFQ out;
    out.upper = {b1 - a3, b2 - a3, s, Rational(-n)};
    out.lower = {a1 + s, a2 + s, Rational(1) - a3 - Rational(n)};
    out.arg = Rational(1);
    return hyper::scaled_series(ClosedValue(pre), std::move(out));
}

// 5F4 at unit argument carrying two unit-shift pairs, rho and sigma upstairs
// against rho+1 and sigma+1 downstairs.  Termwise,
//     rho sigma / ((rho+k)(sigma+k))
//       = [sigma/(sigma-rho)] rho/(rho+k) - [rho/(sigma-rho)] sigma/(sigma+k),
// so F = sigma/(sigma-rho) F[drop sigma] - rho/(sigma-rho) F[drop rho].
inline TransformExpr split_two_balanced_7_2_3_20(const PFQ& f) {
    if (f.regularized || f.p() != 5 || f.q() != 4 || f.arg != Rational(1))
        throw NotApplicable("needs an ordinary 5F4 at unit argument");
    hyper::validate(f);
    auto paired = [&](const Rational& u) { return detail::contains(f.lower, u + Rational(1)); };
    for (std::size_t i = 0; i < f.upper.size(); ++i) {
        const Rational& rho = f.upper[i];
        if (rho.is_zero() || !paired(rho)) continue;
        for (std::size_t j = i + 1; j < f.upper.size(); ++j) {
            const Rational& sigma = f.upper[j];
            if (sigma.is_zero() || sigma == rho || !paired(sigma)) continue;
            auto drop = [&](std::size_t idx, const Rational& u) {
                PFQ g;
                g.upper = f.upper;
                g.upper.erase(g.upper.begin() + static_cast<std::ptrdiff_t>(idx));
                g.lower = detail::erase_one(f.lower, u + Rational(1));
                g.arg = f.arg;
                return g;
            };
            Rational w = sigma - rho;
            return {{ClosedValue(sigma / w), drop(j, sigma)},
                    {ClosedValue(-(rho / w)), drop(i, rho)}};
        }
    }
    throw NotApplicable("no distinct nonzero pair (rho, rho+1), (sigma, sigma+1) found");
}

struct ShiftResult {
    ClosedValue prefactor;
    PFQ shifted;
};

// Regularized series with the lower pole -M: terms start at k = M+1, and
// reindexing k = M+1+j gives
//     z^(M+1) prod (a)_{M+1} / (Gamma(M+2) prod_{b != -M} (b)_{M+1})
// times the ordinary series with every parameter shifted by M+1 and a new
// lower M+2.  The output is left uncancelled; see cancel_equal_pairs.
inline ShiftResult shift_negative_lower_7_2_3_6(const PFQ& f) {
    if (!f.regularized) throw NotApplicable("needs a regularized series");
    hyper::validate(f);
    long m = hyper::regularized_pole(f);
    Rational shift(m + 1);
    Rational pre = f.arg.pow(m + 1) / exact::factorial(m + 1);
    PFQ out;
    for (const Rational& a : f.upper) {
        pre *= exact::pochhammer(a, m + 1);
        out.upper.push_back(a + shift);
    }
    bool dropped = false;
    for (const Rational& b : f.lower) {
        if (!dropped && b == Rational(-m)) {
            dropped = true;
            continue;
        }
        pre /= exact::pochhammer(b, m + 1);
        out.lower.push_back(b + shift);
    }
    out.lower.push_back(Rational(m + 2));
    out.arg = f.arg;
    return {ClosedValue(pre), std::move(out)};
}

// Removes equal upper/lower pairs.  Nonpositive-integer pairs stay: there the
// upper truncates what the lower would poison, and dropping both would extend
// the sum past the truncation point.
inline PFQ cancel_equal_pairs(const PFQ& f) {
    PFQ out = f;
    bool changed = true;
    while (changed) {
        changed = false;
        for (auto it = out.upper.begin(); it != out.upper.end() && !changed; ++it) {
            if (it->is_nonpositive_integer()) continue;
            auto jt = std::find(out.lower.begin(), out.lower.end(), *it);
            if (jt == out.lower.end()) continue;
            out.lower.erase(jt);
            out.upper.erase(it);
            changed = true;
        }
    }
    return out;
}

// At unit argument an upper 1 against a lower 2 drops out:
//     F = P (F' - 1),   P = prod_other (b-1) / prod_other (a-1),
// where F' carries every remaining parameter decremented by 1.
inline TransformExpr reduce_unit_7_2_3_17(const PFQ& f) {
    if (f.regularized || f.arg != Rational(1)) throw NotApplicable("needs unit argument");
    if (!detail::contains(f.upper, Rational(1)) || !detail::contains(f.lower, Rational(2)))
        throw NotApplicable("needs an upper 1 and a lower 2");
    hyper::validate(f);
    auto ups = detail::erase_one(f.upper, Rational(1));
    auto lows = detail::erase_one(f.lower, Rational(2));
    Rational p(1);
    PFQ dec;
    dec.arg = Rational(1);
    for (const Rational& a : ups) {
        if (a == Rational(1)) throw PoleError("second unit upper parameter in " + f.to_string());
        p /= a - Rational(1);
        dec.upper.push_back(a - Rational(1));
    }
    for (const Rational& b : lows) {
        if (b == Rational(1)) throw PoleError("lower parameter 1 decrements to a pole");
        p *= b - Rational(1);
        dec.lower.push_back(b - Rational(1));
    }
    return {{ClosedValue(p), std::move(dec)}, {ClosedValue(-p), std::nullopt}};
}

// sigma F(sigma+1) - rho F(rho+1) = (sigma - rho) F, exact termwise at any
// argument; sigma, rho are designated upper parameters.
inline TransformExpr contiguous_7_2_3_25(const PFQ& f, const Rational& sigma, const Rational& rho) {
    if (f.regularized) throw NotApplicable("needs an ordinary series");
    if (sigma == rho) throw NotApplicable("sigma and rho must differ");
    if (sigma.is_zero() || rho.is_zero()) throw NotApplicable("sigma and rho must be nonzero");
    if (!detail::contains(f.upper, sigma) || !detail::contains(f.upper, rho))
        throw NotApplicable("sigma and rho must be upper parameters");
    hyper::validate(f);
    Rational w = sigma - rho;
    return {{ClosedValue(sigma / w), detail::with_upper_replaced(f, sigma, sigma + Rational(1))},
            {ClosedValue(-(rho / w)), detail::with_upper_replaced(f, rho, rho + Rational(1))}};
}

struct ThreeTermCoeffs {
    Rational cplus, c0, cminus;  // cplus F(a1+1) + c0 F(a1) + cminus F(a1-1) = 0
};

// Three-term contiguous relation in a1 for 3F2(a1, a2, a3; b1, b2; 1).
inline ThreeTermCoeffs three_term_16_3_7(const PFQ& f) {
    if (f.regularized || f.p() != 3 || f.q() != 2 || f.arg != Rational(1))
        throw NotApplicable("needs an ordinary 3F2 at unit argument");
    hyper::validate(f);
    const Rational &a1 = f.upper[0], &a2 = f.upper[1], &a3 = f.upper[2];
    const Rational &b1 = f.lower[0], &b2 = f.lower[1];
    ThreeTermCoeffs c;
    c.cplus = a1 * (b1 + b2 - a1 - a2 - a3 - Rational(1));
    c.c0 = (Rational(2) * a1 - b1) * (Rational(2) * a1 - b2) + a1 - a1 * a1 -
           (a1 - a2) * (a1 - a3);
    c.cminus = -((a1 - b1) * (a1 - b2));
    return c;
}

struct ThomaeResult {
    GammaValue prefactor;
    PFQ transformed;
};

// 3F2(n+1, n+2, 1; n+k+3, n-k+2; 1) = (n+k+2) 3F2(1-k, -k, 1; n-k+2, 2; 1)
// for integers n >= 1, 0 <= k <= n.  Implemented for this family only.
inline ThomaeResult thomae_16_4_11(const PFQ& f) {
    if (f.regularized || f.p() != 3 || f.q() != 2 || f.arg != Rational(1))
        throw NotApplicable("needs an ordinary 3F2 at unit argument");
    if (!detail::contains(f.upper, Rational(1)))
        throw NotApplicable("needs an upper parameter 1");
    auto pair = detail::erase_one(f.upper, Rational(1));
    Rational x = std::min(pair[0], pair[1]);
    if (!x.is_integer() || std::max(pair[0], pair[1]) != x + Rational(1))
        throw NotApplicable("upper parameters must be consecutive integers n+1, n+2");
    long n = x.to_long() - 1;
    if (n < 1) throw NotApplicable("needs n >= 1");
    std::optional<long> k;
    for (int swap = 0; swap < 2 && !k; ++swap) {
        Rational cand = f.lower[swap] - Rational(n + 3);
        if (cand.is_integer() && f.lower[1 - swap] == Rational(n) - cand + Rational(2)) {
            long kv = cand.to_long();
            if (kv >= 0 && kv <= n) k = kv;
        }
    }
    if (!k) throw NotApplicable("lower parameters must be {n+k+3, n-k+2} with 0 <= k <= n");
    hyper::validate(f);
    PFQ out;
    out.upper = {Rational(1 - *k), Rational(-*k), Rational(1)};
    out.lower = {Rational(n - *k + 2), Rational(2)};
    out.arg = Rational(1);
    return {GammaValue(Rational(n + *k + 2)), std::move(out)};
}

// ---------------------------------------------------------------------------
// Function-valued evaluations
// ---------------------------------------------------------------------------

// 3F2(1, 1, 3/2; 2, 2; z) = (4/z) ln(2 (1 - sqrt(1-z)) / z) for z <= 1, z != 0.
inline special::Real eval_365(const Rational& z, long digits) {
    if (z.is_zero() || z > Rational(1)) throw DomainError("eval_365 needs z <= 1, z != 0");
    mpfr_prec_t prec = special::bits_for_digits(digits + 12);
    special::Real zr(z, prec), one(1, prec);
    special::Real inner = special::Real(2, prec) * (one - (one - zr).sqrt()) / zr;
    return special::Real(4, prec) / zr * inner.log();
}

// 3F2(1/2, 1, 1; 3/2, 3/2; -z) = ((1-x^2)/(2x)) (Li2(x) - Li2(-x)) where
// x in (0,1) solves z (1-x^2)^2 = 4 x^2 (root x = (sqrt(1+z)-1)/sqrt(z)).
inline special::Real eval_413(const Rational& z, long digits) {
    if (!(z > Rational(0))) throw DomainError("eval_413 needs z > 0");
    mpfr_prec_t prec = special::bits_for_digits(digits + 12);
    special::Real zr(z, prec), one(1, prec);
    special::Real x = ((one + zr).sqrt() - one) / zr.sqrt();
    special::Real x2 = x * x;
    special::Real residual = zr * (one - x2) * (one - x2) - special::Real(4, prec) * x2;
    special::Real tol(1, prec);
    tol = tol / special::Real(2, prec).pow_si(static_cast<long>(prec / 2));
    if (!(x > special::Real(0, prec)) || !(x < one) || residual.abs() > tol)
        throw RootNotFound("no root of z(1-x^2)^2 = 4x^2 in (0,1) for z = " + z.to_string());
    return (one - x2) / (special::Real(2, prec) * x) *
           (special::li2(x, digits + 6) - special::li2(-x, digits + 6));
}

// ---------------------------------------------------------------------------
// Registry and randomized trials
// ---------------------------------------------------------------------------

struct Rule {
    std::string id;
    std::string citation;
    std::function<bool(const PFQ&)> applies;
    std::function<TransformExpr(const PFQ&)> apply;
    // One randomized oracle check; nullopt on success, message on mismatch.
    std::function<std::optional<std::string>(std::mt19937_64&)> trial;
};

struct TrialReport {
    std::string rule_id;
    std::uint64_t seed = 0;
    long requested = 0;
    long passed = 0;
    std::vector<std::string> failures;
    bool ok() const { return passed == requested && failures.empty(); }
};

namespace trial {

// Thrown by generators to reject a draw that builds no admissible instance.
struct Resample {};

inline long rnd(std::mt19937_64& rng, long lo, long hi) {
    return lo + static_cast<long>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

// Half-integer in [lo, hi] (endpoints in units of 1/2).
inline Rational half(std::mt19937_64& rng, long lo2, long hi2) {
    return Rational(rnd(rng, lo2, hi2), 2);
}

inline special::Real tol_digits(long digits, mpfr_prec_t prec) {
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(digits));
    return special::Real(Rational(mpz_class(1), p), prec);
}

inline std::optional<std::string> mismatch(const PFQ& f, const std::string& got,
                                           const std::string& want) {
    return f.to_string() + ": rule gives " + got + ", direct sum gives " + want;
}

inline std::optional<std::string> saalschutz(std::mt19937_64& rng) {
    long n = rnd(rng, 0, 8);
    Rational a = half(rng, -8, 8), b = half(rng, -8, 8), c = half(rng, -8, 8);
    PFQ f;
    f.upper = {a, b, Rational(-n)};
    f.lower = {c, Rational(1) + a + b - c - Rational(n)};
    f.arg = Rational(1);
    hyper::validate(f);
    Rational want = hyper::pfq_sum(f);
    Rational got = sum_saalschutz(f);
    if (got == want) return std::nullopt;
    return mismatch(f, got.to_string(), want.to_string());
}

inline std::optional<std::string> gauss_unit(std::mt19937_64& rng) {
    long n = rnd(rng, 0, 10);
    PFQ f;
    f.upper = {Rational(-n), half(rng, -10, 10)};
    f.lower = {half(rng, -10, 10)};
    f.arg = Rational(1);
    hyper::validate(f);
    Rational want = hyper::pfq_sum(f);
    GammaValue got = sum_gauss_unit(f);
    if (got == GammaValue(want)) return std::nullopt;
    return mismatch(f, got.to_string(), want.to_string());
}

inline std::optional<std::string> gauss_second_half(std::mt19937_64& rng) {
    Rational a(-rnd(rng, 0, 8)), b(rnd(rng, -6, 6));
    PFQ f;
    f.upper = {a, b};
    f.lower = {(a + b + Rational(1)) / Rational(2)};
    f.arg = Rational(1, 2);
    hyper::validate(f);
    Rational want = hyper::pfq_sum(f);
    GammaValue got = sum_gauss_second_half(f);
    if (got == GammaValue(want)) return std::nullopt;
    return mismatch(f, got.to_string(), want.to_string());
}

inline std::optional<std::string> binom_1f0(std::mt19937_64& rng) {
    PFQ f;
    f.arg = Rational(rnd(rng, -12, 12), rnd(rng, 1, 4));
    if (rng() % 2 == 0) {
        f.upper = {Rational(-rnd(rng, 0, 10))};
        Rational want = hyper::pfq_sum(f);
        Rational got = sum_binomial_1f0(f);
        if (got == want) return std::nullopt;
        return mismatch(f, got.to_string(), want.to_string());
    }
    f.upper = {Rational(rnd(rng, 1, 8))};
    f.arg = Rational(rnd(rng, -6, 6), 8);
    Rational got = sum_binomial_1f0(f);
    mpfr_prec_t prec = special::bits_for_digits(40);
    special::Real want = special::eval_pfq_numeric(f, 40);
    special::Real diff = (special::Real(got, prec) - want).abs();
    if (diff <= tol_digits(30, prec)) return std::nullopt;
    return mismatch(f, got.to_string(), want.to_string(30));
}

inline std::optional<std::string> p7536(std::mt19937_64& rng) {
    Rational a(rnd(rng, -5, 5)), b(rnd(rng, -5, 5)), c(rnd(rng, -5, 5));
    if (a > Rational(0) && b > Rational(0) && c > Rational(0)) throw Resample{};
    PFQ f;
    f.upper = {Rational(1), a, b, c};
    f.lower = {Rational(3) - a, Rational(3) - b, Rational(3) - c};
    f.arg = Rational(1);
    hyper::validate(f);
    Rational want = hyper::pfq_sum(f);
    Rational got = closed_7_5_3_6(f);
    if (got == want) return std::nullopt;
    return mismatch(f, got.to_string(), want.to_string());
}

inline std::optional<std::string> p74431(std::mt19937_64& rng) {
    long m = rnd(rng, -1, 3);
    long na = rnd(rng, std::max(0L, m + 1), m + 6);
    long nb = rnd(rng, std::max(0L, m + 1), m + 6);
    PFQ f;
    f.upper = {Rational(-na), Rational(-nb), Rational(1)};
    f.lower = {Rational(na - m), Rational(nb - m)};
    f.arg = Rational(1);
    hyper::validate(f);
    Rational want = hyper::pfq_sum(f);
    Rational got = closed_7_4_4_31(f).to_rational();
    if (got == want) return std::nullopt;
    return mismatch(f, got.to_string(), want.to_string());
}

inline std::optional<std::string> whipple(std::mt19937_64& rng) {
    long n = rnd(rng, 0, 7);
    Rational a1 = half(rng, -6, 8), a2 = half(rng, -6, 8), a3 = half(rng, -6, 8);
    Rational b1 = half(rng, -6, 8), b2 = half(rng, -6, 8);
    PFQ f;
    f.upper = {Rational(-n), a1, a2, a3};
    f.lower = {b1, b2, Rational(1) - (b1 + b2 - a1 - a2 - a3) - Rational(n)};
    f.arg = Rational(1);
    hyper::validate(f);
    Rational want = hyper::pfq_sum(f);
    ClosedValue got = hyper::exact_eval(transform_whipple_1_6(f));
    if (got == ClosedValue(want)) return std::nullopt;
    return mismatch(f, got.to_string(), want.to_string());
}

inline std::optional<std::string> split_p72320(std::mt19937_64& rng) {
    long n = rnd(rng, 0, 7);
    Rational rho = half(rng, -7, 7), sigma = half(rng, -7, 7);
    if (rho.is_zero() || sigma.is_zero() || rho == sigma) throw Resample{};
    PFQ f;
    f.upper = {rho, sigma, Rational(-n), half(rng, -5, 7), half(rng, -5, 7)};
    f.lower = {rho + Rational(1), sigma + Rational(1), half(rng, -5, 9), half(rng, -5, 9)};
    f.arg = Rational(1);
    hyper::validate(f);
    Rational want = hyper::pfq_sum(f);
    ClosedValue got = hyper::exact_eval(split_two_balanced_7_2_3_20(f));
    if (got == ClosedValue(want)) return std::nullopt;
    return mismatch(f, got.to_string(), want.to_string());
}

inline std::optional<std::string> shift_p7236(std::mt19937_64& rng) {
    long m = rnd(rng, 0, 4);
    long n = rnd(rng, std::max(0L, m - 1), m + 6);
    Rational b = half(rng, -9, 9);
    if (b.is_nonpositive_integer()) throw Resample{};
    PFQ f;
    f.upper = {Rational(-n), half(rng, -7, 7), half(rng, -7, 7)};
    f.lower = {Rational(-m), b};
    f.arg = Rational(rnd(rng, -8, 8), rnd(rng, 1, 4));
    f.regularized = true;
    hyper::validate(f);
    Rational want = hyper::pfq_sum(f);
    ShiftResult r = shift_negative_lower_7_2_3_6(f);
    Rational got(0);
    if (!r.prefactor.is_zero()) {
        got = r.prefactor.to_rational() * hyper::pfq_sum(r.shifted);
        PFQ cancelled = cancel_equal_pairs(r.shifted);
        if (hyper::pfq_sum(cancelled) * r.prefactor.to_rational() != got)
            return mismatch(f, "cancel_equal_pairs changed the value", got.to_string());
    }
    if (got == want) return std::nullopt;
    return mismatch(f, got.to_string(), want.to_string());
}

inline std::optional<std::string> reduce_p72317(std::mt19937_64& rng) {
    long n = rnd(rng, 0, 8);
    PFQ f;
    f.upper = {Rational(1), Rational(-n), half(rng, -7, 7)};
    f.lower = {Rational(2), half(rng, -7, 9)};
    f.arg = Rational(1);
    hyper::validate(f);
    Rational want = hyper::pfq_sum(f);
    ClosedValue got = hyper::exact_eval(reduce_unit_7_2_3_17(f));
    if (got == ClosedValue(want)) return std::nullopt;
    return mismatch(f, got.to_string(), want.to_string());
}

inline std::optional<std::string> contig_p72325(std::mt19937_64& rng) {
    long n = rnd(rng, 0, 8);
    Rational sigma = half(rng, -7, 7), rho = half(rng, -7, 7);
    if (sigma.is_zero() || rho.is_zero() || sigma == rho) throw Resample{};
    PFQ f;
    f.upper = {sigma, rho, Rational(-n)};
    f.lower = {half(rng, -7, 9), half(rng, -7, 9)};
    f.arg = Rational(rnd(rng, -4, 4), rnd(rng, 1, 3));
    if (f.arg.is_zero()) throw Resample{};
    hyper::validate(f);
    Rational want = hyper::pfq_sum(f);
    ClosedValue got = hyper::exact_eval(contiguous_7_2_3_25(f, sigma, rho));
    if (got == ClosedValue(want)) return std::nullopt;
    return mismatch(f, got.to_string(), want.to_string());
}

inline std::optional<std::string> dlmf_16_3_7(std::mt19937_64& rng) {
    long n = rnd(rng, 0, 8);
    Rational a1 = half(rng, -7, 7);
    PFQ f;
    f.upper = {a1, Rational(-n), half(rng, -7, 7)};
    f.lower = {half(rng, -7, 9), half(rng, -7, 9)};
    f.arg = Rational(1);
    hyper::validate(f);
    ThreeTermCoeffs c = three_term_16_3_7(f);
    Rational residual =
        c.cplus * hyper::pfq_sum(detail::with_upper_replaced(f, a1, a1 + Rational(1))) +
        c.c0 * hyper::pfq_sum(f) +
        c.cminus * hyper::pfq_sum(detail::with_upper_replaced(f, a1, a1 - Rational(1)));
    if (residual.is_zero()) return std::nullopt;
    return mismatch(f, "residual " + residual.to_string(), "0");
}

inline std::optional<std::string> dlmf_16_4_11(std::mt19937_64& rng) {
    long n = rnd(rng, 1, 8);
    long k = rnd(rng, 1, n);
    PFQ f;
    f.upper = {Rational(n + 1), Rational(n + 2), Rational(1)};
    f.lower = {Rational(n + k + 3), Rational(n - k + 2)};
    f.arg = Rational(1);
    // Independent value: the input is the tail of 2F1(k, k+1; 2k+2; 1) split
    // after index n-k, and that 2F1 sums to binom(2k+1, k+1) by Gauss.
    PFQ g;
    g.upper = {Rational(k), Rational(k + 1)};
    g.lower = {Rational(2 * k + 2)};
    g.arg = Rational(1);
    Rational cut_term = hyper::pfq_term(g, n - k + 1);
    Rational want =
        (exact::binomial(2 * k + 1, k + 1) - hyper::pfq_partial_sum(g, n - k + 1)) / cut_term;
    ThomaeResult r = thomae_16_4_11(f);
    Rational got = r.prefactor.to_rational() * hyper::pfq_sum(r.transformed);
    if (got == want) return std::nullopt;
    return mismatch(f, got.to_string(), want.to_string());
}

inline std::optional<std::string> eval_p741365(std::mt19937_64& rng) {
    long q = rnd(rng, 2, 16);
    long p = rnd(rng, -q, q - 1);
    if (p == 0) throw Resample{};
    Rational z(p, q);
    PFQ f;
    f.upper = {Rational(1), Rational(1), Rational(3, 2)};
    f.lower = {Rational(2), Rational(2)};
    f.arg = z;
    mpfr_prec_t prec = special::bits_for_digits(50);
    special::Real got = eval_365(z, 50);
    special::Real want = special::eval_pfq_numeric(f, 50);
    if ((got - want).abs() <= tol_digits(40, prec)) return std::nullopt;
    return mismatch(f, got.to_string(30), want.to_string(30));
}

inline std::optional<std::string> eval_p74313(std::mt19937_64& rng) {
    long q = rnd(rng, 2, 16);
    long p = rnd(rng, 1, q);
    Rational z(p, q);
    PFQ f;
    f.upper = {Rational(1, 2), Rational(1), Rational(1)};
    f.lower = {Rational(3, 2), Rational(3, 2)};
    f.arg = -z;
    mpfr_prec_t prec = special::bits_for_digits(50);
    special::Real got = eval_413(z, 50);
    special::Real want = special::eval_pfq_numeric(f, 50);
    if ((got - want).abs() <= tol_digits(40, prec)) return std::nullopt;
    return mismatch(f, got.to_string(30), want.to_string(30));
}

}  // namespace trial

namespace detail {

// "Applies" probe: shape rejections are NotApplicable/NotTerminating; any
// other math error means the shape matched but the instance is degenerate.
template <class Op>
bool probe(Op&& op, const PFQ& f) {
    try {
        (void)op(f);
        return true;
    } catch (const NotApplicable&) {
        return false;
    } catch (const NotTerminating&) {
        return false;
    } catch (const MathError&) {
        return true;
    }
}

}  // namespace detail

inline const std::vector<Rule>& rule_registry() {
    static const std::vector<Rule> rules = [] {
        using hyper::constant_expr;
        using hyper::scaled_series;
        std::vector<Rule> r;

        r.push_back({"saalschutz", "Saalschutz's theorem (DLMF 16.4.3)",
                     [](const PFQ& f) { return detail::probe(sum_saalschutz, f); },
                     [](const PFQ& f) { return constant_expr(ClosedValue(sum_saalschutz(f))); },
                     trial::saalschutz});

        r.push_back({"gauss-unit", "Gauss / Chu-Vandermonde (DLMF 15.4.20, 15.4.24)",
                     [](const PFQ& f) { return detail::probe(sum_gauss_unit, f); },
                     [](const PFQ& f) { return constant_expr(ClosedValue(sum_gauss_unit(f))); },
                     trial::gauss_unit});

        r.push_back({"gauss-second-half", "Gauss second theorem (Prudnikov 7.3.7(5))",
                     [](const PFQ& f) { return detail::probe(sum_gauss_second_half, f); },
                     [](const PFQ& f) {
                         return constant_expr(ClosedValue(sum_gauss_second_half(f)));
                     },
                     trial::gauss_second_half});

        r.push_back({"binom-1f0", "binomial theorem (DLMF 15.4.6)",
                     [](const PFQ& f) { return detail::probe(sum_binomial_1f0, f); },
                     [](const PFQ& f) { return constant_expr(ClosedValue(sum_binomial_1f0(f))); },
                     trial::binom_1f0});

        r.push_back({"p7536", "Prudnikov 7.5.3(6)",
                     [](const PFQ& f) { return detail::probe(closed_7_5_3_6, f); },
                     [](const PFQ& f) { return constant_expr(ClosedValue(closed_7_5_3_6(f))); },
                     trial::p7536});

        r.push_back({"p74431", "Prudnikov 7.4.4(31)",
                     [](const PFQ& f) { return detail::probe(closed_7_4_4_31, f); },
                     [](const PFQ& f) { return constant_expr(closed_7_4_4_31(f)); },
                     trial::p74431});

        r.push_back({"whipple-1-6", "Whipple's terminating Saalschutzian 4F3 transformation",
                     [](const PFQ& f) { return detail::probe(transform_whipple_1_6, f); },
                     [](const PFQ& f) { return transform_whipple_1_6(f); }, trial::whipple});

        r.push_back({"split-p72320", "Prudnikov 7.2.3(20)",
                     [](const PFQ& f) { return detail::probe(split_two_balanced_7_2_3_20, f); },
                     [](const PFQ& f) { return split_two_balanced_7_2_3_20(f); },
                     trial::split_p72320});

        r.push_back({"shift-p7236", "Prudnikov 7.2.3(6)",
                     [](const PFQ& f) { return detail::probe(shift_negative_lower_7_2_3_6, f); },
                     [](const PFQ& f) {
                         ShiftResult s = shift_negative_lower_7_2_3_6(f);
                         return scaled_series(s.prefactor, s.shifted);
                     },
                     trial::shift_p7236});

        r.push_back({"reduce-p72317", "Prudnikov 7.2.3(17)",
                     [](const PFQ& f) { return detail::probe(reduce_unit_7_2_3_17, f); },
                     [](const PFQ& f) { return reduce_unit_7_2_3_17(f); },
                     trial::reduce_p72317});

        r.push_back({"contig-p72325", "Prudnikov 7.2.3(25)",
                     [](const PFQ& f) {
                         if (f.p() < 2) return false;
                         return detail::probe(
                             [](const PFQ& g) {
                                 return contiguous_7_2_3_25(g, g.upper[0], g.upper[1]);
                             },
                             f);
                     },
                     [](const PFQ& f) {
                         if (f.p() < 2) throw NotApplicable("needs two upper parameters");
                         return contiguous_7_2_3_25(f, f.upper[0], f.upper[1]);
                     },
                     trial::contig_p72325});

        r.push_back({"dlmf-16-3-7", "DLMF 16.3.7",
                     [](const PFQ& f) { return detail::probe(three_term_16_3_7, f); },
                     [](const PFQ& f) {
                         ThreeTermCoeffs c = three_term_16_3_7(f);
                         if (c.c0.is_zero()) throw NotApplicable("middle coefficient vanishes");
                         const Rational& a1 = f.upper[0];
                         return TransformExpr{
                             {ClosedValue(-(c.cplus / c.c0)),
                              detail::with_upper_replaced(f, a1, a1 + Rational(1))},
                             {ClosedValue(-(c.cminus / c.c0)),
                              detail::with_upper_replaced(f, a1, a1 - Rational(1))}};
                     },
                     trial::dlmf_16_3_7});

        r.push_back({"dlmf-16-4-11", "DLMF 16.4.11",
                     [](const PFQ& f) { return detail::probe(thomae_16_4_11, f); },
                     [](const PFQ& f) {
                         ThomaeResult t = thomae_16_4_11(f);
                         return scaled_series(ClosedValue(t.prefactor), t.transformed);
                     },
                     trial::dlmf_16_4_11});

        r.push_back({"eval-p741365", "Prudnikov 7.4.1(365)",
                     [](const PFQ& f) {
                         return !f.regularized && f.arg == Rational(-1) &&
                                detail::same_multiset(f.upper,
                                                      {Rational(1), Rational(1), Rational(3, 2)}) &&
                                detail::same_multiset(f.lower, {Rational(2), Rational(2)});
                     },
                     [](const PFQ& f) {
                         if (f.regularized || f.arg != Rational(-1) ||
                             !detail::same_multiset(f.upper,
                                                    {Rational(1), Rational(1), Rational(3, 2)}) ||
                             !detail::same_multiset(f.lower, {Rational(2), Rational(2)}))
                             throw NotApplicable(
                                 "closed atom form only at 3F2(1,1,3/2;2,2;-1)");
                         return constant_expr(
                             ClosedValue::atom({exact::AtomKey::LnS5, 0}, Rational(-4)));
                     },
                     trial::eval_p741365});

        r.push_back({"eval-p74313", "Prudnikov 7.4.3(13)",
                     [](const PFQ& f) {
                         return !f.regularized && f.arg == Rational(-1, 4) &&
                                detail::same_multiset(f.upper,
                                                      {Rational(1, 2), Rational(1), Rational(1)}) &&
                                detail::same_multiset(f.lower, {Rational(3, 2), Rational(3, 2)});
                     },
                     [](const PFQ& f) {
                         if (f.regularized || f.arg != Rational(-1, 4) ||
                             !detail::same_multiset(f.upper,
                                                    {Rational(1, 2), Rational(1), Rational(1)}) ||
                             !detail::same_multiset(f.lower, {Rational(3, 2), Rational(3, 2)}))
                             throw NotApplicable(
                                 "closed atom form only at 3F2(1/2,1,1;3/2,3/2;-1/4)");
                         ClosedValue v = ClosedValue::atom({exact::AtomKey::Li2Plus, 0}, Rational(2));
                         v += ClosedValue::atom({exact::AtomKey::Li2Minus, 0}, Rational(-2));
                         return constant_expr(v);
                     },
                     trial::eval_p74313});

        return r;
    }();
    return rules;
}

inline const Rule& find_rule(const std::string& id) {
    for (const Rule& r : rule_registry())
        if (r.id == id) return r;
    throw UnknownId("no rule with id '" + id + "'");
}

// Runs `count` randomized oracle checks.  Draws that build no admissible
// instance (parameter poles, invalid series) are resampled, up to a bounded
// number of attempts per check; a systematic failure to produce instances is
// itself reported as a failure.
inline TrialReport run_trials(const Rule& rule, long count, std::uint64_t seed) {
    TrialReport rep;
    rep.rule_id = rule.id;
    rep.seed = seed;
    rep.requested = count;
    std::mt19937_64 rng(seed);
    for (long i = 0; i < count; ++i) {
        std::optional<std::string> outcome;
        bool produced = false;
        for (int attempt = 0; attempt < 500 && !produced; ++attempt) {
            try {
                outcome = rule.trial(rng);
                produced = true;
            } catch (const trial::Resample&) {
            } catch (const PoleError&) {
            }
        }
        if (!produced) outcome = "no admissible instance after 500 draws";
        if (!outcome) {
            ++rep.passed;
        } else {
            rep.failures.push_back(rule.id + "[" + std::to_string(i) + "]: " + *outcome);
            if (rep.failures.size() >= 8) break;
        }
    }
    return rep;
}

}  // namespace hypsum::rules
