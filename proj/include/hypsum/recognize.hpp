#pragma once

#include <map>
#include <utility>
#include <vector>

#include "hypsum/pfq.hpp"
#include "hypsum/term_spec.hpp"

namespace hypsum::hyper {

// Dense polynomial over Q; c[i] is the coefficient of x^i.
struct Poly {
    std::vector<Rational> c;

    Poly() : c{Rational(0)} {}
    explicit Poly(Rational constant) : c{std::move(constant)} {}
    static Poly linear(const Rational& a1, const Rational& a0) {
        if (a1.is_zero()) return Poly(a0);
        Poly p;
        p.c = {a0, a1};
        return p;
    }

    void trim() {
        while (c.size() > 1 && c.back().is_zero()) c.pop_back();
    }
    long degree() const { return static_cast<long>(c.size()) - 1; }
    const Rational& lc() const { return c.back(); }
    bool is_zero() const { return c.size() == 1 && c[0].is_zero(); }

    Rational eval(const Rational& x) const {
        Rational acc(0);
        for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    Poly& operator*=(const Poly& o) {
        std::vector<Rational> out(c.size() + o.c.size() - 1, Rational(0));
        for (std::size_t i = 0; i < c.size(); ++i)
            for (std::size_t j = 0; j < o.c.size(); ++j) out[i + j] += c[i] * o.c[j];
        c = std::move(out);
        trim();
        return *this;
    }

    void scale(const Rational& s) {
        for (auto& x : c) x *= s;
    }

    // Exact division by (x - r); caller guarantees r is a root.
    void divide_root(const Rational& r) {
        std::vector<Rational> out(c.size() - 1, Rational(0));
        Rational carry(0);
        for (long i = degree(); i >= 1; --i) {
            carry = c[i] + carry * r;
            out[i - 1] = carry;
        }
        c = std::move(out);
        if (c.empty()) c = {Rational(0)};
    }
};

// All rational roots with multiplicity plus the leading coefficient, such
// that p = lc * prod (x - r_i).  A leftover factor of positive degree has no
// rational roots: IrrationalRoots.
struct FactoredPoly {
    Rational lead;
    std::vector<Rational> roots;  // with multiplicity, unsorted
};

namespace detail {

inline std::vector<mpz_class> divisors_of(const mpz_class& n0) {
    mpz_class n = abs(n0);
    std::vector<mpz_class> small, large;
    for (mpz_class i = 1; i * i <= n; ++i) {
        if (n % i == 0) {
            small.push_back(i);
            if (i * i != n) large.push_back(n / i);
        }
    }
    for (auto it = large.rbegin(); it != large.rend(); ++it) small.push_back(*it);
    return small;
}

}  // namespace detail

inline FactoredPoly factor_rational_roots(Poly p) {
    p.trim();
    if (p.is_zero()) throw DomainError("cannot factor the zero polynomial");
    FactoredPoly out;
    out.lead = p.lc();
    while (p.degree() > 0) {
        if (p.c[0].is_zero()) {
            out.roots.push_back(Rational(0));
            p.divide_root(Rational(0));
            continue;
        }
        // Integer-clear the coefficients for the rational root theorem.
        mpz_class den_lcm(1);
        for (const auto& q : p.c) {
            mpz_class d = q.den();
            mpz_class g;
            mpz_gcd(g.get_mpz_t(), den_lcm.get_mpz_t(), d.get_mpz_t());
            den_lcm = den_lcm / g * d;
        }
        std::vector<mpz_class> ic;
        ic.reserve(p.c.size());
        for (const auto& q : p.c) ic.push_back(q.num() * (den_lcm / q.den()));
        mpz_class content(0);
        for (const auto& z : ic) mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), z.get_mpz_t());
        for (auto& z : ic) z /= content;

        bool found = false;
        auto qs = detail::divisors_of(ic.back());
        auto ps = detail::divisors_of(ic.front());
        for (const auto& pn : ps) {
            for (const auto& qd : qs) {
                for (int sign = +1; sign >= -1 && !found; sign -= 2) {
                    Rational r(sign > 0 ? pn : mpz_class(-pn), qd);
                    if (!p.eval(r).is_zero()) continue;
                    // Exhaust the multiplicity of r before moving on.
                    do {
                        out.roots.push_back(r);
                        p.divide_root(r);
                    } while (p.degree() > 0 && p.eval(r).is_zero());
                    found = true;
                }
                if (found) break;
            }
            if (found) break;
        }
        if (!found)
            throw IrrationalRoots("no rational root in residual of degree " +
                                  std::to_string(p.degree()));
    }
    return out;
}

struct RecognizedSum {
    Rational prefactor;  // t_{k0}, the first nonzero term
    PFQ series;
    long k0 = 0;  // index of that term in the original sum
};

namespace detail {

// Linear factors of Gamma(x + m)/Gamma(x) as polynomials in j, where x is
// affine in j.  m >= 0 contributes x, x+1, ..., x+m-1 upstairs; m < 0
// contributes x-1, ..., x+m downstairs.
inline void gamma_shift(const Rational& slope, const Rational& offs, long m, bool upstairs,
                        std::vector<Poly>& num, std::vector<Poly>& den) {
    auto& dst = upstairs ? num : den;
    auto& other = upstairs ? den : num;
    if (m >= 0) {
        for (long i = 0; i < m; ++i) dst.push_back(Poly::linear(slope, offs + Rational(i)));
    } else {
        for (long i = 1; i <= -m; ++i) other.push_back(Poly::linear(slope, offs - Rational(i)));
    }
}

}  // namespace detail

// Reads the pFq parameters off the factored consecutive-term ratio of a sum.
// Leading zero terms are skipped; the prefactor is the first nonzero term and
// the series variable is shifted so its k = 0 lands there.  The emitted
// parameter lists are sorted ascending.
inline RecognizedSum recognize(const SumSpec& s) {
    // Locate the first nonzero term.
    long scan_stop;
    switch (s.end.kind) {
        case SumEnd::AtN: scan_stop = s.n_value.to_long(); break;
        case SumEnd::Fixed: scan_stop = s.end.value; break;
        default: scan_stop = s.start + 512;
    }
    long k0 = s.start;
    Rational prefactor(0);
    for (; k0 <= scan_stop; ++k0) {
        prefactor = term_value(s.term, s.n_value, k0);
        if (!prefactor.is_zero()) break;
    }
    if (prefactor.is_zero()) throw NotHypergeometric("no nonzero term in the summation range");

    // Build the ratio t_{k+1}/t_k as factored polynomials in j, with
    // k = k0 + j.  An affine c_n n + c_k k + c_0 becomes the linear form
    // c_k j + (c_k k0 + c_n n + c_0).
    std::vector<Poly> num, den;
    Rational num_const(1), den_const(1);
    auto at_j = [&](const AffineNK& a, long extra = 0) {
        return std::pair<Rational, Rational>(
            a.ck, a.ck * Rational(k0 + extra) + a.cn * s.n_value + a.c0);
    };
    for (const auto& tf : s.term.factors) {
        std::vector<Poly> fn, fd;
        Rational fnum(1), fden(1);
        if (const auto* b = std::get_if<BinomF>(&tf.f)) {
            if (!b->top.ck.is_integer() || !b->bottom.ck.is_integer())
                throw NotHypergeometric("binomial index step is not an integer");
            long dt = b->top.ck.to_long(), db = b->bottom.ck.to_long();
            auto [ts, to] = at_j(b->top);
            auto [bs, bo] = at_j(b->bottom);
            detail::gamma_shift(ts, to + 1, dt, true, fn, fd);         // Gamma(T+1)
            detail::gamma_shift(bs, bo + 1, db, false, fn, fd);        // 1/Gamma(B+1)
            detail::gamma_shift(ts - bs, to - bo + 1, dt - db, false, fn, fd);  // 1/Gamma(T-B+1)
        } else if (const auto* pw = std::get_if<PowF>(&tf.f)) {
            if (pw->base.is_zero()) throw NotHypergeometric("zero base in pow factor");
            fnum = pw->base;
        } else if (const auto* l = std::get_if<LinF>(&tf.f)) {
            if (!l->lin.ck.is_zero()) {
                auto [ls, lo] = at_j(l->lin);
                for (long e = 0; e < l->exp; ++e) {
                    fn.push_back(Poly::linear(ls, lo + ls));  // value at k+1
                    fd.push_back(Poly::linear(ls, lo));
                }
            }
        }  // ConstF: ratio 1
        if (tf.reciprocal) {
            std::swap(fn, fd);
            std::swap(fnum, fden);
        }
        for (auto& f : fn) num.push_back(std::move(f));
        for (auto& f : fd) den.push_back(std::move(f));
        num_const *= fnum;
        den_const *= fden;
    }

    Poly num_poly(num_const), den_poly(den_const);
    for (const auto& f : num) num_poly *= f;
    for (const auto& f : den) den_poly *= f;
    if (num_poly.is_zero()) throw NotHypergeometric("term ratio vanishes identically");

    FactoredPoly fnum = factor_rational_roots(num_poly);
    FactoredPoly fden = factor_rational_roots(den_poly);

    // Cancel common roots.  Keep multisets as sorted maps root -> count.
    std::map<Rational, long> rn, rd;
    for (const auto& r : fnum.roots) ++rn[r];
    for (const auto& r : fden.roots) ++rd[r];
    for (auto& [root, cnt] : rn) {
        auto it = rd.find(root);
        if (it == rd.end()) continue;
        long m = std::min(cnt, it->second);
        cnt -= m;
        it->second -= m;
    }

    // The k! convention: one (j+1) factor downstairs is the factorial; if it
    // is missing, put (j+1) on both sides, which adds an upper parameter 1.
    auto neg1 = rd.find(Rational(-1));
    if (neg1 != rd.end() && neg1->second > 0) {
        --neg1->second;
    } else {
        ++rn[Rational(-1)];
    }

    PFQ out;
    for (const auto& [root, cnt] : rn)
        for (long i = 0; i < cnt; ++i) out.upper.push_back(-root);
    for (const auto& [root, cnt] : rd)
        for (long i = 0; i < cnt; ++i) out.lower.push_back(-root);
    // Maps iterate roots ascending, so parameters come out descending; flip.
    std::reverse(out.upper.begin(), out.upper.end());
    std::reverse(out.lower.begin(), out.lower.end());
    out.arg = fnum.lead / fden.lead;
    return {prefactor, out, k0};
}

}  // namespace hypsum::hyper
