#pragma once

#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "hypsum/gamma_value.hpp"

namespace hypsum::hyper {

using exact::Rational;

// Affine form cn*n + ck*k + c0 in the two symbols a summand may use: the
// instance size n and the summation index k.  Other parameters are baked
// into the coefficients at construction time.
struct AffineNK {
    Rational cn, ck, c0;

    AffineNK() = default;
    AffineNK(Rational n_coeff, Rational k_coeff, Rational constant)
        : cn(std::move(n_coeff)), ck(std::move(k_coeff)), c0(std::move(constant)) {}

    static AffineNK constant(Rational c) { return AffineNK(0, 0, std::move(c)); }
    static AffineNK sym_n(Rational c = 1) { return AffineNK(std::move(c), 0, 0); }
    static AffineNK sym_k(Rational c = 1) { return AffineNK(0, std::move(c), 0); }

    Rational eval(const Rational& n, const Rational& k) const { return cn * n + ck * k + c0; }

    bool is_constant() const { return cn.is_zero() && ck.is_zero(); }

    AffineNK operator+(const AffineNK& o) const { return {cn + o.cn, ck + o.ck, c0 + o.c0}; }
    AffineNK operator-(const AffineNK& o) const { return {cn - o.cn, ck - o.ck, c0 - o.c0}; }
    AffineNK operator-() const { return {-cn, -ck, -c0}; }
    AffineNK scaled(const Rational& s) const { return {cn * s, ck * s, c0 * s}; }

    friend bool operator==(const AffineNK& a, const AffineNK& b) {
        return a.cn == b.cn && a.ck == b.ck && a.c0 == b.c0;
    }

    // Prints in the term grammar; coefficients must be integers there.
    std::string to_string() const {
        if (!cn.is_integer() || !ck.is_integer())
            throw DomainError("affine coefficient outside the term grammar: " + debug_string());
        std::ostringstream os;
        bool first = true;
        auto piece = [&](const Rational& c, const char* sym) {
            if (c.is_zero()) return;
            Rational a = c.abs();
            if (first) {
                if (c.sign() < 0) os << "-";
                first = false;
            } else {
                os << (c.sign() < 0 ? " - " : " + ");
            }
            if (!sym) {
                os << a;
            } else {
                if (a != Rational(1)) os << a;
                os << sym;
            }
        };
        piece(cn, "n");
        piece(ck, "k");
        piece(c0, nullptr);
        if (first) return "0";
        return os.str();
    }

    std::string debug_string() const {
        return "(" + cn.to_string() + ")n+(" + ck.to_string() + ")k+(" + c0.to_string() + ")";
    }
};

// binom(top, bottom); bottom must evaluate to an integer.
struct BinomF {
    AffineNK top, bottom;
    friend bool operator==(const BinomF&, const BinomF&) = default;
};

// base^k.
struct PowF {
    Rational base;
    friend bool operator==(const PowF&, const PowF&) = default;
};

// lin^exp, exp >= 1.
struct LinF {
    AffineNK lin;
    long exp = 1;
    friend bool operator==(const LinF&, const LinF&) = default;
};

struct ConstF {
    Rational value;
    friend bool operator==(const ConstF&, const ConstF&) = default;
};

struct TermFactor {
    std::variant<BinomF, PowF, LinF, ConstF> f;
    bool reciprocal = false;
    friend bool operator==(const TermFactor&, const TermFactor&) = default;
};

// Product of factors; the value of the summand at (n, k).
struct TermSpec {
    std::vector<TermFactor> factors;
    friend bool operator==(const TermSpec&, const TermSpec&) = default;
};

struct SumEnd {
    enum Kind { AtN, Fixed, Infinite } kind = AtN;
    long value = 0;  // Fixed only

    static SumEnd at_n() { return {AtN, 0}; }
    static SumEnd fixed(long t) { return {Fixed, t}; }
    static SumEnd infinite() { return {Infinite, 0}; }
    friend bool operator==(const SumEnd&, const SumEnd&) = default;
};

// A concrete sum: the summand, the index range, and the instance value of n.
struct SumSpec {
    TermSpec term;
    long start = 0;
    SumEnd end = SumEnd::at_n();
    Rational n_value;
};

inline Rational factor_value(const TermFactor& tf, const Rational& n, long k) {
    Rational kq(k);
    Rational v;
    if (const auto* b = std::get_if<BinomF>(&tf.f)) {
        Rational bot = b->bottom.eval(n, kq);
        if (!bot.is_integer())
            throw DomainError("binomial lower index " + bot.to_string() + " is not an integer");
        v = exact::binomial_general(b->top.eval(n, kq), bot.to_long());
    } else if (const auto* p = std::get_if<PowF>(&tf.f)) {
        v = p->base.pow(k);
    } else if (const auto* l = std::get_if<LinF>(&tf.f)) {
        v = l->lin.eval(n, kq).pow(l->exp);
    } else {
        v = std::get<ConstF>(tf.f).value;
    }
    if (tf.reciprocal) {
        if (v.is_zero()) throw DivisionByZero();
        return v.inv();
    }
    return v;
}

inline Rational term_value(const TermSpec& t, const Rational& n, long k) {
    Rational acc(1);
    for (const auto& tf : t.factors) acc *= factor_value(tf, n, k);
    return acc;
}

// Reference evaluator: adds terms one at a time.  `terms_if_infinite` bounds
// an Infinite range; finite ranges ignore it.
inline Rational naive_sum(const SumSpec& s, long terms_if_infinite = 0) {
    long stop;  // inclusive
    switch (s.end.kind) {
        case SumEnd::AtN:
            if (!s.n_value.is_integer())
                throw DomainError("sum to n needs integer n, got " + s.n_value.to_string());
            stop = s.n_value.to_long();
            break;
        case SumEnd::Fixed:
            stop = s.end.value;
            break;
        default:
            if (terms_if_infinite <= 0)
                throw DomainError("infinite sum needs an explicit term budget");
            stop = s.start + terms_if_infinite - 1;
    }
    Rational acc(0);
    for (long k = s.start; k <= stop; ++k) acc += term_value(s.term, s.n_value, k);
    return acc;
}

inline std::string to_string(const TermFactor& tf) {
    std::ostringstream os;
    if (const auto* b = std::get_if<BinomF>(&tf.f)) {
        os << "binom(" << b->top.to_string() << ", " << b->bottom.to_string() << ")";
    } else if (const auto* p = std::get_if<PowF>(&tf.f)) {
        os << "pow(" << p->base << ", k)";
    } else if (const auto* l = std::get_if<LinF>(&tf.f)) {
        // Single-piece affines like "2k" stand bare; sums and negatives need parentheses.
        std::string body = l->lin.to_string();
        bool wrap = body.find(' ') != std::string::npos || body[0] == '-';
        if (wrap) os << "(" << body << ")";
        else os << body;
        if (l->exp != 1) os << "^" << l->exp;
    } else {
        const auto& c = std::get<ConstF>(tf.f).value;
        if (c.sign() < 0 || !c.is_integer()) os << "(" << c << ")";
        else os << c;
    }
    return os.str();
}

inline std::string to_string(const TermSpec& t) {
    if (t.factors.empty()) return "1";
    std::ostringstream os;
    for (std::size_t i = 0; i < t.factors.size(); ++i) {
        if (i) os << (t.factors[i].reciprocal ? " / " : " * ");
        else if (t.factors[i].reciprocal) os << "1 / ";
        os << to_string(t.factors[i]);
    }
    return os.str();
}

}  // namespace hypsum::hyper
