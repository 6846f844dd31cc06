#pragma once

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "hypsum/gamma_value.hpp"
#include "hypsum/pfq.hpp"

namespace hypsum::exact {

// Transcendental constants that survive exact evaluation.  TrigHalf carries
// an integer payload: TrigHalf(n) stands for psi'(n + 3/2).
struct AtomKey {
    enum Kind { Pi2, TrigHalf, LnS5, LnSqPhi, Li2Plus, Li2Minus } kind;
    long arg = 0;

    friend bool operator<(const AtomKey& a, const AtomKey& b) {
        return a.kind != b.kind ? a.kind < b.kind : a.arg < b.arg;
    }
    friend bool operator==(const AtomKey& a, const AtomKey& b) {
        return a.kind == b.kind && a.arg == b.arg;
    }

    std::string to_string() const {
        switch (kind) {
            case Pi2: return "pi^2";
            case TrigHalf: return "trigamma(" + std::to_string(arg) + "+3/2)";
            case LnS5: return "ln(2*(sqrt2-1))";
            case LnSqPhi: return "ln^2((sqrt5-1)/2)";
            case Li2Plus: return "Li2(sqrt5-2)";
            case Li2Minus: return "Li2(2-sqrt5)";
        }
        return "?";
    }
};

// coeff * pi^(sqrt_pi_exp/2) plus a rational combination of atoms.  Addition
// keeps the pi-power part single-headed: both sides must carry the same
// exponent unless one of them is zero.
struct ClosedValue {
    Rational coeff;
    long sqrt_pi_exp = 0;
    std::map<AtomKey, Rational> atoms;

    ClosedValue() : coeff(0) {}
    ClosedValue(Rational r) : coeff(std::move(r)) {}  // NOLINT: implicit by design
    ClosedValue(const GammaValue& g) : coeff(g.coeff), sqrt_pi_exp(g.sqrt_pi_exp) {}

    static ClosedValue atom(AtomKey key, Rational c) {
        ClosedValue v;
        if (!c.is_zero()) v.atoms.emplace(key, std::move(c));
        return v;
    }

    void normalize() {
        if (coeff.is_zero()) sqrt_pi_exp = 0;
        for (auto it = atoms.begin(); it != atoms.end();)
            it = it->second.is_zero() ? atoms.erase(it) : std::next(it);
    }

    bool is_zero() const { return coeff.is_zero() && atoms.empty(); }
    bool is_rational() const { return atoms.empty() && sqrt_pi_exp == 0; }
    Rational to_rational() const {
        if (!is_rational()) throw DomainError("closed value is not rational: " + to_string());
        return coeff;
    }

    ClosedValue& operator+=(const ClosedValue& o) {
        if (coeff.is_zero()) {
            coeff = o.coeff;
            sqrt_pi_exp = o.sqrt_pi_exp;
        } else if (!o.coeff.is_zero()) {
            if (sqrt_pi_exp != o.sqrt_pi_exp)
                throw DomainError("cannot add closed values with different pi powers");
            coeff += o.coeff;
        }
        for (const auto& [k, c] : o.atoms) {
            auto [it, fresh] = atoms.emplace(k, c);
            if (!fresh) it->second += c;
        }
        normalize();
        return *this;
    }
    friend ClosedValue operator+(ClosedValue a, const ClosedValue& b) { return a += b; }
    ClosedValue operator-() const {
        ClosedValue v = *this;
        v.coeff = -v.coeff;
        for (auto& [k, c] : v.atoms) c = -c;
        return v;
    }
    friend ClosedValue operator-(const ClosedValue& a, const ClosedValue& b) { return a + (-b); }

    ClosedValue& scale(const Rational& s) {
        coeff *= s;
        for (auto& [k, c] : atoms) c *= s;
        normalize();
        return *this;
    }
    friend ClosedValue operator*(ClosedValue a, const Rational& s) { return a.scale(s); }

    // Multiplication by a pure gamma expression; only defined when the atom
    // part is empty (atoms scale rationally, not by pi powers).
    ClosedValue& scale_gamma(const GammaValue& g) {
        if (!atoms.empty() && g.sqrt_pi_exp != 0)
            throw DomainError("cannot scale atoms by a pi power");
        coeff *= g.coeff;
        sqrt_pi_exp += g.sqrt_pi_exp;
        normalize();
        return *this;
    }

    friend bool operator==(const ClosedValue& a, const ClosedValue& b) {
        if (a.coeff != b.coeff || a.atoms != b.atoms) return false;
        return a.coeff.is_zero() || a.sqrt_pi_exp == b.sqrt_pi_exp;
    }

    std::string to_string() const {
        std::ostringstream os;
        bool first = true;
        if (!coeff.is_zero() || atoms.empty()) {
            os << coeff.to_string();
            if (sqrt_pi_exp != 0) os << "*pi^(" << sqrt_pi_exp << "/2)";
            first = false;
        }
        for (const auto& [k, c] : atoms) {
            if (!first) os << " + ";
            os << c.to_string() << "*" << k.to_string();
            first = false;
        }
        return os.str();
    }
};

// 4 * sum_{j=0}^{n} 1/(2j+1)^2, the exact rational pi^2/2 - psi'(n+3/2).
inline Rational pi2_minus_trigamma_half(long n) {
    if (n < 0) throw DomainError("pi2_minus_trigamma_half needs n >= 0");
    Rational acc(0);
    for (long j = 0; j <= n; ++j) {
        Rational odd(2 * j + 1);
        acc += (odd * odd).inv();
    }
    return acc * Rational(4);
}

// Substitutes psi'(n+3/2) = pi^2/2 - pi2_minus_trigamma_half(n) for every
// TrigHalf atom.  The pi^2 contributions must cancel against the existing
// Pi2 atom; anything left over means the value is genuinely irrational.
inline ClosedValue trigamma_reduced(ClosedValue v) {
    Rational pi2_coeff(0);
    Rational rational_part(0);
    for (auto it = v.atoms.begin(); it != v.atoms.end();) {
        if (it->first.kind == AtomKey::TrigHalf) {
            pi2_coeff += it->second / 2;
            rational_part -= it->second * pi2_minus_trigamma_half(it->first.arg);
            it = v.atoms.erase(it);
        } else {
            ++it;
        }
    }
    if (!pi2_coeff.is_zero())
        v += ClosedValue::atom({AtomKey::Pi2, 0}, pi2_coeff);
    if (!rational_part.is_zero()) v += ClosedValue(rational_part);
    return v;
}

}  // namespace hypsum::exact

namespace hypsum::hyper {

// A finite linear combination  sum_i  c_i * [series_i],  where a node with no
// series is the constant c_i.  Rule applications return these.
struct TransformTerm {
    exact::ClosedValue coeff;
    std::optional<PFQ> series;
};

using TransformExpr = std::vector<TransformTerm>;

inline TransformExpr constant_expr(exact::ClosedValue v) { return {{std::move(v), std::nullopt}}; }

inline TransformExpr scaled_series(exact::ClosedValue c, PFQ f) {
    return {{std::move(c), std::move(f)}};
}

// Exact evaluation: every series present must terminate and every
// coefficient must combine; the result may still carry pi powers or atoms.
inline exact::ClosedValue exact_eval(const TransformExpr& e) {
    exact::ClosedValue acc;
    for (const auto& t : e) {
        if (!t.series) {
            acc += t.coeff;
            continue;
        }
        exact::ClosedValue part = t.coeff;
        part.scale(pfq_sum(*t.series));
        acc += part;
    }
    return acc;
}

inline std::string to_string(const TransformExpr& e) {
    std::ostringstream os;
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (i) os << " + ";
        os << "(" << e[i].coeff.to_string() << ")";
        if (e[i].series) os << " * " << e[i].series->to_string();
    }
    return e.empty() ? "0" : os.str();
}

}  // namespace hypsum::hyper
