#pragma once

#include <cctype>
#include <optional>
#include <string>
#include <utility>

#include "hypsum/pfq.hpp"
#include "hypsum/term_spec.hpp"

namespace hypsum::hyper {

// Recursive-descent parser for the summand grammar:
//
//   term   := factor (('*' | '/') factor)*
//   factor := 'binom' '(' affine ',' affine ')'
//           | 'pow' '(' rational ',' 'k' ')'
//           | affine ['^' positive-integer]
//           | rational
//           | '(' term ')'
//   affine := ['-'] aterm (('+' | '-') aterm)*
//   aterm  := integer | [integer] ('n' | 'k' | '(' affine ')')
//
// Whitespace is insignificant.  A '/' directly between two integer literals
// binds as a fraction ("3/4" is one rational); anywhere else it divides.
class TermParser {
  public:
    explicit TermParser(std::string text) : s_(std::move(text)) {}

    TermSpec parse() {
        TermSpec t = parse_term();
        skip_ws();
        if (pos_ != s_.size()) throw SyntaxError("trailing input", pos_);
        // The printer renders a leading reciprocal as "1 / x"; undo that so
        // parse(print(t)) == t structurally.
        if (t.factors.size() > 1 && !t.factors[0].reciprocal &&
            t.factors[1].reciprocal) {
            if (const auto* c = std::get_if<ConstF>(&t.factors[0].f);
                c && c->value == Rational(1))
                t.factors.erase(t.factors.begin());
        }
        return t;
    }

  private:
    std::string s_;
    std::size_t pos_ = 0;

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    char peek() {
        skip_ws();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }
    bool eat(char c) {
        if (peek() != c) return false;
        ++pos_;
        return true;
    }
    void expect(char c) {
        if (!eat(c)) throw SyntaxError(std::string("expected '") + c + "'", pos_);
    }

    mpz_class lex_integer() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (pos_ == start) throw SyntaxError("expected a number", start);
        return mpz_class(s_.substr(start, pos_ - start));
    }

    // digits ['/' digits]; the slash joins only when digits follow directly.
    Rational lex_rational_tail(bool negative) {
        mpz_class num = lex_integer();
        if (pos_ < s_.size() && s_[pos_] == '/' && pos_ + 1 < s_.size() &&
            std::isdigit(static_cast<unsigned char>(s_[pos_ + 1]))) {
            ++pos_;
            mpz_class den = lex_integer();
            Rational r(num, den);
            return negative ? -r : r;
        }
        Rational r(num, mpz_class(1));
        return negative ? -r : r;
    }

    Rational lex_signed_rational() {
        bool neg = eat('-');
        if (!neg) eat('+');
        if (!std::isdigit(static_cast<unsigned char>(peek())))
            throw SyntaxError("expected a rational literal", pos_);
        return lex_rational_tail(neg);
    }

    std::string lex_word() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        return s_.substr(start, pos_ - start);
    }

    AffineNK parse_affine_group() {
        expect('(');
        AffineNK a = parse_affine();
        expect(')');
        return a;
    }

    // One additive piece: an integer, optionally gluing onto a symbol or a
    // parenthesized affine as its coefficient.
    AffineNK parse_aterm() {
        char c = peek();
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t at = pos_;
            Rational coef = lex_rational_tail(false);
            char nxt = peek();
            if (nxt == 'n' || nxt == 'k' || nxt == '(') {
                if (!coef.is_integer())
                    throw SyntaxError("juxtaposed coefficient must be an integer", at);
                return parse_aterm().scaled(coef);
            }
            if (!coef.is_integer())
                throw SyntaxError("affine constants must be integers", at);
            return AffineNK::constant(coef);
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t at = pos_;
            std::string w = lex_word();
            if (w == "n") return AffineNK::sym_n();
            if (w == "k") return AffineNK::sym_k();
            throw UnknownSymbol(w, at);
        }
        if (c == '(') return parse_affine_group();
        throw SyntaxError("expected an affine term", pos_);
    }

    AffineNK parse_affine() {
        AffineNK acc;
        bool neg = eat('-');
        AffineNK first = parse_aterm();
        acc = neg ? -first : first;
        for (;;) {
            char c = peek();
            if (c == '+') {
                ++pos_;
                acc = acc + parse_aterm();
            } else if (c == '-') {
                ++pos_;
                acc = acc - parse_aterm();
            } else {
                return acc;
            }
        }
    }

    long lex_exponent() {
        expect('^');
        skip_ws();
        std::size_t at = pos_;
        mpz_class e = lex_integer();
        if (e <= 0 || !e.fits_slong_p())
            throw SyntaxError("exponent must be a positive integer", at);
        return e.get_si();
    }

    TermFactor wrap_affine(AffineNK a) {
        long e = peek() == '^' ? lex_exponent() : 1;
        if (a.is_constant()) return {ConstF{a.c0.pow(e)}, false};
        return {LinF{a, e}, false};
    }

    // Appends parsed factors to out; a parenthesized subterm flattens.
    void parse_factor(TermSpec& out) {
        char c = peek();
        std::size_t at = pos_;
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::string w = lex_word();
            if (w == "binom") {
                expect('(');
                AffineNK top = parse_affine();
                expect(',');
                AffineNK bottom = parse_affine();
                expect(')');
                out.factors.push_back({BinomF{top, bottom}, false});
                return;
            }
            if (w == "pow") {
                expect('(');
                Rational base = lex_signed_rational();
                expect(',');
                skip_ws();
                if (lex_word() != "k") throw SyntaxError("pow exponent must be the symbol k", pos_);
                expect(')');
                out.factors.push_back({PowF{base}, false});
                return;
            }
            if (w == "n" || w == "k") {
                pos_ = at;
                out.factors.push_back(wrap_affine(parse_affine()));
                return;
            }
            throw UnknownSymbol(w, at);
        }
        if (c == '-' || std::isdigit(static_cast<unsigned char>(c))) {
            bool neg = eat('-');
            if (!std::isdigit(static_cast<unsigned char>(peek())))
                throw SyntaxError("expected a number after '-'", pos_);
            Rational v = lex_rational_tail(neg);
            char nxt = peek();
            if (nxt == 'n' || nxt == 'k' || nxt == '(' || nxt == '+' || nxt == '-') {
                pos_ = at;  // it was the head of an affine, reparse as one
                out.factors.push_back(wrap_affine(parse_affine()));
                return;
            }
            if (nxt == '^') {
                long e = lex_exponent();
                out.factors.push_back({ConstF{v.pow(e)}, false});
                return;
            }
            out.factors.push_back({ConstF{v}, false});
            return;
        }
        if (c == '(') {
            ++pos_;
            TermSpec sub = parse_term();
            expect(')');
            if (peek() == '^') {
                if (sub.factors.size() != 1 || sub.factors[0].reciprocal)
                    throw SyntaxError("exponent requires an affine base", pos_);
                long e = lex_exponent();
                auto& f = sub.factors[0];
                if (auto* l = std::get_if<LinF>(&f.f)) {
                    if (l->exp != 1) throw SyntaxError("repeated exponent", pos_);
                    l->exp = e;
                } else if (auto* cf = std::get_if<ConstF>(&f.f)) {
                    cf->value = cf->value.pow(e);
                } else {
                    throw SyntaxError("exponent requires an affine base", pos_);
                }
            }
            for (auto& f : sub.factors) out.factors.push_back(std::move(f));
            return;
        }
        throw SyntaxError("expected a factor", pos_);
    }

    TermSpec parse_term() {
        TermSpec out;
        parse_factor(out);
        for (;;) {
            char c = peek();
            if (c != '*' && c != '/') return out;
            ++pos_;
            std::size_t first = out.factors.size();
            parse_factor(out);
            if (c == '/')
                for (std::size_t i = first; i < out.factors.size(); ++i)
                    out.factors[i].reciprocal = !out.factors[i].reciprocal;
        }
    }
};

inline TermSpec parse_term_spec(const std::string& text) { return TermParser(text).parse(); }

// "pFq(a1,..,ap; b1,..,bq; z)" with an optional "reg " prefix, as in
// "3F2(-1,1/2,1/2;3/2,-1/2;1)" or "reg 2F1(1,1;0;1/2)".
inline PFQ parse_pfq(const std::string& text) {
    std::size_t pos = 0;
    auto skip_ws = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    };
    PFQ f;
    skip_ws();
    if (text.compare(pos, 3, "reg") == 0) {
        f.regularized = true;
        pos += 3;
    }
    skip_ws();
    auto lex_long = [&]() -> long {
        std::size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos == start) throw SyntaxError("expected a count", start);
        return std::stol(text.substr(start, pos - start));
    };
    auto lex_rational = [&]() -> Rational {
        skip_ws();
        std::size_t start = pos;
        if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) ++pos;
        while (pos < text.size() &&
               (std::isdigit(static_cast<unsigned char>(text[pos])) || text[pos] == '/'))
            ++pos;
        if (pos == start) throw SyntaxError("expected a rational", start);
        try {
            return Rational::from_string(text.substr(start, pos - start));
        } catch (const MathError&) {
            throw SyntaxError("bad rational literal", start);
        }
    };
    long p = lex_long();
    skip_ws();
    if (pos >= text.size() || text[pos] != 'F') throw SyntaxError("expected 'F'", pos);
    ++pos;
    long q = lex_long();
    skip_ws();
    if (pos >= text.size() || text[pos] != '(') throw SyntaxError("expected '('", pos);
    ++pos;
    auto lex_list = [&](std::vector<Rational>& dst, long count) {
        for (long i = 0; i < count; ++i) {
            dst.push_back(lex_rational());
            skip_ws();
            if (i + 1 < count) {
                if (pos >= text.size() || text[pos] != ',') throw SyntaxError("expected ','", pos);
                ++pos;
            }
        }
        skip_ws();
        if (pos >= text.size() || text[pos] != ';') throw SyntaxError("expected ';'", pos);
        ++pos;
    };
    lex_list(f.upper, p);
    lex_list(f.lower, q);
    f.arg = lex_rational();
    skip_ws();
    if (pos >= text.size() || text[pos] != ')') throw SyntaxError("expected ')'", pos);
    ++pos;
    skip_ws();
    if (pos != text.size()) throw SyntaxError("trailing input", pos);
    return f;
}

// "a..b" inclusive, or a single value "a" meaning a..a.
inline std::pair<long, long> parse_range(const std::string& text) {
    auto dots = text.find("..");
    try {
        if (dots == std::string::npos) {
            long v = std::stol(text);
            return {v, v};
        }
        return {std::stol(text.substr(0, dots)), std::stol(text.substr(dots + 2))};
    } catch (const std::exception&) {
        throw SyntaxError("bad range '" + text + "'", 0);
    }
}

}  // namespace hypsum::hyper
