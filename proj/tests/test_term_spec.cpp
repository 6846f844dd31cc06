// Term grammar: parsing summand texts into factor lists, exact factor and
// term evaluation, and the naive reference summation the engine is checked
// against everywhere else.

#include <catch2/catch_amalgamated.hpp>

#include <string>
#include <vector>

#include <hypsum/parser.hpp>
#include <hypsum/term_spec.hpp>

using namespace hypsum::hyper;
using hypsum::exact::Rational;
using hypsum::DivisionByZero;
using hypsum::DomainError;
using hypsum::SyntaxError;
using hypsum::UnknownSymbol;

namespace {

Rational at(const std::string& text, long n, long k) {
    return term_value(parse_term_spec(text), Rational(n), k);
}

}  // namespace

TEST_CASE("single factors evaluate") {
    REQUIRE(at("binom(n+k,k)", 2, 1) == Rational(3));
    REQUIRE(at("binom(n+k,k)/pow(2,k)", 2, 1) == Rational(3, 2));
    REQUIRE(at("binom(2k,k)*binom(2(n-k),n-k)/(1+2k)", 1, 1) == Rational(2, 3));
    REQUIRE(at("pow(-1,k)", 0, 3) == Rational(-1));
    REQUIRE(at("k", 0, 7) == Rational(7));
    REQUIRE(at("1", 5, 9) == Rational(1));
    REQUIRE(at("-2n", 3, 0) == Rational(-6));
}

TEST_CASE("out of range binomials vanish") {
    REQUIRE(at("binom(n,k)", 3, 5) == Rational(0));
    REQUIRE(at("binom(2n,n-k)", 2, 4) == Rational(0));  // negative bottom
}

TEST_CASE("juxtaposed coefficients and powers") {
    REQUIRE(at("2(n-k)", 5, 2) == Rational(6));
    REQUIRE(at("(n-k+1)^2", 4, 1) == Rational(16));
    REQUIRE(at("(2k+1)^3", 0, 1) == Rational(27));
    REQUIRE(at("3k", 0, 4) == Rational(12));
}

TEST_CASE("division flips every factor of a grouped denominator") {
    REQUIRE(at("1/((2k+1)*(k+2))", 0, 1) == Rational(1, 9));
    REQUIRE(at("binom(2k,k)/(pow(16,k)*(n-k+1)^2)", 1, 1) == Rational(1, 8));
    // denominators may carry binomials too
    REQUIRE(at("1/binom(2k,k)", 0, 2) == Rational(1, 6));
}

TEST_CASE("every identity summand parses and matches its hand value") {
    struct Case {
        const char* text;
        long n, k;
        Rational want;
    };
    const std::vector<Case> cases = {
        {"binom(2k,k)*binom(2(n-k),n-k)/(1+2k)", 1, 0, Rational(2)},
        {"binom(2k,k)/(pow(16,k)*(n-k+1)^2*binom(2(n-k+1),n-k+1))", 0, 0, Rational(1, 2)},
        {"binom(2k,k)/(pow(16,k)*(2k+1)*(n-k+1)*binom(2(n-k+1),n-k+1))", 0, 0, Rational(1, 2)},
        {"binom(2k,k)/(pow(16,k)*(2k+1)*(n-k+1)^2*binom(2(n-k+1),n-k+1))", 0, 0, Rational(1, 2)},
        {"binom(2n+1,2k)*binom(k,2)", 2, 2, Rational(5)},
        {"pow(-1,k)*binom(2k,k)/(k*pow(4,k))", 0, 1, Rational(-1, 2)},
        {"binom(k-1,1-1)/binom(k+1+1,1+1)", 0, 1, Rational(1, 3)},
        {"k^2*binom(2n,n-k)*binom(2n,n-k)/n^2", 2, 1, Rational(16, 4)},
        {"binom(n+k,k)/pow(2,k)", 2, 2, Rational(3, 2)},
        {"pow(-1,k)/((1+2k)^2*binom(2k,k))", 0, 1, Rational(-1, 18)},
    };
    for (const auto& c : cases) {
        CAPTURE(c.text);
        REQUIRE(at(c.text, c.n, c.k) == c.want);
    }
}

TEST_CASE("parse errors") {
    REQUIRE_THROWS_AS(parse_term_spec("binom(2k)"), SyntaxError);
    REQUIRE_THROWS_AS(parse_term_spec("(2k+1"), SyntaxError);
    REQUIRE_THROWS_AS(parse_term_spec(""), SyntaxError);
    REQUIRE_THROWS_AS(parse_term_spec("k^0"), SyntaxError);
    REQUIRE_THROWS_AS(parse_term_spec("2k+"), SyntaxError);
    REQUIRE_THROWS_AS(parse_term_spec("foo(k)"), UnknownSymbol);
    REQUIRE_THROWS_AS(parse_term_spec("binom(x,k)"), UnknownSymbol);
}

TEST_CASE("evaluation guards") {
    // non-integer binomial bottom is a data error, not a zero
    auto t = parse_term_spec("binom(2k,n)");
    REQUIRE_THROWS_AS(term_value(t, Rational(1, 2), 1), DomainError);
    // reciprocal of a vanishing factor
    REQUIRE_THROWS_AS(at("1/k", 0, 0), DivisionByZero);
}

TEST_CASE("naive sums over the three range kinds") {
    SumSpec s;
    s.term = parse_term_spec("binom(2k,k)*binom(2(n-k),n-k)/(1+2k)");
    s.n_value = Rational(2);
    REQUIRE(naive_sum(s) == Rational(128, 15));

    SumSpec fixed;
    fixed.term = parse_term_spec("k");
    fixed.start = 2;
    fixed.end = SumEnd::fixed(5);
    REQUIRE(naive_sum(fixed) == Rational(14));

    SumSpec inf;
    inf.term = parse_term_spec("pow(-1,k)/pow(2,k)");
    inf.end = SumEnd::infinite();
    REQUIRE(naive_sum(inf, 10) == Rational(341, 512));
    REQUIRE_THROWS_AS(naive_sum(inf), DomainError);

    SumSpec empty;
    empty.term = parse_term_spec("1");
    empty.start = 4;
    empty.end = SumEnd::fixed(2);
    REQUIRE(naive_sum(empty) == Rational(0));
}

TEST_CASE("rendering round trips through the parser") {
    const std::vector<std::string> texts = {
        "binom(2k,k)*binom(2(n-k),n-k)/(1+2k)",
        "pow(-1,k)/((1+2k)^2*binom(2k,k))",
        "2(n-k)",
        "1",
    };
    for (const auto& text : texts) {
        CAPTURE(text);
        TermSpec t = parse_term_spec(text);
        TermSpec again = parse_term_spec(to_string(t));
        REQUIRE(t == again);
        for (long n = 0; n <= 4; ++n)
            for (long k = 0; k <= n; ++k)
                REQUIRE(term_value(t, Rational(n), k) == term_value(again, Rational(n), k));
    }
}
