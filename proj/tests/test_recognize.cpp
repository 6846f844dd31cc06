// Recognition: reading pFq data off summand ratios, leading-zero handling,
// the sorted-parameter convention, regularized semantics, and exact round
// trips against the naive reference sum.

#include <catch2/catch_amalgamated.hpp>

#include <vector>

#include <hypsum/identities.hpp>
#include <hypsum/parser.hpp>
#include <hypsum/recognize.hpp>

using namespace hypsum::hyper;
using hypsum::exact::Rational;
using hypsum::exact::binomial;
using hypsum::exact::factorial;
using hypsum::NotHypergeometric;

namespace {

SumSpec spec_at(const std::string& text, long n, long from = 0) {
    SumSpec s;
    s.term = parse_term_spec(text);
    s.start = from;
    s.n_value = Rational(n);
    return s;
}

}  // namespace

TEST_CASE("saalschutzian form of the first identity") {
    auto rec = recognize(spec_at("binom(2k,k)*binom(2(n-k),n-k)/(1+2k)", 1));
    REQUIRE(rec.prefactor == Rational(2));
    REQUIRE(rec.k0 == 0);
    // parameter lists come out sorted ascending
    REQUIRE(rec.series.upper == std::vector<Rational>{Rational(-1), Rational(1, 2), Rational(1, 2)});
    REQUIRE(rec.series.lower == std::vector<Rational>{Rational(-1, 2), Rational(3, 2)});
    REQUIRE(rec.series.arg == Rational(1));
    auto c = classify(rec.series);
    REQUIRE(c.saalschutzian);
    REQUIRE(rec.prefactor * pfq_sum(rec.series) == Rational(8, 3));
}

TEST_CASE("geometric-like tail stays non-terminating") {
    auto rec = recognize(spec_at("binom(n+k,k)/pow(2,k)", 3));
    REQUIRE(rec.prefactor == Rational(1));
    REQUIRE(rec.series.to_string() == "1F0(4;;1/2)");
    REQUIRE_FALSE(classify(rec.series).terminating);
    // the requested range is a strict prefix of the series
    REQUIRE(rec.prefactor * pfq_partial_sum(rec.series, 4) == Rational(8));
}

TEST_CASE("constant summand gets the conventional upper 1") {
    auto rec = recognize(spec_at("1", 1));
    REQUIRE(rec.prefactor == Rational(1));
    REQUIRE(rec.k0 == 0);
    REQUIRE(rec.series.upper == std::vector<Rational>{Rational(1)});
    REQUIRE(rec.series.lower.empty());
    REQUIRE(rec.series.arg == Rational(1));
    REQUIRE(rec.prefactor * pfq_partial_sum(rec.series, 2) == Rational(2));
}

TEST_CASE("leading zero terms shift the base index") {
    auto rec = recognize(spec_at("k^2*binom(2n,n-k)*binom(2n,n-k)/n^2", 3));
    REQUIRE(rec.k0 == 1);
    REQUIRE(rec.prefactor == Rational(25));
    Rational naive(0);
    for (long k = 0; k <= 3; ++k)
        naive += term_value(parse_term_spec("k^2*binom(2n,n-k)*binom(2n,n-k)/n^2"), Rational(3), k);
    REQUIRE(rec.prefactor * pfq_partial_sum(rec.series, 3) == naive);
}

TEST_CASE("alternating infinite summand") {
    SumSpec s = spec_at("pow(-1,k)*binom(2k,k)/(k*pow(4,k))", 0, 1);
    s.end = SumEnd::infinite();
    auto rec = recognize(s);
    REQUIRE(rec.k0 == 1);
    REQUIRE(rec.prefactor == Rational(-1, 2));
    REQUIRE(rec.series.upper ==
            std::vector<Rational>{Rational(1), Rational(1), Rational(3, 2)});
    REQUIRE(rec.series.lower == std::vector<Rational>{Rational(2), Rational(2)});
    REQUIRE(rec.series.arg == Rational(-1));
    REQUIRE(classify(rec.series).convergent);
}

TEST_CASE("an all-zero range is not hypergeometric") {
    REQUIRE_THROWS_AS(recognize(spec_at("binom(n,k)", 3, 5)), NotHypergeometric);
}

TEST_CASE("regularized series drop their first terms") {
    // Sum C(2n+1,2k) C(k,m) at n=5, m=3 as a regularized 3F2: the lower
    // parameter 1-m wipes terms k < m and the remainder matches the raw sum
    // up to the constant 1/m!.
    long n = 5, m = 3;
    PFQ f{{Rational(-n), Rational(-2 * n - 1, 2), Rational(1)},
          {Rational(1, 2), Rational(1 - m)},
          Rational(1),
          true};
    REQUIRE(regularized_pole(f) == m - 1);
    for (long k = 0; k < m; ++k) REQUIRE(pfq_term(f, k).is_zero());
    Rational naive(0);
    for (long k = 0; k <= n; ++k) naive += binomial(2 * n + 1, 2 * k) * binomial(k, m);
    REQUIRE(pfq_sum(f) / factorial(m) == naive);
    REQUIRE(naive == Rational(1232));
}

TEST_CASE("round trips against the naive sum") {
    using hypsum::ident::find_identity;
    using hypsum::ident::round_trip_exact;
    struct Probe {
        const char* id;
        long n, extra;
    };
    const std::vector<Probe> probes = {
        {"S0", 6, 0}, {"S1", 6, 0}, {"S2", 6, 0}, {"S3", 6, 0}, {"S4", 6, 2},
        {"S5", 0, 0}, {"S6", 6, 2}, {"S7", 6, 0}, {"S8", 6, 0}, {"S9", 0, 0},
    };
    for (const auto& p : probes) {
        CAPTURE(p.id);
        REQUIRE(round_trip_exact(find_identity(p.id).summand(p.n, p.extra)));
    }
}
