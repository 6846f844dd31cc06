// Series layer: classification, validity, exact term/partial-sum evaluation,
// regularized semantics, and the two surgery operations (reversal and tail
// splitting) that the identity derivations are built from.

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <vector>

#include <hypsum/pfq.hpp>

using namespace hypsum::hyper;
using hypsum::exact::Rational;
using hypsum::DomainError;
using hypsum::NotApplicable;
using hypsum::NotTerminating;
using hypsum::PoleError;

namespace {

PFQ make(std::vector<Rational> up, std::vector<Rational> low, Rational z, bool reg = false) {
    return PFQ{std::move(up), std::move(low), std::move(z), reg};
}

}  // namespace

TEST_CASE("rendering") {
    PFQ f = make({Rational(-1), Rational(1, 2)}, {Rational(3, 2)}, Rational(1));
    REQUIRE(f.to_string() == "2F1(-1,1/2;3/2;1)");
    f.regularized = true;
    REQUIRE(f.to_string() == "reg 2F1(-1,1/2;3/2;1)");
    REQUIRE(make({Rational(4)}, {}, Rational(1, 2)).to_string() == "1F0(4;;1/2)");
}

TEST_CASE("truncation index is the smallest nonpositive upper in magnitude") {
    PFQ f = make({Rational(-7), Rational(-3), Rational(1, 2)}, {Rational(2)}, Rational(1));
    auto n = truncation_index(f);
    REQUIRE(n.has_value());
    REQUIRE(*n == 3);
    REQUIRE_FALSE(truncation_index(make({Rational(1, 2)}, {}, Rational(1))).has_value());
    // nonpositive half-integers do not terminate anything
    REQUIRE_FALSE(truncation_index(make({Rational(-3, 2)}, {}, Rational(1))).has_value());
}

TEST_CASE("classification flags") {
    auto c = classify(make({Rational(-1), Rational(1, 2), Rational(1, 2)},
                           {Rational(3, 2), Rational(-1, 2)}, Rational(1)));
    REQUIRE(c.terminating);
    REQUIRE(c.truncation == 1);
    REQUIRE(c.balance == Rational(1));
    REQUIRE(c.saalschutzian);
    REQUIRE(c.convergent);

    // p <= q converges everywhere
    REQUIRE(classify(make({Rational(5)}, {Rational(1, 3)}, Rational(100))).convergent);
    // p = q+1 inside the unit disk
    auto s9 = classify(make({Rational(1, 2), Rational(1), Rational(1)},
                            {Rational(3, 2), Rational(3, 2)}, Rational(-1, 4)));
    REQUIRE_FALSE(s9.terminating);
    REQUIRE(s9.convergent);
    REQUIRE(s9.balance == Rational(1, 2));
    REQUIRE_FALSE(s9.saalschutzian);  // balanced but not terminating at z = 1
    // z = 1 needs positive balance
    REQUIRE(classify(make({Rational(1, 2), Rational(1, 2)}, {Rational(3, 2)}, Rational(1)))
                .convergent);
    REQUIRE_FALSE(
        classify(make({Rational(1), Rational(1)}, {Rational(1)}, Rational(1))).convergent);
    // z = -1 needs balance > -1
    REQUIRE(classify(make({Rational(1), Rational(1)}, {Rational(3, 2)}, Rational(-1))).convergent);
    REQUIRE_FALSE(
        classify(make({Rational(1), Rational(3)}, {Rational(1)}, Rational(-1))).convergent);
    // |z| > 1 with p = q+1 diverges
    REQUIRE_FALSE(classify(make({Rational(1), Rational(1)}, {Rational(5)}, Rational(2))).convergent);
}

TEST_CASE("validity") {
    // a lower pole at -M is admissible only when termination N covers it
    REQUIRE_NOTHROW(validate(make({Rational(-2), Rational(1)}, {Rational(-5)}, Rational(1))));
    REQUIRE_THROWS_AS(validate(make({Rational(-5), Rational(1)}, {Rational(-2)}, Rational(1))),
                      PoleError);
    // the equal case N = M is fine: the numerator zero wins at the pole index
    REQUIRE_NOTHROW(validate(make({Rational(-3), Rational(1)}, {Rational(-3)}, Rational(1))));
    // regularized: exactly one nonpositive-integer lower
    REQUIRE_NOTHROW(validate(make({Rational(-4), Rational(1)}, {Rational(-2), Rational(1)},
                                  Rational(1), true)));
    REQUIRE_THROWS_AS(validate(make({Rational(-4)}, {Rational(1, 2)}, Rational(1), true)),
                      DomainError);
    REQUIRE_THROWS_AS(
        validate(make({Rational(-4)}, {Rational(-1), Rational(-2)}, Rational(1), true)),
        DomainError);
}

TEST_CASE("terms and partial sums") {
    PFQ f = make({Rational(-2), Rational(-2)}, {Rational(1)}, Rational(1));
    REQUIRE(pfq_term(f, 0) == Rational(1));
    REQUIRE(pfq_term(f, 1) == Rational(4));
    REQUIRE(pfq_term(f, 2) == Rational(1));
    REQUIRE(pfq_term(f, 3) == Rational(0));
    REQUIRE(pfq_partial_sum(f, 2) == Rational(5));
    REQUIRE(pfq_sum(f) == Rational(6));
    REQUIRE_THROWS_AS(pfq_term(f, -1), DomainError);

    // prefix sums agree with term-by-term accumulation
    PFQ g = make({Rational(-6), Rational(1, 3)}, {Rational(5, 2)}, Rational(-2, 7));
    Rational acc(0);
    for (long k = 0; k < 9; ++k) {
        REQUIRE(pfq_partial_sum(g, k) == acc);
        acc += pfq_term(g, k);
    }
}

TEST_CASE("equal upper and lower witness cancels") {
    // -3 appears on both sides: the pair drops and the sum runs to k = 3
    PFQ f = make({Rational(-3), Rational(1)}, {Rational(-3)}, Rational(1));
    REQUIRE(pfq_sum(f) == Rational(4));
}

TEST_CASE("direct sum is invariant under parameter permutation") {
    PFQ f = make({Rational(-5), Rational(1, 2), Rational(4, 3)},
                 {Rational(7, 2), Rational(-9)}, Rational(3, 5));
    Rational v = pfq_sum(f);
    std::swap(f.upper[0], f.upper[2]);
    std::swap(f.lower[0], f.lower[1]);
    REQUIRE(pfq_sum(f) == v);
}

TEST_CASE("pfq_sum refuses non-terminating series") {
    REQUIRE_THROWS_AS(pfq_sum(make({Rational(1, 2)}, {}, Rational(1, 3))), NotTerminating);
}

TEST_CASE("regularized series zero out through the pole index") {
    PFQ f = make({Rational(-4), Rational(1), Rational(1)}, {Rational(-2), Rational(1)},
                 Rational(1), true);
    REQUIRE(regularized_pole(f) == 2);
    for (long k = 0; k <= 2; ++k) REQUIRE(pfq_term(f, k) == Rational(0));
    REQUIRE(pfq_term(f, 3) == Rational(-24));
    REQUIRE(pfq_term(f, 4) == Rational(24));
    REQUIRE(pfq_sum(f) == Rational(0));
    REQUIRE(pfq_partial_sum(f, 4) == Rational(-24));
}

TEST_CASE("reversal preserves the value and the truncation") {
    std::vector<PFQ> cases = {
        make({Rational(-4), Rational(1, 2)}, {Rational(2)}, Rational(1)),
        make({Rational(-6), Rational(1, 3), Rational(2)}, {Rational(5, 2), Rational(7, 3)},
             Rational(-2, 5)),
        make({Rational(-3), Rational(-5)}, {Rational(1, 2)}, Rational(7)),
    };
    for (const auto& f : cases) {
        auto c = classify(f);
        auto rv = reverse(f);
        auto rc = classify(rv.series);
        REQUIRE(rc.terminating);
        REQUIRE(rc.truncation == c.truncation);
        REQUIRE(rv.prefactor == pfq_term(f, c.truncation));
        REQUIRE(rv.prefactor * pfq_sum(rv.series) == pfq_sum(f));
        // argument flips to (-1)^(p+q+1)/z
        long sign_pow = static_cast<long>(f.p() + f.q()) + 1;
        Rational sign = sign_pow % 2 == 0 ? Rational(1) : Rational(-1);
        REQUIRE(rv.series.arg == sign / f.arg);
    }
    REQUIRE_THROWS_AS(reverse(make({Rational(1, 2)}, {}, Rational(1, 2))), NotTerminating);
    REQUIRE_THROWS_AS(reverse(make({Rational(-2)}, {}, Rational(0))), DomainError);
}

TEST_CASE("tail split is exact for terminating series") {
    std::vector<PFQ> cases = {
        make({Rational(-7), Rational(1, 2)}, {Rational(3)}, Rational(1)),
        make({Rational(-5), Rational(2, 3), Rational(3)}, {Rational(9, 2), Rational(1, 3)},
             Rational(4, 9)),
    };
    for (const auto& f : cases) {
        long n_max = classify(f).truncation;
        for (long n = 0; n < n_max; ++n) {
            auto st = split_tail(f, n);
            REQUIRE(st.prefactor == pfq_term(f, n + 1));
            REQUIRE(pfq_partial_sum(f, n + 1) + st.prefactor * pfq_sum(st.series) == pfq_sum(f));
        }
    }
    REQUIRE_THROWS_AS(split_tail(make({Rational(-2)}, {}, Rational(1)), -1), DomainError);
    PFQ reg = make({Rational(-4)}, {Rational(-2)}, Rational(1), true);
    REQUIRE_THROWS_AS(split_tail(reg, 1), NotApplicable);
    REQUIRE_THROWS_AS(reverse(reg), NotApplicable);
}
