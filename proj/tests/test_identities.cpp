#include <catch2/catch_amalgamated.hpp>

#include "hypsum/identities.hpp"

using hypsum::DomainError;
using hypsum::UnknownId;
using hypsum::exact::Rational;
using hypsum::hyper::naive_sum;
using hypsum::hyper::pfq_sum;

namespace ident = hypsum::ident;
namespace lemmas = hypsum::ident::lemmas;

using ident::find_identity;
using ident::find_lemma;
using ident::verify_identity;
using ident::verify_lemma;

namespace {

Rational rat(long p, long q = 1) { return Rational(p, q); }

const ident::IdentityEntry& E(const std::string& id) { return find_identity(id); }

}  // namespace

TEST_CASE("identity registry lists S0 through S9 with their shapes") {
    const auto& reg = ident::identity_registry();
    REQUIRE(reg.size() == 10);
    for (std::size_t i = 0; i < reg.size(); ++i) {
        REQUIRE(reg[i].id == "S" + std::to_string(i));
        REQUIRE_FALSE(reg[i].statement.empty());
        REQUIRE_FALSE(reg[i].trace.empty());
    }

    REQUIRE(E("S4").params == ident::ParamKind::NM);
    REQUIRE(E("S6").params == ident::ParamKind::NK);
    REQUIRE(E("S5").params == ident::ParamKind::None);
    REQUIRE(E("S9").params == ident::ParamKind::None);
    REQUIRE(E("S5").numeric);
    REQUIRE(E("S9").numeric);
    REQUIRE(E("S5").default_digits == 128);
    REQUIRE(E("S9").default_digits == 60);
    for (const char* id : {"S0", "S1", "S2", "S3", "S4", "S6", "S7", "S8"})
        REQUIRE_FALSE(E(id).numeric);

    REQUIRE(E("S0").trace == std::vector<std::string>{"saalschutz"});
    REQUIRE(E("S3").trace == std::vector<std::string>{"split-p72320", "whipple-1-6"});
    REQUIRE(E("S7").trace == std::vector<std::string>{"contig-p72325", "p7536", "dlmf-16-3-7",
                                                      "gauss-unit", "p74431"});
    REQUIRE(E("S8").trace == std::vector<std::string>{"binom-1f0", "gauss-second-half"});

    REQUIRE_THROWS_AS(find_identity("S10"), UnknownId);
    REQUIRE_THROWS_AS(find_identity(""), UnknownId);
}

TEST_CASE("spot values agree with independent naive accumulation") {
    // S0(1): hand loop over C(2k,k) C(2(1-k),1-k)/(2k+1)
    Rational s0(0);
    for (long k = 0; k <= 1; ++k)
        s0 += Rational(mpz_class(ident::binom_z(2 * k, k) * ident::binom_z(2 * (1 - k), 1 - k)),
                       mpz_class(2 * k + 1));
    REQUIRE(s0 == rat(8, 3));
    REQUIRE(E("S0").lhs(1, 0) == rat(8, 3));
    REQUIRE(E("S0").rhs(1, 0) == rat(8, 3));

    // S1(0) = S2(0) = S3(0) = 1/2: each is the single k = 0 term 1/C(2,1)
    for (const char* id : {"S1", "S2", "S3"}) {
        REQUIRE(E(id).lhs(0, 0) == rat(1, 2));
        REQUIRE(E(id).rhs(0, 0) == rat(1, 2));
    }

    // S4(2,2): only k = 2 survives, C(5,4) C(2,2) = 5
    Rational s4(0);
    for (long k = 0; k <= 2; ++k)
        s4 += Rational(mpz_class(ident::binom_z(5, 2 * k) * ident::binom_z(k, 2)));
    REQUIRE(s4 == rat(5));
    REQUIRE(E("S4").lhs(2, 2) == rat(5));
    REQUIRE(E("S4").rhs(2, 2) == rat(5));

    // S6(2,1): L_{1,1} 4!/3! + L_{2,1} 4!/4! = 4 + 2 = 6 = L_{3,2}
    REQUIRE(ident::lah(3, 2) == rat(6));
    REQUIRE(E("S6").lhs(2, 1) == rat(6));
    REQUIRE(E("S6").rhs(2, 1) == rat(6));

    // S7(2): (1/2)^2 C(4,1)^2 + C(4,0)^2 = 4 + 1 = 5 = Catalan(3)
    Rational s7(0);
    for (long k = 1; k <= 2; ++k) {
        mpz_class b = ident::binom_z(4, 2 - k);
        s7 += Rational(mpz_class(mpz_class(k * k) * b * b), mpz_class(4));
    }
    REQUIRE(s7 == rat(5));
    REQUIRE(ident::catalan(3) == rat(5));
    REQUIRE(E("S7").lhs(2, 0) == rat(5));

    // S8(2): 1 + 3/2 + 6/4 = 4
    REQUIRE(E("S8").lhs(2, 0) == rat(4));
    REQUIRE(E("S8").rhs(2, 0) == rat(4));

    for (auto [id, n, extra] : {std::tuple<const char*, long, long>{"S0", 1, 0},
                                {"S4", 2, 2},
                                {"S6", 2, 1},
                                {"S7", 2, 0},
                                {"S8", 2, 0}}) {
        auto rep = verify_identity(id, n, extra);
        INFO(rep.id << " " << rep.params);
        REQUIRE(rep.pass);
        REQUIRE(rep.mode == "exact");
    }
    REQUIRE(verify_identity("S4", 2, 2).params == "n=2,m=2");
    REQUIRE(verify_identity("S6", 2, 1).params == "n=2,k=1");
    REQUIRE(verify_identity("S0", 1).params == "n=1");
}

TEST_CASE("exact grids hold on a reduced sweep") {
    for (long n = 0; n <= 40; ++n) {
        for (const char* id : {"S0", "S1", "S2", "S3", "S8"}) {
            INFO(id << " n=" << n);
            REQUIRE(verify_identity(id, n).pass);
        }
        // S1 and S2 share more than the right-hand side: the sums themselves agree
        REQUIRE(E("S1").lhs(n, 0) == E("S2").lhs(n, 0));
        REQUIRE(E("S3").lhs(n, 0) == rat(3, 2 * n + 3) * E("S1").lhs(n, 0));
    }
    for (long n = 2; n <= 16; ++n)
        for (long m = 2; m <= n; ++m) {
            INFO("S4 n=" << n << " m=" << m);
            REQUIRE(verify_identity("S4", n, m).pass);
        }
    // outside the stated domain but still true; kept informational
    for (long n = 1; n <= 10; ++n) {
        REQUIRE(verify_identity("S4", n, 0).pass);
        REQUIRE(verify_identity("S4", n, 1).pass);
    }
    for (long n = 0; n <= 12; ++n)
        for (long k = 0; k <= n; ++k) {
            INFO("S6 n=" << n << " k=" << k);
            REQUIRE(verify_identity("S6", n, k).pass);
        }
    for (long n = 1; n <= 16; ++n) {
        INFO("S7 n=" << n);
        REQUIRE(verify_identity("S7", n).pass);
    }
}

TEST_CASE("numeric identities S5 and S9 pass at reduced digits") {
    auto s5 = verify_identity("S5", 0, 0, 40);
    REQUIRE(s5.pass);
    REQUIRE(s5.mode == "numeric");
    REQUIRE(s5.params.empty());
    REQUIRE(s5.tolerance == "10^-25");
    REQUIRE(s5.trace == std::vector<std::string>{"eval-p741365"});
    REQUIRE_FALSE(s5.abs_diff.empty());

    auto s9 = verify_identity("S9", 0, 0, 40);
    REQUIRE(s9.pass);
    REQUIRE(s9.mode == "numeric");
    REQUIRE(s9.tolerance == "10^-30");
    REQUIRE(s9.trace == std::vector<std::string>{"eval-p74313"});
}

TEST_CASE("domain guards reject out-of-range parameters") {
    REQUIRE_THROWS_AS(verify_identity("S0", -1), DomainError);
    REQUIRE_THROWS_AS(verify_identity("S4", 3, 4), DomainError);
    REQUIRE_THROWS_AS(verify_identity("S4", 3, -1), DomainError);
    REQUIRE_THROWS_AS(verify_identity("S6", 2, 3), DomainError);
    REQUIRE_THROWS_AS(verify_identity("S7", 0), DomainError);
    REQUIRE_THROWS_AS(verify_identity("nosuch"), UnknownId);

    // the S6 identity covers k = 0, but its hypergeometric summand form does not
    REQUIRE(verify_identity("S6", 3, 0).pass);
    REQUIRE_THROWS_AS(E("S6").summand(3, 0), DomainError);
}

TEST_CASE("summand grammar forms reproduce the identity values") {
    REQUIRE(naive_sum(E("S0").summand(3, 0)) == E("S0").lhs(3, 0));
    REQUIRE(naive_sum(E("S1").summand(3, 0)) == E("S1").lhs(3, 0));
    REQUIRE(naive_sum(E("S2").summand(3, 0)) == E("S2").lhs(3, 0));
    REQUIRE(naive_sum(E("S3").summand(3, 0)) == E("S3").lhs(3, 0));
    REQUIRE(naive_sum(E("S4").summand(5, 2)) == E("S4").lhs(5, 2));
    REQUIRE(naive_sum(E("S7").summand(4, 0)) == E("S7").lhs(4, 0));
    REQUIRE(naive_sum(E("S8").summand(5, 0)) == E("S8").lhs(5, 0));

    // S6's grammar form is the normalized tail: multiply back (n+k+1)!/(k!(k+1)!)
    Rational s6 = naive_sum(E("S6").summand(4, 2));
    REQUIRE(s6 == rat(2, 7));
    Rational norm(ident::fact_z(7), mpz_class(ident::fact_z(2) * ident::fact_z(3)));
    REQUIRE(s6 * norm == E("S6").lhs(4, 2));

    // infinite summands: hand-checked prefixes
    REQUIRE(naive_sum(E("S5").summand(0, 0), 3) == rat(-5, 12));
    REQUIRE(naive_sum(E("S9").summand(0, 0), 3) == rat(214, 225));
}

TEST_CASE("round trips recognize every summand on the grid") {
    REQUIRE(ident::round_trip_exact(E("S0").summand(5, 0)));
    REQUIRE(ident::round_trip_exact(E("S1").summand(4, 0)));
    REQUIRE(ident::round_trip_exact(E("S2").summand(4, 0)));
    REQUIRE(ident::round_trip_exact(E("S3").summand(4, 0)));
    REQUIRE(ident::round_trip_exact(E("S4").summand(6, 3)));
    REQUIRE(ident::round_trip_exact(E("S6").summand(5, 2)));
    REQUIRE(ident::round_trip_exact(E("S7").summand(4, 0)));
    REQUIRE(ident::round_trip_exact(E("S8").summand(6, 0)));
    REQUIRE(ident::round_trip_exact(E("S5").summand(0, 0)));
    REQUIRE(ident::round_trip_exact(E("S9").summand(0, 0)));
    REQUIRE(ident::round_trip_exact(E("S9").summand(0, 0), 20));
}

TEST_CASE("lemma registry covers the derivation chain") {
    const auto& reg = ident::lemma_registry();
    std::vector<std::string> ids;
    for (const auto& e : reg) ids.push_back(e.id);
    REQUIRE(ids == std::vector<std::string>{"3.2", "3.4", "aux-induction", "8.2", "8.3", "8.4",
                                            "8.5", "8.6", "8.7", "10.3", "10.4", "S8-chain"});
    REQUIRE(find_lemma("3.2").n_lo == 0);
    REQUIRE(find_lemma("3.2").n_hi == 100);
    REQUIRE(find_lemma("8.2").n_lo == 1);
    REQUIRE(find_lemma("10.3").n_lo == 0);
    REQUIRE(find_lemma("10.3").n_hi == 0);
    REQUIRE_THROWS_AS(find_lemma("nosuch"), UnknownId);
}

TEST_CASE("lemma anchors hold at hand-checked points") {
    // direct series sums behind the anchors
    REQUIRE(pfq_sum(lemmas::f43_a(1)) == rat(5, 3));
    REQUIRE(pfq_sum(lemmas::f43_b(1)) == rat(5));
    REQUIRE(pfq_sum(lemmas::f32_u(2, 2)) == rat(9, 8));
    REQUIRE(pfq_sum(lemmas::f32_tail(1)) == rat(5, 4));
    REQUIRE(pfq_sum(lemmas::f43_catalan(2)) == rat(5, 4));

    REQUIRE(verify_lemma("3.2", 1).pass);
    REQUIRE(verify_lemma("3.4", 1).pass);
    REQUIRE(verify_lemma("aux-induction", 1).pass);
    REQUIRE(verify_lemma("8.3", 2).pass);
    REQUIRE(verify_lemma("8.7", 1).pass);
    REQUIRE(verify_lemma("S8-chain", 2).pass);

    auto rep = verify_lemma("3.2", 1);
    REQUIRE(rep.params == "n=1");
    REQUIRE(rep.mode == "exact");
    REQUIRE(rep.lhs == "5/3");
    REQUIRE(rep.rhs == "5/3");
}

TEST_CASE("lemma grids hold on a reduced sweep") {
    for (const auto& lem : ident::lemma_registry()) {
        long hi = lem.n_lo == lem.n_hi ? lem.n_hi : std::min<long>(lem.n_hi, lem.n_lo + 11);
        for (long n = lem.n_lo; n <= hi; ++n) {
            auto rep = verify_lemma(lem.id, n);
            INFO(lem.id << " n=" << n << " lhs=" << rep.lhs << " rhs=" << rep.rhs);
            REQUIRE(rep.pass);
        }
    }
}

TEST_CASE("verify_lemma rejects out-of-grid parameters") {
    REQUIRE_THROWS_AS(verify_lemma("3.2", 101), DomainError);
    REQUIRE_THROWS_AS(verify_lemma("3.2", -1), DomainError);
    REQUIRE_THROWS_AS(verify_lemma("8.2", 0), DomainError);
    REQUIRE_THROWS_AS(verify_lemma("10.3", 1), DomainError);
}

TEST_CASE("verify_all runs a reduced grid deterministically across job counts") {
    ident::GridConfig cfg;
    cfg.s0 = 8;
    cfg.s123 = 8;
    cfg.s4 = 6;
    cfg.s6 = 5;
    cfg.s7 = 6;
    cfg.s8 = 8;
    cfg.lemma_hi = 4;
    cfg.s5_digits = 40;
    cfg.s9_digits = 40;
    cfg.jobs = 1;

    auto seq = ident::verify_all(cfg);
    // 4*9 + 15 + 1 + 21 + 6 + 9 + 1 identities, then 5+5+5+6*4+1+1+5 lemmas
    REQUIRE(seq.size() == 135);
    for (const auto& r : seq) {
        INFO(r.id << " " << r.params << " lhs=" << r.lhs << " rhs=" << r.rhs);
        REQUIRE(r.pass);
    }
    REQUIRE(seq[0].id == "S0");
    REQUIRE(seq[0].params == "n=0");
    REQUIRE(seq[36].id == "S4");
    REQUIRE(seq[36].params == "n=2,m=2");
    REQUIRE(seq[51].id == "S5");
    REQUIRE(seq[52].id == "S6");
    REQUIRE(seq[88].id == "S9");
    REQUIRE(seq[89].id == "3.2");
    REQUIRE(seq[89].params == "n=0");
    REQUIRE(seq.back().id == "S8-chain");
    REQUIRE(seq.back().params == "n=4");

    cfg.jobs = 4;
    auto par = ident::verify_all(cfg);
    REQUIRE(par.size() == seq.size());
    for (std::size_t i = 0; i < seq.size(); ++i) {
        INFO("index " << i << ": " << seq[i].id << " " << seq[i].params);
        REQUIRE(par[i].id == seq[i].id);
        REQUIRE(par[i].params == seq[i].params);
        REQUIRE(par[i].mode == seq[i].mode);
        REQUIRE(par[i].lhs == seq[i].lhs);
        REQUIRE(par[i].rhs == seq[i].rhs);
        REQUIRE(par[i].pass == seq[i].pass);
        REQUIRE(par[i].abs_diff == seq[i].abs_diff);
        REQUIRE(par[i].trace == seq[i].trace);
    }
}
