#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "qscan/cyclotomic.hpp"
#include "qscan/gauss.hpp"
#include "qscan/residue.hpp"

using namespace qscan;

namespace {

mpz_class upow(std::uint64_t b, std::uint64_t e) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(b), static_cast<unsigned long>(e));
    return r;
}

} // namespace

TEST_CASE("residue character fundamentals at (5, 11)") {
    const ResidueCharacter chr(5, 11);
    CHECK(chr.u() == 2);
    CHECK(chr.w() == 4);   // 2^((11-1)/5) = 4
    CHECK(chr.chi_exp(1) == 0);
    CHECK(chr.chi_exp(chr.u()) == 4);   // inverse convention: -1 mod 5
    // Multiplicative on all of (Z/11)^*
    for (std::uint64_t x = 1; x < 11; ++x)
        for (std::uint64_t y = 1; y < 11; ++y)
            CHECK(chr.chi_exp(x * y % 11) == (chr.chi_exp(x) + chr.chi_exp(y)) % 5);
    // Order exactly p: the exponents cover 0..p-1
    std::vector<bool> seen(5, false);
    for (std::uint64_t x = 1; x < 11; ++x) seen[chr.chi_exp(x)] = true;
    for (bool b : seen) CHECK(b);
    CHECK_THROWS_AS(chr.chi_exp(0), std::domain_error);
    CHECK_THROWS_AS(chr.chi_exp(11), std::domain_error);
}

TEST_CASE("residue character rejects bad pairs") {
    CHECK_THROWS_AS(ResidueCharacter(5, 13), std::domain_error);   // 13 != 1 mod 5
    CHECK_THROWS_AS(ResidueCharacter(4, 13), std::domain_error);
    CHECK_THROWS_AS(ResidueCharacter(5, 21), std::domain_error);
    CHECK_THROWS_AS(ResidueCharacter(2, 7), std::domain_error);
}

TEST_CASE("split Gauss sums: twist exponent and absolute value") {
    for (auto [p, q] : {std::pair<std::uint64_t, std::uint64_t>{3, 7},
                        {5, 11},
                        {7, 29}}) {
        const ResidueCharacter chr(p, q);
        const GaussSumRecord rec = gauss_sum(chr);
        CHECK(rec.p == p);
        CHECK(rec.q == q);
        CHECK(rec.f == 1);
        CHECK(rec.rho == 1);   // identical under this character convention
        CHECK(!rec.g.is_zero());
        // tau(g) = zeta_p^rho g, directly
        CHECK(rec.g.galois_q(chr.u()) == rec.g.mul_zeta_p(rec.rho));
        // g conj(g) = q
        CHECK(rec.g * rec.g.conj()
              == BicyclotomicInt(p, q, mpz_class(static_cast<unsigned long>(q))));
        // zeta_p -> 1 image is -1 in (Z/p)[zeta_q]
        CHECK(rec.g.zp_image_at_one()
              == CyclotomicInt(q, mpz_class(static_cast<unsigned long>(p - 1))));
    }
}

TEST_CASE("coefficient structure of the split sums") {
    {
        const ResidueCharacter chr(3, 7);
        const auto d = structure_check(gauss_sum(chr), chr);
        CHECK(d.rho == 1);
        CHECK(d.g0_zero);
        CHECK(d.pattern_ok);
        CHECK(d.g1_is_unit);
        CHECK(d.g1_is_one);
        CHECK(d.reconstruction_ok);
        // -v = -2 = 1 mod 3 happens to equal rho here
        CHECK(d.minus_v_mod_p == 1);
        CHECK(d.rho_matches_minus_v);
    }
    {
        const ResidueCharacter chr(5, 11);
        const auto d = structure_check(gauss_sum(chr), chr);
        CHECK(d.rho == 1);
        CHECK(d.g0_zero);
        CHECK(d.pattern_ok);
        CHECK(d.g1_is_unit);
        CHECK(d.g1_is_one);
        CHECK(d.reconstruction_ok);
        // -v = -2 = 3 mod 5 differs from rho; recorded, not fatal
        CHECK(d.minus_v_mod_p == 3);
        CHECK(!d.rho_matches_minus_v);
    }
}

TEST_CASE("g^p collapses into Z[zeta_p] and sits beside -1") {
    for (auto [p, q] : {std::pair<std::uint64_t, std::uint64_t>{3, 7},
                        {5, 11},
                        {7, 29}}) {
        const ResidueCharacter chr(p, q);
        const auto rec = gauss_sum(chr);
        const PowerResult pw = gauss_power(rec);
        CHECK(pw.G.p() == p);
        CHECK(pw.vpi_G_minus_1 == 0);
        CHECK(pw.vpi_G_plus_1 == p);   // exact, not just >= p
        CHECK(!pw.congruent_plus_one_mod_pi_p);
        CHECK(pw.congruent_minus_one_mod_pi_p);
        CHECK(abs(pw.G.norm()) == upow(q, p * (p - 1) / 2));
    }
}

TEST_CASE("teichmuller lift") {
    // precision 1 is the identity on the input
    CHECK(teichmuller_lift(5, 11, 4, 1) == 4);
    // full lift: order 5 mod 11^6, congruent to 4 mod 11
    const mpz_class x = teichmuller_lift(5, 11, 4, 6);
    const mpz_class M = upow(11, 6);
    mpz_class x5;
    mpz_powm_ui(x5.get_mpz_t(), x.get_mpz_t(), 5, M.get_mpz_t());
    CHECK(x5 == 1);
    CHECK(x % 11 == 4);
    CHECK(x != 4);   // the lift genuinely moves
    CHECK_THROWS_AS(teichmuller_lift(5, 11, 1, 6), std::domain_error);
    CHECK_THROWS_AS(teichmuller_lift(5, 11, 0, 6), std::domain_error);
    CHECK_THROWS_AS(teichmuller_lift(5, 11, 2, 6), std::domain_error);   // 2^5 != 1 mod 11
    CHECK_THROWS_AS(teichmuller_lift(5, 11, 4, 0), std::domain_error);
}

TEST_CASE("embedding roots have order p and the right reductions") {
    const QadicEmbedding emb = build_embedding(5, 11, 4, 6);
    REQUIRE(emb.roots.size() == 4);
    CHECK(emb.modulus == upow(11, 6));
    for (std::uint64_t t = 1; t <= 4; ++t) {
        const mpz_class& r = emb.roots[t - 1];
        mpz_class r5;
        mpz_powm_ui(r5.get_mpz_t(), r.get_mpz_t(), 5, emb.modulus.get_mpz_t());
        CHECK(r5 == 1);
        CHECK(r % 11 == mod_pow(4, t, 11));
    }
    // pairwise distinct
    for (std::uint64_t s = 1; s <= 4; ++s)
        for (std::uint64_t t = s + 1; t <= 4; ++t)
            CHECK(emb.roots[s - 1] != emb.roots[t - 1]);
}

TEST_CASE("valuation at a split prime on rational elements") {
    const QadicEmbedding emb = build_embedding(5, 11, 4, 6);
    CHECK(valuation_at_split_prime(CyclotomicInt(5, 1), emb, 1) == 0);
    CHECK(valuation_at_split_prime(CyclotomicInt(5, 11), emb, 2) == 1);
    CHECK(valuation_at_split_prime(CyclotomicInt(5, mpz_class(11 * 11 * 11)), emb, 3) == 3);
    CHECK_THROWS_AS(valuation_at_split_prime(CyclotomicInt(5), emb, 1), std::domain_error);
    CHECK_THROWS_AS(valuation_at_split_prime(CyclotomicInt(5, 1), emb, 0), std::domain_error);
    CHECK_THROWS_AS(valuation_at_split_prime(CyclotomicInt(5, 1), emb, 5), std::domain_error);
    // q^precision is indistinguishable from zero at this precision
    CHECK_THROWS_AS(valuation_at_split_prime(CyclotomicInt(5, upow(11, 6)), emb, 1),
                    precision_exhausted);
}

TEST_CASE("stickelberger valuations are the labels themselves") {
    for (auto [p, q] : {std::pair<std::uint64_t, std::uint64_t>{3, 7},
                        {5, 11},
                        {7, 29}}) {
        const ResidueCharacter chr(p, q);
        const auto rec = gauss_sum(chr);
        const auto pw = gauss_power(rec);
        const StickelbergerReport rep = stickelberger_check(pw.G, chr);
        REQUIRE(rep.valuations.size() == p - 1);
        for (std::uint64_t t = 1; t < p; ++t)
            CHECK(rep.valuations[t - 1] == t);
        CHECK(rep.multiset_ok);
        CHECK(rep.sum_ok);
        CHECK(rep.labels_ok);
        CHECK(rep.precision_used == p + 2);   // first attempt suffices
    }
}

TEST_CASE("precision policy is honored") {
    const ResidueCharacter chr(5, 11);
    const auto pw = gauss_power(gauss_sum(chr));
    PrecisionPolicy policy;
    policy.initial = 9;
    policy.cap = 16;
    const auto rep = stickelberger_check(pw.G, chr, policy);
    CHECK(rep.precision_used == 9);
    CHECK(rep.labels_ok);
}

TEST_CASE("root-of-unity recognition") {
    const std::uint64_t p = 7;
    for (std::uint64_t e = 0; e < p; ++e) {
        const auto z = CyclotomicInt::zeta_power(p, e);
        auto r = as_root_of_unity(z);
        REQUIRE(r.has_value());
        CHECK(r->first == 1);
        CHECK(r->second == e % p);
        auto rn = as_root_of_unity(-z);
        REQUIRE(rn.has_value());
        CHECK(rn->first == -1);
        CHECK(rn->second == e % p);
    }
    CHECK(!as_root_of_unity(CyclotomicInt(p, 2)).has_value());
    CHECK(!as_root_of_unity(CyclotomicInt(p, 1) + CyclotomicInt::zeta_power(p, 1)).has_value());
    // At p = 3, 1 + zeta = -zeta^2 is itself a unit root
    const auto r3 = as_root_of_unity(CyclotomicInt(3, 1) + CyclotomicInt::zeta_power(3, 1));
    REQUIRE(r3.has_value());
    CHECK(r3->first == -1);
    CHECK(r3->second == 2);
}

TEST_CASE("non-split Gauss sums live in Z[zeta_p]") {
    const std::uint64_t fs[] = {2, 2, 3};
    std::size_t i = 0;
    for (auto [p, q] : {std::pair<std::uint64_t, std::uint64_t>{3, 5},
                        {5, 19},
                        {7, 11}}) {
        const GaussSumRecord rec = gauss_sum_general(p, q);
        CHECK(rec.f == fs[i++]);
        CHECK(rec.rho == 0);
        CHECK(rec.g.is_zeta_q_free());
        CHECK(!rec.g.is_zero());
        CHECK(rec.g * rec.g.conj() == BicyclotomicInt(p, q, upow(q, rec.f)));
        CHECK(rec.g.zp_image_at_one()
              == CyclotomicInt(q, mpz_class(static_cast<unsigned long>(p - 1))));
        // The projection squares to q^f under the Z[zeta_p] conjugation too
        const CyclotomicInt a = rec.g.project_to_p();
        CHECK(a * a.conj() == CyclotomicInt(p, upow(q, rec.f)));
    }
}

TEST_CASE("gauss_sum_general rejects the split case and p = q") {
    CHECK_THROWS_AS(gauss_sum_general(5, 11), std::domain_error);
    CHECK_THROWS_AS(gauss_sum_general(5, 5), std::domain_error);
    CHECK_THROWS_AS(gauss_sum_general(5, 15), std::domain_error);
}
