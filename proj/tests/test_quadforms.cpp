#include <doctest.h>

#include <random>
#include <set>

#include "oracles.hpp"
#include "quadclass/quadform.hpp"

using namespace quadclass;

namespace {

std::vector<std::int64_t> discriminants_up_to(std::int64_t bound)
{
    std::vector<std::int64_t> out;
    for (std::int64_t D = -3; D >= -bound; --D) {
        std::int64_t const r = ((D % 4) + 4) % 4;
        if (r == 0 || r == 1)
            out.push_back(D);
    }
    return out;
}

QuadForm random_sl2(QuadForm f, std::mt19937_64 & rng)
{
    // compose a few elementary moves T^k and S; coefficients stay well inside 64 bits
    std::uniform_int_distribution<int> kd(-6, 6);
    for (int step = 0; step < 4; ++step) {
        std::int64_t const k = kd(rng);
        // x -> x + k y
        f = {f.a, f.b + 2 * f.a * k, f.a * k * k + f.b * k + f.c};
        // x -> -y, y -> x
        f = {f.c, -f.b, f.a};
    }
    return f;
}

} // namespace

TEST_CASE("fundamental discriminant")
{
    CHECK(fundamental_discriminant(BigInt(-53)) == -212);
    CHECK(fundamental_discriminant(BigInt(-3)) == -3);
    CHECK(fundamental_discriminant(BigInt(-5)) == -20);
    CHECK_THROWS_AS(fundamental_discriminant(BigInt(-45)), DomainError);
    CHECK_THROWS_AS(fundamental_discriminant(BigInt(5)), DomainError);
}

TEST_CASE("principal forms")
{
    CHECK(principal_form(-4) == QuadForm{1, 0, 1});
    CHECK(principal_form(-212) == QuadForm{1, 0, 53});
    CHECK(principal_form(-163) == QuadForm{1, 1, 41});
    CHECK_THROWS_AS(principal_form(-5), DomainError);
}

TEST_CASE("validating constructor")
{
    CHECK_NOTHROW(QuadForm::make(2, 2, 27));
    CHECK_THROWS_AS(QuadForm::make(2, 0, 2), DomainError);  // not primitive
    CHECK_THROWS_AS(QuadForm::make(1, 4, 1), DomainError);  // D > 0
    CHECK_THROWS_AS(QuadForm::make(-1, 0, -1), DomainError); // negative definite
}

TEST_CASE("reduce")
{
    CHECK(reduce({1, 0, 53}) == QuadForm{1, 0, 53});
    CHECK(reduce({53, 0, 1}) == QuadForm{1, 0, 53});
    CHECK(reduce({2, -2, 27}) == QuadForm{2, 2, 27});
}

TEST_CASE("reduce is idempotent and agrees with the textbook reduction on 10^4 random forms")
{
    std::mt19937_64 rng(2024);
    auto const Ds = discriminants_up_to(20000);
    std::uniform_int_distribution<std::size_t> pick(0, Ds.size() - 1);
    int checked = 0;
    while (checked < 10000) {
        std::int64_t const D = Ds[pick(rng)];
        auto const forms = oracle::naive_forms(D);
        std::uniform_int_distribution<std::size_t> fp(0, forms.size() - 1);
        QuadForm const base = forms[fp(rng)];
        QuadForm const f = random_sl2(base, rng);
        REQUIRE(f.discriminant() == D);
        QuadForm const r = reduce(f);
        REQUIRE(r.is_reduced());
        REQUIRE(r.discriminant() == D);
        REQUIRE(reduce(r) == r);
        REQUIRE(r == base);
        REQUIRE(r == oracle::naive_reduce(f));
        ++checked;
    }
}

TEST_CASE("enumeration examples")
{
    CHECK(enumerate_reduced(-163).h() == 1);
    auto const g4 = enumerate_reduced(-4);
    CHECK(g4.reduced_forms == std::vector<QuadForm>{{1, 0, 1}});
    CHECK(enumerate_reduced(-212).h() == 6);
    CHECK(enumerate_reduced(-996).h() == 12);
    CHECK(enumerate_reduced(-31).h() == 3);
    CHECK_THROWS_AS(enumerate_reduced(-5), DomainError);
    CHECK_THROWS_AS(enumerate_reduced(-1000, {500, 1}), ResourceError);
}

TEST_CASE("enumeration matches the naive oracle for every |D| <= 4000")
{
    for (std::int64_t D : discriminants_up_to(4000)) {
        auto expected = oracle::naive_forms(D);
        std::sort(expected.begin(), expected.end());
        ClassGroup const g = enumerate_reduced(D);
        REQUIRE(g.discriminant == D);
        REQUIRE(g.reduced_forms == expected);
        REQUIRE(g.principal() == principal_form(D));
    }
}

TEST_CASE("Gauss class number one list")
{
    for (std::int64_t d : {1, 2, 3, 7, 11, 19, 43, 67, 163}) {
        std::int64_t const D = to_i64(fundamental_discriminant(BigInt(-d)));
        CHECK(enumerate_reduced(D).h() == 1);
    }
}

TEST_CASE("composition examples")
{
    CHECK(compose({2, 2, 27}, {2, 2, 27}) == QuadForm{1, 0, 53});
    for (QuadForm const & f : enumerate_reduced(-212).reduced_forms) {
        CHECK(compose(principal_form(-212), f) == reduce(f));
        CHECK(compose(f, inverse(f)).is_principal());
    }
    CHECK(inverse({1, 0, 53}) == QuadForm{1, 0, 53});
    CHECK(inverse({6, 2, 9}) == reduce({6, -2, 9}));
    CHECK(reduce(inverse({2, 2, 27})) == QuadForm{2, 2, 27});
    CHECK_THROWS_AS(compose({1, 0, 53}, {1, 1, 41}), DomainError);
}

TEST_CASE("element orders")
{
    CHECK(order_in_class_group(principal_form(-212)) == 1);
    CHECK(order_in_class_group({2, 2, 27}) == 2);
    CHECK(order_in_class_group({6, 2, 9}) == 3);
}

TEST_CASE("group laws on Cl(-212) and Cl(-996)")
{
    for (std::int64_t D : {-212, -996}) {
        auto const forms = enumerate_reduced(D).reduced_forms;
        std::set<QuadForm> const members(forms.begin(), forms.end());
        int principal_count = 0;
        for (auto const & f : forms) {
            principal_count += f.is_principal();
            CHECK(compose(f, principal_form(D)) == f);
            CHECK(members.count(inverse(f)) == 1);
            CHECK(compose(f, inverse(f)).is_principal());
            for (auto const & g : forms) {
                QuadForm const fg = compose(f, g);
                REQUIRE(members.count(fg) == 1); // closure
                CHECK(fg == compose(g, f));       // commutativity
                for (auto const & k : forms)
                    REQUIRE(compose(fg, k) == compose(f, compose(g, k)));
            }
        }
        CHECK(principal_count == 1);
    }
}

TEST_CASE("composition agrees with ideal multiplication")
{
    std::mt19937_64 rng(77);
    for (std::int64_t D : discriminants_up_to(3000)) {
        auto const forms = enumerate_reduced(D).reduced_forms;
        std::uniform_int_distribution<std::size_t> fp(0, forms.size() - 1);
        for (int i = 0; i < 4; ++i) {
            QuadForm const f = forms[fp(rng)], g = forms[fp(rng)];
            REQUIRE(compose(f, g) == oracle::ideal_product(f, g));
        }
    }
    // larger discriminants, unreduced inputs
    for (std::int64_t D : {-114791252LL, -2740LL, -595507LL * 4 + 0LL, -99999995LL}) {
        std::int64_t const r = ((D % 4) + 4) % 4;
        if (r != 0 && r != 1)
            continue;
        auto const forms = enumerate_reduced(D).reduced_forms;
        std::uniform_int_distribution<std::size_t> fp(0, forms.size() - 1);
        for (int i = 0; i < 50; ++i) {
            QuadForm const f = forms[fp(rng)], g = forms[fp(rng)];
            REQUIRE(compose(f, g) == oracle::ideal_product(f, g));
            REQUIRE(reduce(compose_unreduced(f, g)) == compose(f, g));
        }
    }
}

TEST_CASE("Lagrange: element orders divide h")
{
    for (std::int64_t D : discriminants_up_to(3000)) {
        ClassGroup const g = enumerate_reduced(D);
        for (auto const & f : g.reduced_forms) {
            std::uint64_t const k = order_in_class_group(f);
            REQUIRE(g.h() % k == 0);
            REQUIRE(oracle::naive_power(f, static_cast<unsigned>(k)).is_principal());
            REQUIRE(power(f, k).is_principal());
        }
    }
}

TEST_CASE("prime forms")
{
    CHECK(prime_form(-212, 2) == QuadForm{2, 2, 27});
    CHECK(prime_form(-212, 3) == QuadForm{3, 2, 18});
    CHECK(prime_form(-163, 41) == QuadForm{41, 1, 1});
    CHECK_THROWS_AS(prime_form(-212, 5), DomainError); // (-212/5) = -1
    CHECK_THROWS_AS(prime_form(-212, 9), DomainError);
    CHECK(kronecker(-212, 5) == -1);
    CHECK(kronecker(-212, 3) == 1);
    CHECK(kronecker(-212, 2) == 0);
    CHECK(kronecker(-31, 2) == 1);
    CHECK(kronecker(-35, 2) == -1);

    for (std::int64_t D : {-212LL, -996LL, -1940LL, -4LL, -3LL, -595507LL, -114791252LL}) {
        for (std::int64_t q = 2; q < 400; ++q) {
            if (!is_prime(std::uint64_t(q)))
                continue;
            int const k = kronecker(D, q);
            if (k == -1) {
                CHECK_THROWS_AS(prime_form(D, q), DomainError);
                continue;
            }
            QuadForm const f = prime_form(D, q);
            REQUIRE(f.discriminant() == D);
            REQUIRE(f.a == q);
            REQUIRE(f.b >= 0);
            REQUIRE(f.b <= q);
            if (k == 1) {
                QuadForm conj{f.a, -f.b, f.c};
                REQUIRE(compose(f, conj).is_principal());
            }
        }
    }
}
