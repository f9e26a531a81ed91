#include <doctest.h>

#include "quadclass/diophantine.hpp"
#include "quadclass/pthpower.hpp"

using namespace quadclass;

TEST_CASE("target elements")
{
    TargetElement const t33 = target_element(3, 3);
    CHECK(t33.alpha == QuadInt{1, 1, -53});
    CHECK(t33.scale == 2);
    CHECK(t33.alpha.norm() == 54);

    TargetElement const t35 = target_element(3, 5);
    CHECK(t35.alpha == QuadInt{1, 1, -485});
    CHECK(t35.scale == 4);

    // 1 - 2*5^7 = -156249 = -(9^2) * 1929
    TargetElement const t57 = target_element(5, 7);
    CHECK(t57.s == 9);
    CHECK(t57.alpha == QuadInt{1, 9, -1929});
    CHECK(t57.alpha.norm() == 2 * ipow(BigInt(5), 7));

    CHECK_THROWS_AS(target_element(4, 3), DomainError);
    CHECK_THROWS_AS(target_element(3, 2), DomainError);
    CHECK_THROWS_AS(target_element(3, 9), DomainError);
    CHECK_THROWS_AS(target_element(1, 3), DomainError);
}

TEST_CASE("quadratic integer arithmetic")
{
    QuadInt const r{2, 1, -3};
    CHECK(pow(r, 3) == QuadInt{-10, 9, -3});
    CHECK(pow(r, 0) == QuadInt{1, 0, -3});
    CHECK(pow(r, 3).norm() == ipow(r.norm(), 3));
    CHECK((-r) * (-r) == r * r);
}

TEST_CASE("special elements are not p-th powers")
{
    CHECK_FALSE(is_special_pth_power(3, 3).is_pth_power);
    CHECK_FALSE(is_special_pth_power(5, 3).is_pth_power);
    CHECK_FALSE(is_special_pth_power(3, 7).is_pth_power);
}

TEST_CASE("exact root oracle")
{
    // synthetic cube: (2 + sqrt(-3))^3 = -10 + 9 sqrt(-3)
    QuadInt const target{-10, 9, -3};
    auto const root = exact_root_oracle(target, 3);
    REQUIRE(root.has_value());
    CHECK(pow(*root, 3) == target);
    CHECK(*root == QuadInt{2, 1, -3});
    auto const neg = exact_root_oracle(-target, 3);
    REQUIRE(neg.has_value());
    CHECK(*neg == QuadInt{-2, -1, -3});

    CHECK_FALSE(exact_root_oracle(target_element(3, 3).scaled(), 3).has_value());

    QuadInt const fifth = pow(QuadInt{3, -2, -7}, 5);
    auto const r5 = exact_root_oracle(fifth, 5);
    REQUIRE(r5.has_value());
    CHECK(pow(*r5, 5) == fifth);
}

TEST_CASE("pruned search agrees with the unpruned oracle")
{
    // the documented grid, then a wider sweep of m
    for (std::int64_t m = 3; m <= 99; m += 2) {
        for (std::int64_t p : {3, 5, 7}) {
            CAPTURE(m);
            CAPTURE(p);
            TargetElement const t = target_element(m, p);
            QuadInt const target = t.scaled();
            auto const up = static_cast<unsigned long>(p);
            auto root = exact_root_oracle(target, up);
            if (!root)
                root = exact_root_oracle(-target, up);

            PthPowerVerdict const v = is_special_pth_power(m, p);
            REQUIRE(v.is_pth_power == root.has_value());
            if (v.is_pth_power) {
                REQUIRE(v.witness.has_value());
                QuadInt const w = pow(*v.witness, up);
                REQUIRE((w == target || w == -target));
            }
            if (root) {
                // any actual root obeys the divisibility constraints used for pruning
                CHECK(t.scale % BigInt(abs(root->x)) == 0);
                CHECK((t.scale * t.s) % BigInt(abs(root->y)) == 0);
                // and produces a solution of (2m-1) x^2 + 1 = 2 m^y with y = p
                SolutionSet const sols =
                    solve(make_instance(2, BigInt(2 * m - 1), BigInt(1), BigInt(m)), static_cast<unsigned>(p));
                bool found = false;
                for (auto const & s : sols.solutions)
                    found = found || s.y == unsigned(p);
                CHECK(found);
            }
        }
    }
}

TEST_CASE("twin prime joint check")
{
    TwinVerdict const a = twin_prime_joint_check(3, 3);
    CHECK_FALSE(a.lower.is_pth_power);
    CHECK_FALSE(a.upper.is_pth_power);
    CHECK(a.holds());
    CHECK(twin_prime_joint_check(5, 5).holds());
    CHECK(twin_prime_joint_check(9, 11).holds());
    CHECK_THROWS_AS(twin_prime_joint_check(3, 7), DomainError);
}
