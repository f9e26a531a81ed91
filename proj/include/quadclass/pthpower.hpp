#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "quadclass/integers.hpp"

namespace quadclass {

/// x + y sqrt(d0) in Z[sqrt(d0)], d0 negative and square-free.
struct QuadInt
{
    BigInt x;
    BigInt y;
    BigInt d0;

    BigInt norm() const { return x * x - y * y * d0; }

    QuadInt operator-() const { return {-x, -y, d0}; }
    friend QuadInt operator*(QuadInt const & l, QuadInt const & r);
    friend bool operator==(QuadInt const & l, QuadInt const & r)
    {
        return l.x == r.x && l.y == r.y && l.d0 == r.d0;
    }
};

QuadInt pow(QuadInt const & base, unsigned long exponent);
std::string to_string(QuadInt const & q);

/// alpha = 1 + sqrt(1 - 2 m^p) written over the square-free part d0,
/// together with the scale 2^((p-1)/2).
struct TargetElement
{
    QuadInt alpha;
    BigInt scale;
    BigInt s; // 1 - 2 m^p = s^2 d0

    QuadInt scaled() const { return {scale * alpha.x, scale * alpha.y, alpha.d0}; }
};

struct PthPowerVerdict
{
    bool is_pth_power = false;
    std::optional<QuadInt> witness; // witness^p == +-scaled target
    std::uint64_t checked_candidates = 0;
};

/// Requires m odd >= 3 and p an odd prime; throws DomainError otherwise.
TargetElement target_element(std::int64_t m, std::int64_t p);

/*
 * Decides whether +-2^((p-1)/2) (1 + sqrt(1 - 2 m^p)) is a p-th power in
 * Z[sqrt(d0)]. A root a + b sqrt(d0) must satisfy a | 2^((p-1)/2),
 * b | 2^((p-1)/2) s and a^2 - b^2 d0 = 2m; every survivor is raised to the
 * p-th power exactly.
 */
PthPowerVerdict is_special_pth_power(std::int64_t m, std::int64_t p);

/// Unpruned search over |a|, |b| <= ceil(N(target)^(1/2p)) + 1.
std::optional<QuadInt> exact_root_oracle(QuadInt const & target, unsigned long p);

struct TwinVerdict
{
    PthPowerVerdict lower;
    PthPowerVerdict upper;

    /// At least one of the two elements is not a p-th power.
    bool holds() const { return !(lower.is_pth_power && upper.is_pth_power); }
};

/// Requires p and p + 2 prime.
TwinVerdict twin_prime_joint_check(std::int64_t m, std::int64_t p);

} // namespace quadclass
