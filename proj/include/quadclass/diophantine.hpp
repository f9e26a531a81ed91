#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "quadclass/integers.hpp"

namespace quadclass {

/*
 * Equation D1 x^2 + D2 = lambda^2 m^y in positive integers x, y.
 * lambda is one of 1, sqrt(2), 2 and is carried as lambda_sq in {1, 2, 4}.
 */
struct BSInstance
{
    std::int64_t lambda_sq = 1;
    BigInt D1;
    BigInt D2;
    BigInt m;

    /// Throws DomainError naming the violated rule.
    void validate() const;
    std::string describe() const;

    friend bool operator==(BSInstance const &, BSInstance const &) = default;
};

BSInstance make_instance(std::int64_t lambda_sq, BigInt D1, BigInt D2, BigInt m);

struct Solution
{
    BigInt x;
    unsigned y = 0;

    friend bool operator==(Solution const &, Solution const &) = default;
};

enum class ExceptionalFamily
{
    F,
    G,
    H,
    S,
};

std::string_view family_name(ExceptionalFamily f);

struct FamilyWitnessF
{
    unsigned i = 0;
    int epsilon = 0; // +1 or -1
};

struct FamilyWitnessH
{
    unsigned r = 0;
    BigInt s;
};

struct Classification
{
    std::optional<FamilyWitnessF> f;
    std::optional<unsigned> g; // exponent r
    std::optional<FamilyWitnessH> h;
    bool s = false;

    bool exceptional() const { return f || g || h || s; }
    std::vector<ExceptionalFamily> families() const;
};

struct SolutionSet
{
    BSInstance instance;
    unsigned y_max = 0;
    std::vector<Solution> solutions; // sorted by y then x
    Classification families;
};

/// Exhaustive over 1 <= y <= y_max.
SolutionSet solve(BSInstance const & instance, unsigned y_max);

/// (F_{i-2e}, L_{i+e}, F_i) for some i >= 2, e = +-1.
std::optional<FamilyWitnessF> in_family_F(BigInt const & D1, BigInt const & D2, BigInt const & m);

/// D1 = 1 and D2 = 4 m^r - 1 for some r >= 1.
std::optional<unsigned> in_family_G(BigInt const & D1, BigInt const & D2, BigInt const & m);

/// Exists s >= 1 with 3 D1 s^2 - D2 = +-lambda^2 and D1 s^2 + D2 = lambda^2 m^r.
std::optional<FamilyWitnessH> in_family_H(BSInstance const & instance);

struct STuple
{
    std::int64_t lambda_sq;
    std::int64_t D1;
    std::int64_t D2;
    std::int64_t m;
};

/// The nine exceptional tuples with two solutions, lambda stored squared.
std::array<STuple, 9> const & s_table();
bool in_set_S(std::int64_t lambda_sq, BigInt const & D1, BigInt const & D2, BigInt const & m);

Classification classify(BSInstance const & instance);

struct BoundAudit
{
    SolutionSet solutions;
    unsigned omega_m = 0;
    std::uint64_t bound = 0; // 2^(omega(m) - 1)
    bool checked = false;    // false when the instance is exceptional
    bool pass = true;
};

BoundAudit audit_bound(BSInstance const & instance, unsigned y_max);

struct LebesgueHit
{
    BigInt x;
    std::uint64_t y;
    unsigned n;
};

struct LebesgueReport
{
    unsigned n_max = 0;
    std::uint64_t y_bound = 0;
    std::uint64_t checked = 0;
    std::vector<LebesgueHit> hits;
};

/// Searches x^2 + 1 = 2 y^n over odd 3 <= n <= n_max, odd 3 <= y <= y_bound.
LebesgueReport lebesgue_check(unsigned n_max, std::uint64_t y_bound);

} // namespace quadclass
