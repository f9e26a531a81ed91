#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "quadclass/cache.hpp"
#include "quadclass/integers.hpp"
#include "quadclass/quadform.hpp"

namespace quadclass {

/// Q(sqrt(radicand)) for a negative radicand: square-free part and the
/// discriminant of its maximal order.
struct FieldPoint
{
    BigInt radicand;
    SquarefreeDecomposition sq;
    BigInt disc;

    BigInt const & d0() const { return sq.d0; }
    BigInt const & s() const { return sq.s; }
};

FieldPoint make_field_point(BigInt const & radicand);

/// Field point whose square-free decomposition is already known.
FieldPoint make_field_point(SquarefreeDecomposition sq);

/*
 * Q(sqrt(1 - 2 m^t)) for odd m, t >= 3. Construction asserts
 * d = 3 (mod 4), d0 = 3 (mod 4), D_K = 4 d0 and d0 != -1.
 */
struct FamilyPoint
{
    std::int64_t m = 0;
    std::int64_t t = 0;
    FieldPoint field;
    std::optional<std::uint64_t> h;

    BigInt const & d() const { return field.radicand; }
    BigInt const & d0() const { return field.d0(); }
    BigInt const & s() const { return field.s(); }
    BigInt const & disc() const { return field.disc; }
};

FamilyPoint make_family_point(std::int64_t m, std::int64_t t);

/// The field discriminant as a 64-bit value; ResourceError beyond the cap.
std::int64_t enumerable_discriminant(FieldPoint const & field, EnumerationOptions const & options);

/// Memoised in cache, keyed by the field discriminant.
std::uint64_t class_number(FieldPoint const & field, ClassNumberCache & cache,
                           EnumerationOptions const & options = {});
std::uint64_t class_number(FamilyPoint & point, ClassNumberCache & cache,
                           EnumerationOptions const & options = {});

struct OrderPClass
{
    QuadForm unreduced; // first coefficient is the ideal norm 2m
    QuadForm form;      // reduced representative
    std::uint64_t order = 0;
    unsigned orientation = 0; // bit i set: conjugate prime form over the i-th prime of m
};

/*
 * The class of P * prod Q_i^{r_i}, where P lies over 2 and Q_i over the
 * i-th prime of m = prod p_i^{r_i}. Every choice of conjugate Q_i is tried;
 * the first J with J^p principal is returned once J is shown non-principal
 * with order exactly p. nullopt means no orientation worked, which is a
 * counterexample. Throws DomainError unless t is an odd prime and the
 * scaled element is not a p-th power.
 */
std::optional<OrderPClass> construct_order_p_class(FamilyPoint const & point);

struct IizukaPair
{
    BigInt U;          // 2 m^t - 1
    FieldPoint first;  // radicand d = 4 (1 - 2 m^t)^t
    FieldPoint second; // radicand d + 1 = 1 - 4 U^t
};

/// m odd >= 3, t odd square-free >= 3.
IizukaPair iizuka_pair(std::int64_t m, std::int64_t t);

/// Q(sqrt(1 - 4 U^k)), U >= 2, k odd >= 3.
FieldPoint louboutin_point(BigInt const & U, std::int64_t k);

/// t | h when t is square-free, otherwise every prime divisor of t divides h.
bool divisibility_holds(std::int64_t t, std::uint64_t h);

bool divisibility_check(FamilyPoint & point, ClassNumberCache & cache,
                        EnumerationOptions const & options = {});

/// Distinct square-free parts among Q(sqrt(1 - 2 m^t)), t in exponents.
std::size_t distinct_fields_count(std::int64_t m, std::span<std::int64_t const> exponents);

} // namespace quadclass
